"""Operation layer shared by the CLI and the HTTP service.

Every function takes plain JSON-compatible inputs and returns a plain
JSON-compatible dict, so `--json` CLI output and the HTTP `result` field
are the same object serialized the same way.
"""

from __future__ import annotations

import json
from typing import Optional

from . import puzzle as puzzle_mod
from . import rewrite, sat, semantics
from .errors import LogicError
from .formulas import free_variables, is_propositional, render, to_json
from .parser import parse, parse_fol, parse_prop
from .semantics import Categorical, FiniteModel

# One serializer for every surface; byte-identical CLI/HTTP output.
def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False, sort_keys=True)


def _witness_json(witness):
    if witness is None:
        return None
    if isinstance(witness, FiniteModel):
        return {"kind": "model", **witness.to_json()}
    return {"kind": "assignment", "values": dict(sorted(witness.items()))}


def _parse_pair(f1: str, f2: str):
    try:
        return parse_prop(f1), parse_prop(f2), "prop"
    except LogicError:
        return parse_fol(f1), parse_fol(f2), "fol"


def op_parse(logic: str, text: str) -> dict:
    f = parse(text, logic)
    out = {"logic": logic, "text": render(f), "ast": to_json(f)}
    if logic == "fol":
        out["free_variables"] = [
            {"name": n, "sort": s} for n, s in sorted(free_variables(f))
        ]
    return out


def op_truth_table(text: str) -> dict:
    return semantics.truth_table(parse_prop(text)).to_json()


def op_equiv(
    f1: str,
    f2: str,
    method: str = "tt",
    max_size: Optional[int] = None,
) -> dict:
    if method in ("tt", "sat"):
        a, b = parse_prop(f1), parse_prop(f2)
        verdict = (
            semantics.equiv_tt(a, b) if method == "tt" else sat.equiv_sat(a, b)
        )
    elif method == "finite":
        a, b = parse_fol(f1), parse_fol(f2)
        max_sizes = None
        if max_size is not None:
            sorts = set().union(
                semantics.quantified_sorts(a), semantics.quantified_sorts(b)
            ) or {"U"}
            max_sizes = {s: max_size for s in sorts}
        verdict = semantics.equiv_finite(a, b, max_sizes)
    else:
        raise LogicError(f"unknown method {method!r}; expected tt, sat or finite")
    return {
        "equivalent": verdict.equivalent,
        "method": method,
        "bounded": verdict.bounded,
        "witness": _witness_json(verdict.witness),
    }


def op_nnf(text: str) -> dict:
    try:
        f = parse_prop(text)
    except LogicError:
        f = parse_fol(text)
    return {"text": render(sat.to_nnf(f))}


def op_cnf(text: str, use_tseitin: bool = False) -> dict:
    f = parse_prop(text)
    cnf = sat.tseitin(f) if use_tseitin else sat.to_cnf_naive(f)
    return {
        "num_vars": cnf.num_vars,
        "clauses": [[l.to_int() for l in clause] for clause in cnf.clauses],
        "var_map": {str(i): label for i, label in sorted(cnf.var_map.items())},
        "dimacs": cnf.to_dimacs(),
    }


def op_derive(f1: str, f2: str) -> dict:
    a, b, _ = _parse_pair(f1, f2)
    result = rewrite.derive_equiv(a, b)
    if not result.equivalent:
        return {"equivalent": False, "witness": _witness_json(result.witness)}
    out = result.derivation.to_json()
    out["equivalent"] = True
    out["semantic_bridge"] = result.semantic_bridge
    return out


def op_validate_step(
    before: str,
    after: str,
    rule: Optional[str] = None,
    path: Optional[list] = None,
    direction: Optional[str] = None,
) -> dict:
    a, b, _ = _parse_pair(before, after)
    claimed = None
    if rule is not None:
        claimed = (rule, tuple(path or ()), direction or rewrite.L2R)
    verdict = rewrite.validate_step(a, b, claimed)
    if verdict.accepted:
        return {
            "accepted": True,
            "rule": verdict.rule,
            "path": list(verdict.path),
            "dir": verdict.direction,
            "semantic": verdict.semantic,
        }
    return {
        "accepted": False,
        "reason": verdict.reason,
        "witness": _witness_json(verdict.witness),
    }


def op_rules() -> dict:
    return {"rules": [r.describe() for r in rewrite.rule_catalog()]}


def op_syllogism(major: str, minor: str, conclusion: str, existential_import: bool) -> dict:
    verdict = semantics.check_syllogism(
        parse_categorical(major),
        parse_categorical(minor),
        parse_categorical(conclusion),
        existential_import,
    )
    out = {"valid": verdict.valid, "existential_import": existential_import}
    if verdict.counter_model is not None:
        out["counter_model"] = verdict.counter_model.to_json()
    return out


def parse_categorical(text: str) -> Categorical:
    """Parse "A(M,P)" style categorical statements."""
    text = text.strip()
    if (
        len(text) < 6
        or text[0] not in semantics.MOODS
        or text[1] != "("
        or not text.endswith(")")
    ):
        raise LogicError(
            f"cannot parse categorical statement {text!r}; expected e.g. A(M,P)"
        )
    inner = text[2:-1]
    parts = [p.strip() for p in inner.split(",")]
    if len(parts) != 2 or not all(parts):
        raise LogicError(f"expected two term names in {text!r}")
    return Categorical(text[0], parts[0], parts[1])


def op_puzzle_solve(spec_json: dict) -> dict:
    spec = puzzle_mod.load_spec(spec_json)
    solution = puzzle_mod.solve_puzzle(spec)
    if solution is None:
        return {"status": "unsat"}
    return {"status": "sat", "solution": solution.to_json()}


def op_puzzle_unique(spec_json: dict) -> dict:
    spec = puzzle_mod.load_spec(spec_json)
    verdict = puzzle_mod.check_uniqueness(spec)
    out = {"status": verdict.status}
    if verdict.solution is not None:
        out["solution"] = verdict.solution.to_json()
    if verdict.second is not None:
        out["second"] = verdict.second.to_json()
    return out


def op_puzzle_propagate(spec_json: dict, grid_json: Optional[dict] = None) -> dict:
    spec = puzzle_mod.load_spec(spec_json)
    if grid_json is None:
        grid = puzzle_mod.initial_grid(spec)
    else:
        grid = puzzle_mod.grid_from_json(spec, grid_json)
    new_grid, trace = puzzle_mod.propagate_step(grid, spec)
    return {
        "grid": new_grid.to_json(spec),
        "trace": [entry.to_json() for entry in trace],
    }
