"""Command-line interface.

Exit codes: 0 on success (equivalent / valid / satisfiable / accepted),
1 on a negative verdict (not equivalent / invalid / unsat / rejected),
2 on usage or parse errors. `--json` switches output to the same JSON
the HTTP service returns in its `result` field.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ops
from .errors import LogicError, ParseError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logiclab",
        description="Propositional/first-order logic workbench",
    )
    parser.add_argument(
        "--json", action="store_true", help="emit machine-readable JSON"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a formula and print its canonical form")
    p.add_argument("formula")
    p.add_argument("--logic", choices=["prop", "fol"], default="prop")

    p = sub.add_parser("tt", help="print the truth table of a propositional formula")
    p.add_argument("formula")

    p = sub.add_parser("equiv", help="check semantic equivalence")
    p.add_argument("f1")
    p.add_argument("f2")
    p.add_argument("--method", choices=["tt", "sat", "finite"], default="tt")
    p.add_argument("--max-size", type=int, default=None, dest="max_size",
                   help="per-sort size cap for --method finite")

    p = sub.add_parser("nnf", help="negation normal form")
    p.add_argument("formula")

    p = sub.add_parser("cnf", help="conjunctive normal form")
    p.add_argument("formula")
    p.add_argument("--tseitin", action="store_true",
                   help="equisatisfiable Tseitin encoding instead of naive CNF")
    p.add_argument("--dimacs", action="store_true", help="print DIMACS only")

    p = sub.add_parser("derive", help="derive a step-by-step equivalence proof")
    p.add_argument("f1")
    p.add_argument("f2")

    p = sub.add_parser("step", help="validate a single rewrite step")
    p.add_argument("before")
    p.add_argument("after")
    p.add_argument("--rule", default=None)
    p.add_argument("--path", default=None,
                   help="comma-separated child indices, e.g. 0,1")
    p.add_argument("--dir", choices=["L->R", "R->L"], default=None)

    p = sub.add_parser("rules", help="print the rewrite rule catalog")

    p = sub.add_parser("syllogism", help="check a categorical syllogism")
    p.add_argument("major", help="e.g. A(M,P)")
    p.add_argument("minor")
    p.add_argument("conclusion")
    p.add_argument("--import", action="store_true", dest="existential_import",
                   help="assume every term is nonempty (existential import)")

    p = sub.add_parser("puzzle", help="positional constraint puzzles")
    action = p.add_subparsers(dest="action", required=True)
    for name, help_text in (
        ("solve", "solve via CNF + DPLL"),
        ("unique", "check solution uniqueness"),
        ("trace", "run one propagation round with a trace"),
    ):
        a = action.add_parser(name, help=help_text)
        a.add_argument("spec", help="path to a puzzle spec JSON file")

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--port", type=int, default=None,
                   help="port (default LOGICLAB_PORT or 8095)")
    p.add_argument("--host", default="127.0.0.1")
    return parser


def _load_spec_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit(args, result: dict, human: str) -> None:
    if args.json:
        print(ops.dumps(result))
    else:
        print(human)


def _witness_text(witness) -> str:
    if witness is None:
        return ""
    if witness.get("kind") == "assignment":
        pairs = ", ".join(
            f"{k}={'true' if v else 'false'}"
            for k, v in witness["values"].items()
        )
        return f" (witness: {pairs})"
    return f" (counter-model: {json.dumps(witness)})"


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    try:
        return _dispatch(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LogicError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    if args.command == "parse":
        result = ops.op_parse(args.logic, args.formula)
        _emit(args, result, result["text"])
        return EXIT_OK

    if args.command == "tt":
        result = ops.op_truth_table(args.formula)
        from .parser import parse_prop
        from .semantics import truth_table

        _emit(args, result, truth_table(parse_prop(args.formula)).to_text())
        return EXIT_OK

    if args.command == "equiv":
        result = ops.op_equiv(args.f1, args.f2, args.method, args.max_size)
        if result["equivalent"]:
            text = "equivalent"
            if result["bounded"]:
                text += " (bounded verdict)"
            _emit(args, result, text)
            return EXIT_OK
        _emit(args, result, "not equivalent" + _witness_text(result["witness"]))
        return EXIT_NEGATIVE

    if args.command == "nnf":
        result = ops.op_nnf(args.formula)
        _emit(args, result, result["text"])
        return EXIT_OK

    if args.command == "cnf":
        result = ops.op_cnf(args.formula, args.tseitin)
        if args.dimacs and not args.json:
            print(result["dimacs"], end="")
        else:
            _emit(args, result, result["dimacs"].rstrip("\n"))
        return EXIT_OK

    if args.command == "derive":
        result = ops.op_derive(args.f1, args.f2)
        if not result["equivalent"]:
            _emit(args, result, "not equivalent" + _witness_text(result["witness"]))
            return EXIT_NEGATIVE
        lines = [result["start"]]
        for step in result["steps"]:
            note = f"{step['rule']} @ {step['path']} {step['dir']}"
            lines.append(f"  == {step['after']}    [{note}]")
        _emit(args, result, "\n".join(lines))
        return EXIT_OK

    if args.command == "step":
        path = None
        if args.path is not None:
            path = [int(x) for x in args.path.split(",") if x != ""]
        result = ops.op_validate_step(
            args.before, args.after, args.rule, path, getattr(args, "dir")
        )
        if result["accepted"]:
            tag = " (semantic, not a named rule)" if result["semantic"] else ""
            _emit(
                args, result,
                f"accepted: {result['rule']} @ {result['path']} {result['dir']}{tag}",
            )
            return EXIT_OK
        _emit(
            args, result,
            f"rejected: {result['reason']}" + _witness_text(result["witness"]),
        )
        return EXIT_NEGATIVE

    if args.command == "rules":
        result = ops.op_rules()
        lines = [
            f"{r['id']:24s} {r['lhs']}  ==  {r['rhs']}" for r in result["rules"]
        ]
        _emit(args, result, "\n".join(lines))
        return EXIT_OK

    if args.command == "syllogism":
        result = ops.op_syllogism(
            args.major, args.minor, args.conclusion, args.existential_import
        )
        if result["valid"]:
            _emit(args, result, "valid")
            return EXIT_OK
        _emit(
            args, result,
            "invalid (counter-model: "
            + json.dumps(result["counter_model"]) + ")",
        )
        return EXIT_NEGATIVE

    if args.command == "puzzle":
        spec_json = _load_spec_json(args.spec)
        if args.action == "solve":
            result = ops.op_puzzle_solve(spec_json)
            if result["status"] == "unsat":
                _emit(args, result, "unsatisfiable")
                return EXIT_NEGATIVE
            _emit(args, result, _solution_text(result["solution"]))
            return EXIT_OK
        if args.action == "unique":
            result = ops.op_puzzle_unique(spec_json)
            _emit(args, result, result["status"])
            return EXIT_OK if result["status"] == "unique" else EXIT_NEGATIVE
        result = ops.op_puzzle_propagate(spec_json)
        lines = [
            f"house {e['cell'][0]} {e['cell'][1]}: -{','.join(e['eliminated'])}"
            f"  [{e['rule']}] {e['reason']}"
            for e in result["trace"]
        ]
        _emit(args, result, "\n".join(lines) if lines else "no deductions")
        return EXIT_OK

    if args.command == "serve":
        from .service import serve

        serve(port=args.port, host=args.host)
        return EXIT_OK

    raise AssertionError(f"unhandled command {args.command}")


def _solution_text(solution: dict) -> str:
    cats = sorted(solution)
    width = max(len(c) for c in cats)
    lines = []
    for cat in cats:
        row = "  ".join(f"{v:12s}" for v in solution[cat])
        lines.append(f"{cat.ljust(width)}  {row.rstrip()}")
    return "\n".join(lines)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
