"""Positional constraint puzzles (Einstein/Zebra style).

A puzzle has N ordered positions and M categories of N values each; every
category is a permutation over positions. Clues compile to CNF for the
DPLL solver; an independent permutation backtracker serves as oracle; a
deliberately human-scale propagation engine produces step-by-step
candidate-elimination traces.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from .errors import ContradictionDetected, InvalidSpec
from .sat import CnfFormula, Literal, dpll

EINSTEIN_FIXTURE = "data/einstein.json"


# --- clues ------------------------------------------------------------------

@dataclass(frozen=True)
class Same:
    a: Tuple[str, str]  # (category, value)
    b: Tuple[str, str]


@dataclass(frozen=True)
class PositionIs:
    a: Tuple[str, str]
    index: int


@dataclass(frozen=True)
class ImmediatelyLeftOf:
    a: Tuple[str, str]
    b: Tuple[str, str]


@dataclass(frozen=True)
class NextTo:
    a: Tuple[str, str]
    b: Tuple[str, str]


@dataclass(frozen=True)
class LeftOf:
    a: Tuple[str, str]
    b: Tuple[str, str]


Clue = Union[Same, PositionIs, ImmediatelyLeftOf, NextTo, LeftOf]

_CLUE_KINDS = {
    "Same": Same,
    "PositionIs": PositionIs,
    "ImmediatelyLeftOf": ImmediatelyLeftOf,
    "NextTo": NextTo,
    "LeftOf": LeftOf,
}


def clue_to_json(clue: Clue) -> dict:
    kind = type(clue).__name__
    out = {"kind": kind, "a": list(clue.a)}
    if isinstance(clue, PositionIs):
        out["index"] = clue.index
    else:
        out["b"] = list(clue.b)
    return out


@dataclass(frozen=True)
class PuzzleSpec:
    positions: int
    categories: Tuple[Tuple[str, Tuple[str, ...]], ...]  # (name, values)
    clues: Tuple[Clue, ...]

    def category_names(self) -> List[str]:
        return [name for name, _ in self.categories]

    def values(self, category: str) -> Tuple[str, ...]:
        for name, vals in self.categories:
            if name == category:
                return vals
        raise InvalidSpec(f"unknown category {category!r}")

    def to_json(self) -> dict:
        return {
            "positions": self.positions,
            "categories": [
                {"name": name, "values": list(vals)} for name, vals in self.categories
            ],
            "clues": [clue_to_json(c) for c in self.clues],
        }


def load_spec(data: dict) -> PuzzleSpec:
    """Build and validate a PuzzleSpec from its JSON form."""
    try:
        n = data["positions"]
        raw_categories = data["categories"]
        raw_clues = data.get("clues", [])
    except (KeyError, TypeError) as exc:
        raise InvalidSpec(f"missing puzzle field: {exc}") from None
    if not isinstance(n, int) or n < 1:
        raise InvalidSpec("positions must be a positive integer")
    categories = []
    for cat in raw_categories:
        name, values = cat["name"], tuple(cat["values"])
        if len(values) != n:
            raise InvalidSpec(
                f"category {name!r} has {len(values)} values, expected {n}"
            )
        if len(set(values)) != n:
            raise InvalidSpec(f"category {name!r} has duplicate values")
        categories.append((name, values))
    names = [name for name, _ in categories]
    if len(set(names)) != len(names):
        raise InvalidSpec("duplicate category names")
    spec = PuzzleSpec(n, tuple(categories), ())
    clues = []
    for raw in raw_clues:
        kind = raw.get("kind")
        cls = _CLUE_KINDS.get(kind)
        if cls is None:
            raise InvalidSpec(f"unknown clue kind {kind!r}")
        a = tuple(raw["a"])
        _check_ref(spec, a)
        if cls is PositionIs:
            index = raw["index"]
            if not isinstance(index, int) or not (0 <= index < n):
                raise InvalidSpec(f"clue index {index!r} out of range")
            clues.append(PositionIs(a, index))
        else:
            b = tuple(raw["b"])
            _check_ref(spec, b)
            clues.append(cls(a, b))
    return PuzzleSpec(n, tuple(categories), tuple(clues))


def _check_ref(spec: PuzzleSpec, ref: Tuple[str, str]):
    if len(ref) != 2:
        raise InvalidSpec(f"clue reference {ref!r} must be [category, value]")
    cat, val = ref
    if val not in spec.values(cat):
        raise InvalidSpec(f"value {val!r} not in category {cat!r}")


def load_spec_file(path) -> PuzzleSpec:
    with open(path, encoding="utf-8") as fh:
        return load_spec(json.load(fh))


def einstein_spec() -> PuzzleSpec:
    """The canonical 15-clue Einstein riddle fixture shipped with the
    package (canonical formulation, not transcribed from any figure)."""
    text = resources.files("logiclab").joinpath(EINSTEIN_FIXTURE).read_text()
    return load_spec(json.loads(text))


# --- solutions --------------------------------------------------------------

@dataclass(frozen=True)
class Solution:
    # assignment[category][position] = value
    assignment: Tuple[Tuple[str, Tuple[str, ...]], ...]

    def value_at(self, position: int, category: str) -> str:
        for name, vals in self.assignment:
            if name == category:
                return vals[position]
        raise KeyError(category)

    def position_of(self, category: str, value: str) -> int:
        for name, vals in self.assignment:
            if name == category:
                return vals.index(value)
        raise KeyError(category)

    def to_json(self) -> dict:
        return {name: list(vals) for name, vals in self.assignment}


def _clue_holds(clue: Clue, positions: Dict[Tuple[str, str], int]) -> bool:
    if isinstance(clue, PositionIs):
        return positions[clue.a] == clue.index
    pa, pb = positions[clue.a], positions[clue.b]
    if isinstance(clue, Same):
        return pa == pb
    if isinstance(clue, ImmediatelyLeftOf):
        return pa + 1 == pb
    if isinstance(clue, NextTo):
        return abs(pa - pb) == 1
    return pa < pb  # LeftOf


def solution_satisfies(spec: PuzzleSpec, sol: Solution) -> bool:
    positions = {
        (name, val): vals.index(val)
        for name, vals in sol.assignment
        for val in vals
    }
    return all(_clue_holds(c, positions) for c in spec.clues)


# --- CNF encoding -----------------------------------------------------------

def _var_id(spec: PuzzleSpec, pos: int, cat: int, val: int) -> int:
    # Position-major numbering: ids 1..N*M*N.
    n, m = spec.positions, len(spec.categories)
    return pos * (m * n) + cat * n + val + 1


def encode_puzzle(spec: PuzzleSpec) -> CnfFormula:
    """Cell variables x(pos,cat,val), exactly-one per (pos,cat) and per
    (cat,val), plus one clause group per clue."""
    n = spec.positions
    cats = spec.categories
    clauses: List[Tuple[Literal, ...]] = []
    var_map: Dict[int, str] = {}

    def x(pos: int, cat: int, val: int, neg: bool = False) -> Literal:
        return Literal(_var_id(spec, pos, cat, val), neg)

    index = {
        (name, val): (ci, vi)
        for ci, (name, vals) in enumerate(cats)
        for vi, val in enumerate(vals)
    }
    for pos in range(n):
        for ci, (name, vals) in enumerate(cats):
            for vi, val in enumerate(vals):
                var_map[_var_id(spec, pos, ci, vi)] = f"{pos}:{name}={val}"

    # Exactly-one value per cell, and exactly-one position per value.
    for pos in range(n):
        for ci in range(len(cats)):
            clauses.append(tuple(x(pos, ci, vi) for vi in range(n)))
            for v1 in range(n):
                for v2 in range(v1 + 1, n):
                    clauses.append((x(pos, ci, v1, True), x(pos, ci, v2, True)))
    for ci in range(len(cats)):
        for vi in range(n):
            clauses.append(tuple(x(pos, ci, vi) for pos in range(n)))
            for p1 in range(n):
                for p2 in range(p1 + 1, n):
                    clauses.append((x(p1, ci, vi, True), x(p2, ci, vi, True)))

    for clue in spec.clues:
        ca, va = index[clue.a]
        if isinstance(clue, PositionIs):
            clauses.append((x(clue.index, ca, va),))
            continue
        cb, vb = index[clue.b]
        if isinstance(clue, Same):
            for pos in range(n):
                clauses.append((x(pos, ca, va, True), x(pos, cb, vb)))
                clauses.append((x(pos, ca, va), x(pos, cb, vb, True)))
        elif isinstance(clue, ImmediatelyLeftOf):
            for pos in range(n - 1):
                clauses.append((x(pos, ca, va, True), x(pos + 1, cb, vb)))
            clauses.append((x(n - 1, ca, va, True),))
        elif isinstance(clue, NextTo):
            for pos in range(n):
                neighbours = [
                    x(q, cb, vb) for q in (pos - 1, pos + 1) if 0 <= q < n
                ]
                clauses.append(tuple([x(pos, ca, va, True)] + neighbours))
        elif isinstance(clue, LeftOf):
            for pos in range(n):
                rights = [x(q, cb, vb) for q in range(pos + 1, n)]
                clauses.append(tuple([x(pos, ca, va, True)] + rights))
    num_vars = n * len(cats) * n
    return CnfFormula(num_vars, clauses, var_map)


def solve_puzzle(spec: PuzzleSpec) -> Optional[Solution]:
    """SAT route; returns None when unsatisfiable."""
    cnf = encode_puzzle(spec)
    result = dpll(cnf)
    if result.status == "UNSAT":
        return None
    n = spec.positions
    assignment = []
    for ci, (name, vals) in enumerate(spec.categories):
        row = []
        for pos in range(n):
            chosen = [
                vals[vi]
                for vi in range(n)
                if result.model[_var_id(spec, pos, ci, vi)]
            ]
            if len(chosen) != 1:
                raise InvalidSpec(
                    f"encoding bug: cell {pos}/{name} decoded to {chosen}"
                )
            row.append(chosen[0])
        assignment.append((name, tuple(row)))
    return Solution(tuple(assignment))


@dataclass
class UniquenessVerdict:
    status: str  # "unique" | "multiple" | "unsat"
    solution: Optional[Solution] = None
    second: Optional[Solution] = None


def check_uniqueness(spec: PuzzleSpec) -> UniquenessVerdict:
    first = solve_puzzle(spec)
    if first is None:
        return UniquenessVerdict("unsat")
    cnf = encode_puzzle(spec)
    blocking = []
    for ci, (name, vals) in enumerate(spec.categories):
        for pos in range(spec.positions):
            vi = vals.index(first.value_at(pos, name))
            blocking.append(Literal(_var_id(spec, pos, ci, vi), True))
    cnf.clauses.append(tuple(blocking))
    result = dpll(cnf)
    if result.status == "UNSAT":
        return UniquenessVerdict("unique", solution=first)
    assignment = []
    for ci, (name, vals) in enumerate(spec.categories):
        row = [
            vals[
                next(
                    vi
                    for vi in range(spec.positions)
                    if result.model[_var_id(spec, pos, ci, vi)]
                )
            ]
            for pos in range(spec.positions)
        ]
        assignment.append((name, tuple(row)))
    return UniquenessVerdict(
        "multiple", solution=first, second=Solution(tuple(assignment))
    )


# --- independent oracle -----------------------------------------------------

def oracle_backtrack(spec: PuzzleSpec, cap: int = 2) -> List[Solution]:
    """Permutation backtracker sharing no code with the CNF route.

    Assigns categories in spec order, each as a permutation of its values
    over positions (permutations tried in lexicographic index order), and
    checks every clue whose categories are fully assigned.
    """
    n = spec.positions
    cats = spec.categories
    solutions: List[Solution] = []
    chosen: List[Tuple[str, Tuple[str, ...]]] = []

    def clues_checkable(assigned: set) -> List[Clue]:
        out = []
        for clue in spec.clues:
            needed = {clue.a[0]}
            if not isinstance(clue, PositionIs):
                needed.add(clue.b[0])
            if needed <= assigned:
                out.append(clue)
        return out

    def positions_map() -> Dict[Tuple[str, str], int]:
        return {
            (name, val): pos
            for name, vals in chosen
            for pos, val in enumerate(vals)
        }

    def extend(ci: int) -> bool:
        if len(solutions) >= cap:
            return True
        if ci == len(cats):
            solutions.append(Solution(tuple(chosen)))
            return len(solutions) >= cap
        name, vals = cats[ci]
        assigned = {c for c, _ in chosen} | {name}
        relevant = clues_checkable(assigned)
        previously = clues_checkable({c for c, _ in chosen})
        fresh = [c for c in relevant if c not in previously]
        for perm in itertools.permutations(range(n)):
            arrangement = tuple(vals[perm[pos]] for pos in range(n))
            chosen.append((name, arrangement))
            pos_map = positions_map()
            if all(_clue_holds(c, pos_map) for c in fresh):
                if extend(ci + 1):
                    chosen.pop()
                    return True
            chosen.pop()
        return False

    extend(0)
    return solutions


# --- candidate grids and propagation ---------------------------------------

@dataclass(frozen=True)
class PuzzleGrid:
    # candidates[pos][cat_index] = frozenset of still-possible values
    candidates: Tuple[Tuple[FrozenSet[str], ...], ...]

    def cell(self, pos: int, cat: int) -> FrozenSet[str]:
        return self.candidates[pos][cat]

    def eliminate(self, pos: int, cat: int, values) -> "PuzzleGrid":
        rows = [list(row) for row in self.candidates]
        rows[pos][cat] = rows[pos][cat] - frozenset(values)
        return PuzzleGrid(tuple(tuple(row) for row in rows))

    def to_json(self, spec: PuzzleSpec) -> dict:
        return {
            "candidates": [
                [
                    [v for v in spec.categories[ci][1] if v in cell]
                    for ci, cell in enumerate(row)
                ]
                for row in self.candidates
            ]
        }


def initial_grid(spec: PuzzleSpec) -> PuzzleGrid:
    return PuzzleGrid(
        tuple(
            tuple(frozenset(vals) for _, vals in spec.categories)
            for _ in range(spec.positions)
        )
    )


def grid_from_json(spec: PuzzleSpec, data: dict) -> PuzzleGrid:
    rows = data.get("candidates")
    if (
        not isinstance(rows, list)
        or len(rows) != spec.positions
        or any(len(row) != len(spec.categories) for row in rows)
    ):
        raise InvalidSpec("grid shape does not match the puzzle spec")
    out = []
    for pos, row in enumerate(rows):
        cells = []
        for ci, cell in enumerate(row):
            allowed = set(spec.categories[ci][1])
            values = frozenset(cell)
            if not values <= allowed:
                raise InvalidSpec(
                    f"grid cell {pos}/{spec.categories[ci][0]} has unknown values"
                )
            cells.append(values)
        out.append(tuple(cells))
    return PuzzleGrid(tuple(out))


@dataclass(frozen=True)
class TraceEntry:
    rule: str  # "direct" | "exclude" | "place"
    clue: Optional[Clue]
    position: int
    category: str
    eliminated: Tuple[str, ...]
    reason: str

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "clue": clue_to_json(self.clue) if self.clue else None,
            "cell": [self.position, self.category],
            "eliminated": list(self.eliminated),
            "reason": self.reason,
        }


PropagationTrace = List[TraceEntry]


class _Propagator:
    def __init__(self, spec: PuzzleSpec, grid: PuzzleGrid):
        self.spec = spec
        self.grid = grid
        self.trace: PropagationTrace = []
        self.cat_index = {name: ci for ci, (name, _) in enumerate(spec.categories)}

    def eliminate(self, pos, cat_name, values, rule, clue, reason):
        ci = self.cat_index[cat_name]
        cell = self.grid.cell(pos, ci)
        removed = tuple(v for v in self.spec.categories[ci][1] if v in cell and v in values)
        if not removed:
            return
        self.grid = self.grid.eliminate(pos, ci, removed)
        self.trace.append(
            TraceEntry(rule, clue, pos, cat_name, removed, reason)
        )
        if not self.grid.cell(pos, ci):
            raise ContradictionDetected(pos, cat_name)

    def singleton(self, pos, cat_name) -> Optional[str]:
        cell = self.grid.cell(pos, self.cat_index[cat_name])
        if len(cell) == 1:
            return next(iter(cell))
        return None

    def restrict(self, pos, cat_name, keep, rule, clue, reason):
        ci = self.cat_index[cat_name]
        drop = self.grid.cell(pos, ci) - frozenset(keep)
        self.eliminate(pos, cat_name, drop, rule, clue, reason)

    # Rule (i): direct clue filtering against placed (singleton) cells,
    # plus each clue's unconditional edge eliminations.
    def direct_clues(self):
        n = self.spec.positions
        for clue in self.spec.clues:
            cat_a, val_a = clue.a
            if isinstance(clue, PositionIs):
                self.restrict(
                    clue.index, cat_a, {val_a}, "direct", clue,
                    f"{val_a} is fixed at house {clue.index}",
                )
                for pos in range(n):
                    if pos != clue.index:
                        self.eliminate(
                            pos, cat_a, {val_a}, "direct", clue,
                            f"{val_a} is fixed at house {clue.index}",
                        )
                continue
            cat_b, val_b = clue.b
            if isinstance(clue, Same):
                for pos in range(n):
                    if self.singleton(pos, cat_a) == val_a:
                        self.restrict(
                            pos, cat_b, {val_b}, "direct", clue,
                            f"{val_a} lives at house {pos}",
                        )
                    if self.singleton(pos, cat_b) == val_b:
                        self.restrict(
                            pos, cat_a, {val_a}, "direct", clue,
                            f"{val_b} lives at house {pos}",
                        )
                    placed_a = self.singleton(pos, cat_a)
                    if placed_a is not None and placed_a != val_a:
                        self.eliminate(
                            pos, cat_b, {val_b}, "direct", clue,
                            f"house {pos} holds {placed_a}, not {val_a}",
                        )
                    placed_b = self.singleton(pos, cat_b)
                    if placed_b is not None and placed_b != val_b:
                        self.eliminate(
                            pos, cat_a, {val_a}, "direct", clue,
                            f"house {pos} holds {placed_b}, not {val_b}",
                        )
            elif isinstance(clue, ImmediatelyLeftOf):
                self.eliminate(
                    n - 1, cat_a, {val_a}, "direct", clue,
                    f"{val_a} cannot be in the rightmost house",
                )
                self.eliminate(
                    0, cat_b, {val_b}, "direct", clue,
                    f"{val_b} cannot be in the leftmost house",
                )
                for pos in range(n):
                    if self.singleton(pos, cat_a) == val_a and pos + 1 < n:
                        self.restrict(
                            pos + 1, cat_b, {val_b}, "direct", clue,
                            f"{val_a} is at house {pos}",
                        )
                    if self.singleton(pos, cat_b) == val_b and pos - 1 >= 0:
                        self.restrict(
                            pos - 1, cat_a, {val_a}, "direct", clue,
                            f"{val_b} is at house {pos}",
                        )
            elif isinstance(clue, NextTo):
                for pos in range(n):
                    if self.singleton(pos, cat_a) == val_a:
                        allowed = {q for q in (pos - 1, pos + 1) if 0 <= q < n}
                        for q in range(n):
                            if q not in allowed:
                                self.eliminate(
                                    q, cat_b, {val_b}, "direct", clue,
                                    f"{val_b} must be next to {val_a} at house {pos}",
                                )
                    if self.singleton(pos, cat_b) == val_b:
                        allowed = {q for q in (pos - 1, pos + 1) if 0 <= q < n}
                        for q in range(n):
                            if q not in allowed:
                                self.eliminate(
                                    q, cat_a, {val_a}, "direct", clue,
                                    f"{val_a} must be next to {val_b} at house {pos}",
                                )
            elif isinstance(clue, LeftOf):
                self.eliminate(
                    n - 1, cat_a, {val_a}, "direct", clue,
                    f"{val_a} must be left of {val_b}",
                )
                self.eliminate(
                    0, cat_b, {val_b}, "direct", clue,
                    f"{val_b} must be right of {val_a}",
                )
                for pos in range(n):
                    if self.singleton(pos, cat_a) == val_a:
                        for q in range(0, pos + 1):
                            self.eliminate(
                                q, cat_b, {val_b}, "direct", clue,
                                f"{val_b} must be right of house {pos}",
                            )
                    if self.singleton(pos, cat_b) == val_b:
                        for q in range(pos, n):
                            self.eliminate(
                                q, cat_a, {val_a}, "direct", clue,
                                f"{val_a} must be left of house {pos}",
                            )

    # Rule (ii): a placed value is removed from every other position.
    def singleton_exclusion(self):
        n = self.spec.positions
        for pos in range(n):
            for name, _ in self.spec.categories:
                placed = self.singleton(pos, name)
                if placed is None:
                    continue
                for q in range(n):
                    if q != pos:
                        self.eliminate(
                            q, name, {placed}, "exclude", None,
                            f"{placed} is already placed at house {pos}",
                        )

    # Rule (iii): a value possible in only one position is placed there.
    def unique_position(self):
        n = self.spec.positions
        for ci, (name, vals) in enumerate(self.spec.categories):
            for val in vals:
                spots = [pos for pos in range(n) if val in self.grid.cell(pos, ci)]
                if len(spots) == 1 and self.singleton(spots[0], name) != val:
                    self.restrict(
                        spots[0], name, {val}, "place", None,
                        f"{val} fits only house {spots[0]}",
                    )


def propagate_step(
    grid: PuzzleGrid, spec: PuzzleSpec
) -> Tuple[PuzzleGrid, PropagationTrace]:
    """One round of the three deduction rules, in order. Repeated calls
    reach a fixpoint; at fixpoint the trace is empty."""
    prop = _Propagator(spec, grid)
    prop.direct_clues()
    prop.singleton_exclusion()
    prop.unique_position()
    return prop.grid, prop.trace


def propagate_fixpoint(
    grid: PuzzleGrid, spec: PuzzleSpec
) -> Tuple[PuzzleGrid, PropagationTrace]:
    trace: PropagationTrace = []
    while True:
        grid, round_trace = propagate_step(grid, spec)
        if not round_trace:
            return grid, trace
        trace.extend(round_trace)
