"""Ground-truth semantics: truth tables, finite-model enumeration and
categorical syllogisms.

Truth-table row order is canonical: atoms sorted lexicographically, row k
assigns atom i the bit of k at position (n-1-i), so the first atom is the
most significant bit and row 0 is all-false.

Finite-model enumeration order is canonical too: sort sizes ascend in
lexicographic order over sorted sort names; for a fixed size combination
the ground atoms (predicates sorted by name, argument tuples in
lexicographic order) form one binary counter, the first ground atom being
the least significant bit. The first counter-model in this order is the
reported witness, which makes witnesses reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    InvalidSpec,
    LogicError,
    MissingAtom,
    NotASentence,
    SortSizeZero,
    TooManyAtoms,
    UnboundVariable,
    UnknownMood,
    UnknownPredicate,
)
from .formulas import (
    DEFAULT_SORT,
    And,
    Atom,
    Const,
    Exists,
    FalseConst,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Pred,
    TrueConst,
    Var,
    atoms,
    children,
    free_variables,
)

Assignment = Dict[str, bool]

MAX_TABLE_ATOMS = 20
DEFAULT_MAX_SORT_SIZE = 4
DEFAULT_BUDGET = 1 << 24


# --- propositional ---------------------------------------------------------

def eval_prop(f: Formula, a: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        try:
            return a[f.name]
        except KeyError:
            raise MissingAtom(f.name) from None
    if isinstance(f, TrueConst):
        return True
    if isinstance(f, FalseConst):
        return False
    if isinstance(f, Not):
        return not eval_prop(f.child, a)
    if isinstance(f, And):
        return eval_prop(f.left, a) and eval_prop(f.right, a)
    if isinstance(f, Or):
        return eval_prop(f.left, a) or eval_prop(f.right, a)
    if isinstance(f, Implies):
        return (not eval_prop(f.left, a)) or eval_prop(f.right, a)
    if isinstance(f, Iff):
        return eval_prop(f.left, a) == eval_prop(f.right, a)
    raise LogicError(f"not a propositional formula: {type(f).__name__}")


def canonical_rows(names: List[str]):
    """Yield assignments in canonical row order for the given sorted atoms."""
    n = len(names)
    for k in range(1 << n):
        yield {name: bool((k >> (n - 1 - i)) & 1) for i, name in enumerate(names)}


@dataclass(frozen=True)
class TruthTable:
    atoms: Tuple[str, ...]
    rows: Tuple[bool, ...]

    def to_json(self) -> dict:
        return {"atoms": list(self.atoms), "rows": list(self.rows)}

    def to_text(self) -> str:
        """Aligned plain-text table for the CLI."""
        headers = list(self.atoms) + ["*"]
        widths = [max(len(h), 1) for h in headers]
        lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
        n = len(self.atoms)
        for k, value in enumerate(self.rows):
            bits = [bool((k >> (n - 1 - i)) & 1) for i in range(n)] + [value]
            cells = ["T" if b else "F" for b in bits]
            lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)))
        return "\n".join(lines)


def truth_table(f: Formula) -> TruthTable:
    names = atoms(f)
    if len(names) > MAX_TABLE_ATOMS:
        raise TooManyAtoms(f"{len(names)} atoms exceed the {MAX_TABLE_ATOMS} limit")
    rows = tuple(eval_prop(f, a) for a in canonical_rows(names))
    return TruthTable(tuple(names), rows)


# --- verdicts --------------------------------------------------------------

@dataclass
class FiniteModel:
    sizes: Dict[str, int]
    tables: Dict[str, FrozenSet[Tuple[int, ...]]]

    def to_json(self) -> dict:
        return {
            "sizes": dict(self.sizes),
            "tables": {
                name: sorted(list(t) for t in tuples)
                for name, tuples in sorted(self.tables.items())
            },
        }


@dataclass
class EquivVerdict:
    equivalent: bool
    witness: Optional[Union[Assignment, FiniteModel]] = None
    bounded: bool = False


def equiv_tt(f1: Formula, f2: Formula) -> EquivVerdict:
    """Truth-table equivalence; witness is the first disagreeing row."""
    names = sorted(set(atoms(f1)) | set(atoms(f2)))
    if len(names) > MAX_TABLE_ATOMS:
        raise TooManyAtoms(
            f"{len(names)} combined atoms exceed the {MAX_TABLE_ATOMS} limit"
        )
    for a in canonical_rows(names):
        if eval_prop(f1, a) != eval_prop(f2, a):
            return EquivVerdict(False, witness=a)
    return EquivVerdict(True)


# --- first-order: evaluation ------------------------------------------------

def eval_fol(f: Formula, m: FiniteModel, env: Optional[Mapping[str, int]] = None) -> bool:
    env = dict(env or {})
    return _eval_fol(f, m, env)


def _eval_fol(f: Formula, m: FiniteModel, env: Dict[str, int]) -> bool:
    if isinstance(f, Pred):
        if f.name not in m.tables:
            raise UnknownPredicate(f.name)
        args = []
        for arg in f.args:
            if isinstance(arg, Const):
                raise UnboundVariable(arg.name)
            if arg.name not in env:
                raise UnboundVariable(arg.name)
            args.append(env[arg.name])
        return tuple(args) in m.tables[f.name]
    if isinstance(f, TrueConst):
        return True
    if isinstance(f, FalseConst):
        return False
    if isinstance(f, Not):
        return not _eval_fol(f.child, m, env)
    if isinstance(f, And):
        return _eval_fol(f.left, m, env) and _eval_fol(f.right, m, env)
    if isinstance(f, Or):
        return _eval_fol(f.left, m, env) or _eval_fol(f.right, m, env)
    if isinstance(f, Implies):
        return (not _eval_fol(f.left, m, env)) or _eval_fol(f.right, m, env)
    if isinstance(f, Iff):
        return _eval_fol(f.left, m, env) == _eval_fol(f.right, m, env)
    if isinstance(f, (Forall, Exists)):
        size = m.sizes.get(f.sort, 0)
        if size < 1:
            raise SortSizeZero(f.sort)
        saved = env.get(f.var)
        try:
            results = []
            for d in range(size):
                env[f.var] = d
                results.append(_eval_fol(f.body, m, env))
        finally:
            if saved is None:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
        return all(results) if isinstance(f, Forall) else any(results)
    raise LogicError(f"cannot evaluate node {type(f).__name__} in a model")


# --- first-order: signatures and enumeration --------------------------------

def signatures(*formulas: Formula) -> Dict[str, Tuple[str, ...]]:
    """Map predicate name -> argument sort tuple, inferred from binders.

    Raises ArityMismatch when a predicate is used with inconsistent arity,
    and LogicError when argument sorts disagree between occurrences.
    """
    sigs: Dict[str, Tuple[str, ...]] = {}

    def walk(node: Formula, env: Dict[str, str]):
        if isinstance(node, Pred):
            sorts = []
            for arg in node.args:
                if isinstance(arg, Var):
                    sorts.append(env.get(arg.name, DEFAULT_SORT))
                else:
                    sorts.append(DEFAULT_SORT)
            sig = tuple(sorts)
            seen = sigs.get(node.name)
            if seen is None:
                sigs[node.name] = sig
            elif len(seen) != len(sig):
                raise ArityMismatch(node.name, len(seen), len(sig))
            elif seen != sig:
                raise LogicError(
                    f"predicate {node.name!r} used with sorts {seen} and {sig}"
                )
        elif isinstance(node, (Forall, Exists)):
            walk(node.body, {**env, node.var: node.sort})
        else:
            for k in children(node):
                walk(k, env)

    for f in formulas:
        walk(f, {})
    return sigs


def quantified_sorts(f: Formula) -> set:
    out = set()

    def walk(node):
        if isinstance(node, (Forall, Exists)):
            out.add(node.sort)
        for k in children(node):
            walk(k)

    walk(f)
    return out


def _ground_atoms(sizes: Dict[str, int], sigs: Dict[str, Tuple[str, ...]]):
    """Ground atoms in canonical order: predicates by name, tuples lex."""
    out = []
    for name in sorted(sigs):
        for tup in itertools.product(*(range(sizes[s]) for s in sigs[name])):
            out.append((name, tup))
    return out

def iter_models(sizes: Dict[str, int], sigs: Dict[str, Tuple[str, ...]]):
    """All models for fixed sort sizes, in binary-counter order (the first
    ground atom is the least significant bit)."""
    ground = _ground_atoms(sizes, sigs)
    for counter in range(1 << len(ground)):
        tables: Dict[str, set] = {name: set() for name in sigs}
        for j, (name, tup) in enumerate(ground):
            if (counter >> j) & 1:
                tables[name].add(tup)
        yield FiniteModel(dict(sizes), {n: frozenset(t) for n, t in tables.items()})


def _bit_masks(num_atoms: int):
    """Per-atom truth masks over all 2^num_atoms assignments, assignment m
    at bit m, atom j true in m iff (m >> j) & 1."""
    size = 1 << num_atoms
    full = (1 << size) - 1
    masks = []
    for j in range(num_atoms):
        p = ((1 << (1 << j)) - 1) << (1 << j)  # width 2^(j+1) pattern
        width = 1 << (j + 1)
        while width < size:
            p |= p << width
            width <<= 1
        masks.append(p)
    return masks, full


def _compile_bits(f: Formula, sizes, atom_index, masks, full, env) -> int:
    """Evaluate f over every model at once as a bit-parallel vector."""
    if isinstance(f, (Pred, Atom)):
        if isinstance(f, Atom):
            name, args = f.name, ()
        else:
            name = f.name
            vals = []
            for arg in f.args:
                if isinstance(arg, Const) or arg.name not in env:
                    raise UnboundVariable(arg.name)
                vals.append(env[arg.name])
            args = tuple(vals)
        return masks[atom_index[(name, args)]]
    if isinstance(f, TrueConst):
        return full
    if isinstance(f, FalseConst):
        return 0
    if isinstance(f, Not):
        return full ^ _compile_bits(f.child, sizes, atom_index, masks, full, env)
    if isinstance(f, (And, Or, Implies, Iff)):
        a = _compile_bits(f.left, sizes, atom_index, masks, full, env)
        b = _compile_bits(f.right, sizes, atom_index, masks, full, env)
        if isinstance(f, And):
            return a & b
        if isinstance(f, Or):
            return a | b
        if isinstance(f, Implies):
            return (full ^ a) | b
        return full ^ (a ^ b)
    if isinstance(f, (Forall, Exists)):
        size = sizes.get(f.sort, 0)
        if size < 1:
            raise SortSizeZero(f.sort)
        acc = full if isinstance(f, Forall) else 0
        for d in range(size):
            v = _compile_bits(f.body, sizes, atom_index, masks, full, {**env, f.var: d})
            acc = acc & v if isinstance(f, Forall) else acc | v
        return acc
    raise LogicError(f"cannot evaluate node {type(f).__name__} in a model")


def equiv_finite(
    f1: Formula,
    f2: Formula,
    max_sizes: Optional[Mapping[str, int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> EquivVerdict:
    """Bounded equivalence over every interpretation up to the size caps.

    The verdict is bounded: equivalent=True only means no counter-model was
    found within the caps and budget. The witness, when present, is the
    first counter-model in the canonical enumeration order.
    """
    for f in (f1, f2):
        fv = free_variables(f)
        if fv:
            raise NotASentence(fv)
    sigs = signatures(f1, f2)
    sorts = sorted(
        set().union(*sigs.values(), quantified_sorts(f1), quantified_sorts(f2))
        or {DEFAULT_SORT}
    )
    caps = {s: (max_sizes or {}).get(s, DEFAULT_MAX_SORT_SIZE) for s in sorts}
    enumerated = 0
    for combo in itertools.product(*(range(1, caps[s] + 1) for s in sorts)):
        sizes = dict(zip(sorts, combo))
        ground = _ground_atoms(sizes, sigs)
        count = 1 << len(ground)
        if enumerated + count > budget:
            raise BudgetExceeded(enumerated, sizes)
        atom_index = {ga: j for j, ga in enumerate(ground)}
        masks, full = _bit_masks(len(ground))
        v1 = _compile_bits(f1, sizes, atom_index, masks, full, {})
        v2 = _compile_bits(f2, sizes, atom_index, masks, full, {})
        diff = v1 ^ v2
        if diff:
            counter = (diff & -diff).bit_length() - 1
            tables: Dict[str, set] = {name: set() for name in sigs}
            for j, (name, tup) in enumerate(ground):
                if (counter >> j) & 1:
                    tables[name].add(tup)
            witness = FiniteModel(sizes, {n: frozenset(t) for n, t in tables.items()})
            return EquivVerdict(False, witness=witness, bounded=True)
        enumerated += count
    return EquivVerdict(True, bounded=True)


# --- syllogisms ------------------------------------------------------------

MOODS = ("A", "E", "I", "O")


@dataclass(frozen=True)
class Categorical:
    mood: str  # A: all, E: no, I: some, O: some-not
    subject: str
    predicate: str


@dataclass
class SyllogismVerdict:
    valid: bool
    counter_model: Optional[FiniteModel] = None


def encode_syllogism(form: Categorical) -> Formula:
    x = Var("x")
    sub = Pred(form.subject, (x,))
    pred = Pred(form.predicate, (x,))
    if form.mood == "A":
        return Forall("x", DEFAULT_SORT, Implies(sub, pred))
    if form.mood == "E":
        return Forall("x", DEFAULT_SORT, Implies(sub, Not(pred)))
    if form.mood == "I":
        return Exists("x", DEFAULT_SORT, And(sub, pred))
    if form.mood == "O":
        return Exists("x", DEFAULT_SORT, And(sub, Not(pred)))
    raise UnknownMood(form.mood)


# Domain size 3 suffices for three monadic predicates restricted to the
# syllogistic forms; test_semantics checks this against sizes 1..4.
SYLLOGISM_MAX_SIZE = 3


def check_syllogism(
    major: Categorical,
    minor: Categorical,
    conclusion: Categorical,
    existential_import: bool = False,
) -> SyllogismVerdict:
    terms = {
        major.subject, major.predicate,
        minor.subject, minor.predicate,
        conclusion.subject, conclusion.predicate,
    }
    if len(terms) != 3:
        raise InvalidSpec(
            f"syllogism must range over exactly three terms, got {sorted(terms)}"
        )
    prem1 = encode_syllogism(major)
    prem2 = encode_syllogism(minor)
    concl = encode_syllogism(conclusion)
    imports = [
        Exists("x", DEFAULT_SORT, Pred(name, (Var("x"),))) for name in sorted(terms)
    ]
    sigs = {name: (DEFAULT_SORT,) for name in terms}
    for n in range(1, SYLLOGISM_MAX_SIZE + 1):
        for model in iter_models({DEFAULT_SORT: n}, sigs):
            if not (eval_fol(prem1, model) and eval_fol(prem2, model)):
                continue
            if existential_import and not all(eval_fol(i, model) for i in imports):
                continue
            if not eval_fol(concl, model):
                return SyllogismVerdict(False, counter_model=model)
    return SyllogismVerdict(True)
