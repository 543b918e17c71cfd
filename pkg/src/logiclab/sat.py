"""CNF conversion and a deterministic DPLL solver.

Naive CNF preserves equivalence over the original atoms (needed by the
rewrite canonicalizer); Tseitin only preserves satisfiability but never
blows up. The solver is deliberately simple: unit propagation to
fixpoint, pure-literal elimination at the root only, then branching on
the lowest unassigned variable id with false tried first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

from .errors import BlowupExceeded, LogicError, ParseError
from .formulas import (
    FALSE,
    TRUE,
    And,
    Atom,
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
    atoms,
    children,
    render,
)

NAIVE_CLAUSE_LIMIT = 512


class Literal(NamedTuple):
    var: int  # >= 1
    negated: bool

    def to_int(self) -> int:
        return -self.var if self.negated else self.var

    @classmethod
    def from_int(cls, n: int) -> "Literal":
        return cls(abs(n), n < 0)


@dataclass
class CnfFormula:
    num_vars: int
    clauses: List[Tuple[Literal, ...]]
    var_map: Dict[int, str] = field(default_factory=dict)

    def to_dimacs(self) -> str:
        lines = [f"c map {i} {label}" for i, label in sorted(self.var_map.items())]
        lines.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        for clause in self.clauses:
            lines.append(" ".join(str(lit.to_int()) for lit in clause) + " 0")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dimacs(cls, text: str) -> "CnfFormula":
        num_vars = 0
        clauses: List[Tuple[Literal, ...]] = []
        var_map: Dict[int, str] = {}
        current: List[Literal] = []
        saw_header = False
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("c"):
                parts = line.split(maxsplit=3)
                if len(parts) == 4 and parts[1] == "map" and parts[2].isdigit():
                    var_map[int(parts[2])] = parts[3]
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) != 4 or parts[1] != "cnf":
                    raise LogicError(f"bad DIMACS header: {line!r}")
                num_vars = int(parts[2])
                saw_header = True
                continue
            for tok in line.split():
                n = int(tok)
                if n == 0:
                    clauses.append(tuple(current))
                    current = []
                else:
                    current.append(Literal.from_int(n))
        if not saw_header:
            raise LogicError("DIMACS input has no 'p cnf' header")
        if current:
            clauses.append(tuple(current))
        return cls(num_vars, clauses, var_map)


@dataclass
class SatResult:
    status: str  # "SAT" | "UNSAT"
    model: Optional[Dict[int, bool]] = None
    decisions: int = 0
    propagations: int = 0


# --- negation normal form ---------------------------------------------------

def to_nnf(f: Formula) -> Formula:
    """Eliminate -> and <->, push negations down to atoms/predicates."""
    return _nnf(f, negate=False)


def _nnf(f: Formula, negate: bool) -> Formula:
    if isinstance(f, (Atom, Pred)):
        return Not(f) if negate else f
    if isinstance(f, TrueConst):
        return FALSE if negate else TRUE
    if isinstance(f, FalseConst):
        return TRUE if negate else FALSE
    if isinstance(f, Not):
        return _nnf(f.child, not negate)
    if isinstance(f, And):
        cls = Or if negate else And
        return cls(_nnf(f.left, negate), _nnf(f.right, negate))
    if isinstance(f, Or):
        cls = And if negate else Or
        return cls(_nnf(f.left, negate), _nnf(f.right, negate))
    if isinstance(f, Implies):
        if negate:
            return And(_nnf(f.left, False), _nnf(f.right, True))
        return Or(_nnf(f.left, True), _nnf(f.right, False))
    if isinstance(f, Iff):
        # P <-> Q becomes (P & Q) | (!P & !Q); negated, (P & !Q) | (!P & Q).
        left_t, left_f = _nnf(f.left, False), _nnf(f.left, True)
        right_t, right_f = _nnf(f.right, False), _nnf(f.right, True)
        if negate:
            return Or(And(left_t, right_f), And(left_f, right_t))
        return Or(And(left_t, right_t), And(left_f, right_f))
    if isinstance(f, Forall):
        cls = Exists if negate else Forall
        return cls(f.var, f.sort, _nnf(f.body, negate))
    if isinstance(f, Exists):
        cls = Forall if negate else Exists
        return cls(f.var, f.sort, _nnf(f.body, negate))
    raise LogicError(f"cannot normalize node {type(f).__name__}")


# --- naive (equivalence-preserving) CNF ------------------------------------

def _estimate_clauses(f: Formula) -> int:
    """Product bound on the clause count of distributing an NNF formula."""
    if isinstance(f, And):
        return _estimate_clauses(f.left) + _estimate_clauses(f.right)
    if isinstance(f, Or):
        return _estimate_clauses(f.left) * _estimate_clauses(f.right)
    return 1


def _atom_ids(f: Formula) -> Dict[str, int]:
    return {name: i + 1 for i, name in enumerate(atoms(f))}


def to_cnf_naive(f: Formula) -> CnfFormula:
    """Equivalence-preserving CNF over the original atoms.

    Clauses are deduplicated, literals sorted by id, tautologies removed,
    clauses sorted for determinism. Raises BlowupExceeded past the
    distribution limit.
    """
    nnf = to_nnf(f)
    estimate = _estimate_clauses(nnf)
    if estimate > NAIVE_CLAUSE_LIMIT:
        raise BlowupExceeded(estimate, NAIVE_CLAUSE_LIMIT)
    ids = _atom_ids(f)

    def clauses_of(node: Formula) -> Optional[List[frozenset]]:
        # None encodes "true"; a list of literal-sets encodes a conjunction.
        if isinstance(node, TrueConst):
            return None
        if isinstance(node, FalseConst):
            return [frozenset()]
        if isinstance(node, Atom):
            return [frozenset([ids[node.name]])]
        if isinstance(node, Not):
            return [frozenset([-ids[node.child.name]])]
        if isinstance(node, And):
            left, right = clauses_of(node.left), clauses_of(node.right)
            if left is None:
                return right
            if right is None:
                return left
            return left + right
        if isinstance(node, Or):
            left, right = clauses_of(node.left), clauses_of(node.right)
            if left is None or right is None:
                return None
            out = []
            for a in left:
                for b in right:
                    out.append(a | b)
            return out
        raise LogicError(f"unexpected node in NNF: {type(node).__name__}")

    raw = clauses_of(nnf)
    cleaned = set()
    if raw is not None:
        for clause in raw:
            if any(-lit in clause for lit in clause):
                continue  # tautology
            cleaned.add(tuple(sorted(clause, key=abs)))
    if frozenset() in (frozenset(c) for c in cleaned):
        cleaned = {()}
    clauses = [
        tuple(Literal.from_int(n) for n in clause)
        for clause in sorted(cleaned, key=lambda c: (len(c), [abs(n) for n in c], c))
    ]
    var_map = {i: name for name, i in ids.items()}
    return CnfFormula(len(ids), clauses, var_map)


# --- Tseitin ----------------------------------------------------------------

def _fold_constants(f: Formula) -> Formula:
    kids = [_fold_constants(k) for k in children(f)]
    if isinstance(f, Not):
        (c,) = kids
        if isinstance(c, TrueConst):
            return FALSE
        if isinstance(c, FalseConst):
            return TRUE
        return Not(c)
    if isinstance(f, And):
        l, r = kids
        if isinstance(l, FalseConst) or isinstance(r, FalseConst):
            return FALSE
        if isinstance(l, TrueConst):
            return r
        if isinstance(r, TrueConst):
            return l
        return And(l, r)
    if isinstance(f, Or):
        l, r = kids
        if isinstance(l, TrueConst) or isinstance(r, TrueConst):
            return TRUE
        if isinstance(l, FalseConst):
            return r
        if isinstance(r, FalseConst):
            return l
        return Or(l, r)
    if isinstance(f, Implies):
        l, r = kids
        if isinstance(l, FalseConst) or isinstance(r, TrueConst):
            return TRUE
        if isinstance(l, TrueConst):
            return r
        if isinstance(r, FalseConst):
            return _fold_constants(Not(l))
        return Implies(l, r)
    if isinstance(f, Iff):
        l, r = kids
        if isinstance(l, TrueConst):
            return r
        if isinstance(r, TrueConst):
            return l
        if isinstance(l, FalseConst):
            return _fold_constants(Not(r))
        if isinstance(r, FalseConst):
            return _fold_constants(Not(l))
        return Iff(l, r)
    return f


def tseitin(f: Formula) -> CnfFormula:
    """Equisatisfiable CNF with one auxiliary variable per compound
    subformula, numbered in post-order after the (sorted) atom ids.
    Negations reuse their child's variable with flipped sign."""
    f = _fold_constants(f)
    if isinstance(f, TrueConst):
        return CnfFormula(0, [], {})
    if isinstance(f, FalseConst):
        return CnfFormula(0, [()], {})
    ids = _atom_ids(f)
    var_map = {i: name for name, i in ids.items()}
    clauses: List[Tuple[Literal, ...]] = []
    next_id = len(ids)

    def lit(n: int) -> Literal:
        return Literal.from_int(n)

    def define(node: Formula) -> int:
        # Returns the signed literal equivalent to `node`.
        nonlocal next_id
        if isinstance(node, Atom):
            return ids[node.name]
        if isinstance(node, Not):
            return -define(node.child)
        a = define(node.left)
        b = define(node.right)
        next_id += 1
        x = next_id
        var_map[x] = f"def:{render(node)}"
        if isinstance(node, And):
            clauses.extend([(lit(-x), lit(a)), (lit(-x), lit(b)),
                            (lit(x), lit(-a), lit(-b))])
        elif isinstance(node, Or):
            clauses.extend([(lit(x), lit(-a)), (lit(x), lit(-b)),
                            (lit(-x), lit(a), lit(b))])
        elif isinstance(node, Implies):
            clauses.extend([(lit(x), lit(a)), (lit(x), lit(-b)),
                            (lit(-x), lit(-a), lit(b))])
        elif isinstance(node, Iff):
            clauses.extend([(lit(-x), lit(-a), lit(b)), (lit(-x), lit(a), lit(-b)),
                            (lit(x), lit(a), lit(b)), (lit(x), lit(-a), lit(-b))])
        else:
            raise LogicError(f"cannot encode node {type(node).__name__}")
        return x

    root = define(f)
    clauses.append((lit(root),))
    return CnfFormula(next_id, clauses, var_map)


# --- DPLL -------------------------------------------------------------------

def dpll(cnf: CnfFormula) -> SatResult:
    clauses = [tuple(l.to_int() for l in clause) for clause in cnf.clauses]
    stats = {"decisions": 0, "propagations": 0}
    assign: Dict[int, bool] = {}

    def value(lit: int) -> Optional[bool]:
        v = assign.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def propagate() -> bool:
        # Unit propagation to fixpoint; returns False on conflict.
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                unassigned = None
                satisfied = False
                count = 0
                for l in clause:
                    v = value(l)
                    if v is True:
                        satisfied = True
                        break
                    if v is None:
                        unassigned = l
                        count += 1
                if satisfied:
                    continue
                if count == 0:
                    return False
                if count == 1:
                    assign[abs(unassigned)] = unassigned > 0
                    stats["propagations"] += 1
                    changed = True
        return True

    def all_satisfied() -> bool:
        return all(any(value(l) is True for l in clause) for clause in clauses)

    def search() -> bool:
        if not propagate():
            return False
        if all_satisfied():
            return True
        open_vars = sorted(
            {abs(l) for clause in clauses for l in clause
             if not any(value(x) is True for x in clause) and value(l) is None}
        )
        var = open_vars[0]
        for val in (False, True):
            stats["decisions"] += 1
            saved = dict(assign)
            assign[var] = val
            if search():
                return True
            assign.clear()
            assign.update(saved)
        return False

    # Pure-literal elimination, root only, iterated to fixpoint.
    while True:
        polarity: Dict[int, set] = {}
        for clause in clauses:
            if any(value(l) is True for l in clause):
                continue
            for l in clause:
                if value(l) is None:
                    polarity.setdefault(abs(l), set()).add(l > 0)
        pures = sorted(v for v, pols in polarity.items() if len(pols) == 1)
        if not pures:
            break
        for v in pures:
            assign[v] = next(iter(polarity[v]))
            stats["propagations"] += 1

    if search():
        model = {v: assign.get(v, False) for v in range(1, cnf.num_vars + 1)}
        return SatResult("SAT", model, stats["decisions"], stats["propagations"])
    return SatResult("UNSAT", None, stats["decisions"], stats["propagations"])


# --- SAT-based equivalence --------------------------------------------------

def equiv_sat(f1: Formula, f2: Formula):
    """Equivalent iff the Tseitin encoding of !(f1 <-> f2) is UNSAT."""
    from .semantics import EquivVerdict

    cnf = tseitin(Not(Iff(f1, f2)))
    result = dpll(cnf)
    if result.status == "UNSAT":
        return EquivVerdict(True)
    original = sorted(set(atoms(f1)) | set(atoms(f2)))
    name_to_id = {label: i for i, label in cnf.var_map.items()}
    witness = {
        name: result.model.get(name_to_id[name], False) if name in name_to_id else False
        for name in original
    }
    return EquivVerdict(False, witness=witness)
