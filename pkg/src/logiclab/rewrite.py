"""Equivalence-rule catalog, position-addressed rewriting, step validation
and automatic derivation of equivalence chains.

Matching is purely syntactic: commutativity and associativity are explicit
steps, so a derivation shows every manipulation. Automatic derivations
meet at a canonical sorted CNF rather than searching for a minimal chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import LogicError, PathInvalid, PatternMismatch, UnknownRule
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
    is_propositional,
    preorder_paths,
    render,
    replace_at,
    subformula_at,
)

L2R = "L->R"
R2L = "R->L"

# Metavariables in rule schemas are plain atoms (P, Q, R); they match any
# subformula. Quantifier schemas use a metavariable binder name that
# matches any concrete variable/sort.
_P, _Q, _R = Atom("P"), Atom("Q"), Atom("R")
_MV = "v"


@dataclass(frozen=True)
class RewriteRule:
    id: str
    lhs: Formula
    rhs: Formula

    def describe(self) -> dict:
        return {"id": self.id, "lhs": render(self.lhs), "rhs": render(self.rhs)}


_CATALOG: Tuple[RewriteRule, ...] = (
    RewriteRule("impl_elim", Implies(_P, _Q), Or(Not(_P), _Q)),
    RewriteRule("iff_expand", Iff(_P, _Q), And(Implies(_P, _Q), Implies(_Q, _P))),
    RewriteRule("de_morgan_and", Not(And(_P, _Q)), Or(Not(_P), Not(_Q))),
    RewriteRule("de_morgan_or", Not(Or(_P, _Q)), And(Not(_P), Not(_Q))),
    RewriteRule("double_neg", Not(Not(_P)), _P),
    RewriteRule("distrib_and_over_or", And(_P, Or(_Q, _R)), Or(And(_P, _Q), And(_P, _R))),
    RewriteRule("distrib_or_over_and", Or(_P, And(_Q, _R)), And(Or(_P, _Q), Or(_P, _R))),
    RewriteRule("absorb_and", And(_P, Or(_P, _Q)), _P),
    RewriteRule("absorb_or", Or(_P, And(_P, _Q)), _P),
    RewriteRule("idempotent_and", And(_P, _P), _P),
    RewriteRule("idempotent_or", Or(_P, _P), _P),
    RewriteRule("commute_and", And(_P, _Q), And(_Q, _P)),
    RewriteRule("commute_or", Or(_P, _Q), Or(_Q, _P)),
    RewriteRule("assoc_and", And(And(_P, _Q), _R), And(_P, And(_Q, _R))),
    RewriteRule("assoc_or", Or(Or(_P, _Q), _R), Or(_P, Or(_Q, _R))),
    RewriteRule("neg_forall", Not(Forall(_MV, _MV, _P)), Exists(_MV, _MV, Not(_P))),
    RewriteRule("neg_exists", Not(Exists(_MV, _MV, _P)), Forall(_MV, _MV, Not(_P))),
    RewriteRule("and_true", And(_P, TRUE), _P),
    RewriteRule("and_false", And(_P, FALSE), FALSE),
    RewriteRule("or_true", Or(_P, TRUE), TRUE),
    RewriteRule("or_false", Or(_P, FALSE), _P),
    RewriteRule("and_compl", And(_P, Not(_P)), FALSE),
    RewriteRule("or_compl", Or(_P, Not(_P)), TRUE),
    RewriteRule("not_true", Not(TRUE), FALSE),
    RewriteRule("not_false", Not(FALSE), TRUE),
)

_BY_ID: Dict[str, RewriteRule] = {r.id: r for r in _CATALOG}


def rule_catalog() -> Tuple[RewriteRule, ...]:
    return _CATALOG


def get_rule(rule_id: str) -> RewriteRule:
    try:
        return _BY_ID[rule_id]
    except KeyError:
        raise UnknownRule(rule_id) from None


# --- matching ---------------------------------------------------------------

def _match(pattern: Formula, f: Formula, binding: dict) -> bool:
    if isinstance(pattern, Atom):  # metavariable
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = f
            return True
        return bound == f
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, (Forall, Exists)):
        for key, concrete in ((("var", pattern.var), f.var), (("sort", pattern.sort), f.sort)):
            bound = binding.get(key)
            if bound is None:
                binding[key] = concrete
            elif bound != concrete:
                return False
        return _match(pattern.body, f.body, binding)
    if isinstance(pattern, Not):
        return _match(pattern.child, f.child, binding)
    if isinstance(pattern, (And, Or, Implies, Iff)):
        return _match(pattern.left, f.left, binding) and _match(
            pattern.right, f.right, binding
        )
    if isinstance(pattern, (TrueConst, FalseConst)):
        return True
    if isinstance(pattern, Pred):
        return pattern == f
    return False


def _instantiate(template: Formula, binding: dict) -> Formula:
    if isinstance(template, Atom):
        try:
            return binding[template.name]
        except KeyError:
            raise KeyError(template.name) from None
    if isinstance(template, Not):
        return Not(_instantiate(template.child, binding))
    if isinstance(template, (And, Or, Implies, Iff)):
        return type(template)(
            _instantiate(template.left, binding),
            _instantiate(template.right, binding),
        )
    if isinstance(template, (Forall, Exists)):
        var = binding.get(("var", template.var), template.var)
        sort = binding.get(("sort", template.sort), template.sort)
        return type(template)(var, sort, _instantiate(template.body, binding))
    return template


def apply_rule(f: Formula, rule_id: str, path, direction: str = L2R) -> Formula:
    """Apply a catalog rule at a path; only that subtree changes."""
    rule = get_rule(rule_id)
    if direction == L2R:
        pattern, template = rule.lhs, rule.rhs
    elif direction == R2L:
        pattern, template = rule.rhs, rule.lhs
    else:
        raise LogicError(f"unknown direction {direction!r}")
    sub = subformula_at(f, path)
    binding: dict = {}
    if not _match(pattern, sub, binding):
        raise PatternMismatch(rule_id, path)
    try:
        replacement = _instantiate(template, binding)
    except KeyError:
        # Template mentions a metavariable the pattern did not bind
        # (e.g. applying and_false right-to-left to a bare `false`).
        raise PatternMismatch(rule_id, path) from None
    return replace_at(f, path, replacement)


# --- steps and derivations --------------------------------------------------

@dataclass(frozen=True)
class RewriteStep:
    rule: str
    path: Tuple[int, ...]
    direction: str
    before: Formula
    after: Formula

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "path": list(self.path),
            "dir": self.direction,
            "after": render(self.after),
        }


@dataclass(frozen=True)
class Derivation:
    start: Formula
    end: Formula
    steps: Tuple[RewriteStep, ...]

    def to_json(self) -> dict:
        return {
            "start": render(self.start),
            "steps": [s.to_json() for s in self.steps],
            "end": render(self.end),
        }


@dataclass
class StepVerdict:
    accepted: bool
    rule: Optional[str] = None
    path: Optional[Tuple[int, ...]] = None
    direction: Optional[str] = None
    semantic: bool = False  # true when no named rule matched but the
    # formulas are semantically equivalent
    reason: Optional[str] = None
    witness: Optional[object] = None


SEMANTIC_RULE = "semantic"


def _semantic_check(before: Formula, after: Formula):
    from .semantics import equiv_finite, equiv_tt

    if is_propositional(before) and is_propositional(after):
        return equiv_tt(before, after)
    return equiv_finite(before, after)


def validate_step(
    before: Formula,
    after: Formula,
    claimed: Optional[Tuple[str, tuple, str]] = None,
) -> StepVerdict:
    """Check one derivation step.

    With a claim, accept iff replaying the claimed rule reproduces `after`
    exactly. Without one, search the catalog over all paths in
    (path-lexicographic, catalog-order, L->R-first) order; if nothing
    matches syntactically fall back to a semantic equivalence check and
    mark the step as not backed by a named rule.
    """
    if claimed is not None:
        rule_id, path, direction = claimed
        try:
            result = apply_rule(before, rule_id, tuple(path), direction)
        except (PathInvalid, PatternMismatch) as exc:
            return StepVerdict(False, reason=exc.code)
        if result == after:
            return StepVerdict(True, rule_id, tuple(path), direction)
        return StepVerdict(
            False,
            reason="pattern_mismatch",
            witness=None,
        )
    for path in preorder_paths(before):
        for rule in _CATALOG:
            for direction in (L2R, R2L):
                try:
                    result = apply_rule(before, rule.id, path, direction)
                except (PathInvalid, PatternMismatch):
                    continue
                if result == after:
                    return StepVerdict(True, rule.id, path, direction)
    verdict = _semantic_check(before, after)
    if verdict.equivalent:
        return StepVerdict(True, SEMANTIC_RULE, (), L2R, semantic=True)
    return StepVerdict(
        False, reason="not_equivalent", witness=verdict.witness
    )


# --- canonicalization with recorded steps -----------------------------------

DISTRIBUTION_CLAUSE_LIMIT = 512


class CanonicalizationOverflow(LogicError):
    code = "canonicalization_overflow"


class _Canonicalizer:
    """Rewrites a formula to canonical sorted CNF, recording every step."""

    def __init__(self, f: Formula):
        self.cur = f
        self.steps: List[RewriteStep] = []

    def apply(self, rule_id: str, path, direction: str = L2R):
        after = apply_rule(self.cur, rule_id, tuple(path), direction)
        self.steps.append(
            RewriteStep(rule_id, tuple(path), direction, self.cur, after)
        )
        self.cur = after

    def sub(self, path):
        return subformula_at(self.cur, tuple(path))

    # -- phases --

    def eliminate_impl_iff(self):
        while True:
            hit = self._find(("iff_expand", "impl_elim"))
            if hit is None:
                return
            self.apply(*hit)

    def push_negations(self):
        rules = (
            "double_neg", "de_morgan_and", "de_morgan_or",
            "neg_forall", "neg_exists", "not_true", "not_false",
        )
        while True:
            hit = self._find(rules)
            if hit is None:
                return
            self.apply(*hit)

    def _find(self, rule_ids):
        for path in preorder_paths(self.cur):
            sub = subformula_at(self.cur, path)
            for rid in rule_ids:
                binding: dict = {}
                if _match(_BY_ID[rid].lhs, sub, binding):
                    return rid, path
        return None

    def simplify_constants(self) -> bool:
        changed = False
        while True:
            hit = self._find_constant_site()
            if hit is None:
                return changed
            changed = True
            path, node = hit
            right_const = isinstance(node.right, (TrueConst, FalseConst))
            if not right_const:
                self.apply("commute_and" if isinstance(node, And) else "commute_or", path)
                node = self.sub(path)
            if isinstance(node, And):
                rid = "and_true" if isinstance(node.right, TrueConst) else "and_false"
            else:
                rid = "or_true" if isinstance(node.right, TrueConst) else "or_false"
            self.apply(rid, path)

    def _find_constant_site(self):
        for path in preorder_paths(self.cur):
            sub = subformula_at(self.cur, path)
            if isinstance(sub, (And, Or)) and any(
                isinstance(k, (TrueConst, FalseConst)) for k in (sub.left, sub.right)
            ):
                return path, sub
        return None

    def distribute(self):
        # Push Or over And everywhere; quantifiers act as opaque leaves.
        if _cnf_estimate(self.cur) > DISTRIBUTION_CLAUSE_LIMIT:
            raise CanonicalizationOverflow(
                "CNF distribution would exceed "
                f"{DISTRIBUTION_CLAUSE_LIMIT} clauses"
            )
        while True:
            site = None
            for path in preorder_paths(self.cur):
                sub = subformula_at(self.cur, path)
                if isinstance(sub, Or) and (
                    isinstance(sub.right, And) or isinstance(sub.left, And)
                ):
                    site = (path, sub)
                    break
            if site is None:
                return
            path, sub = site
            if not isinstance(sub.right, And):
                self.apply("commute_or", path)
            self.apply("distrib_or_over_and", path)

    def associate_right(self):
        while True:
            hit = self._find(("assoc_and", "assoc_or"))
            if hit is None:
                return
            self.apply(*hit)

    # -- chain helpers (right-nested And/Or chains) --

    def _chain_paths(self, path, cls):
        """Element paths of the right-nested `cls` chain rooted at path."""
        out = []
        node = self.sub(path)
        cur = tuple(path)
        while isinstance(node, cls):
            out.append(cur + (0,))
            cur = cur + (1,)
            node = node.right
        out.append(cur)
        return out

    def _swap_adjacent(self, path, cls, i):
        """Swap chain elements i and i+1 via assoc/commute bookkeeping."""
        assoc = "assoc_and" if cls is And else "assoc_or"
        commute = "commute_and" if cls is And else "commute_or"
        p = tuple(path) + (1,) * i
        node = self.sub(p)
        if isinstance(node.right, cls):
            self.apply(assoc, p, R2L)
            self.apply(commute, p + (0,))
            self.apply(assoc, p, L2R)
        else:
            self.apply(commute, p)

    def _drop_adjacent_duplicate(self, path, cls, i):
        idem = "idempotent_and" if cls is And else "idempotent_or"
        assoc = "assoc_and" if cls is And else "assoc_or"
        p = tuple(path) + (1,) * i
        node = self.sub(p)
        if isinstance(node.right, cls):
            self.apply(assoc, p, R2L)
            self.apply(idem, p + (0,))
        else:
            self.apply(idem, p)

    def _collapse_complement(self, path, cls, i):
        """Replace adjacent P, !P chain elements with the dominating const."""
        compl = "and_compl" if cls is And else "or_compl"
        assoc = "assoc_and" if cls is And else "assoc_or"
        p = tuple(path) + (1,) * i
        node = self.sub(p)
        if isinstance(node.right, cls):
            self.apply(assoc, p, R2L)
            self.apply(compl, p + (0,))
        else:
            self.apply(compl, p)

    def sort_chain(self, path, cls) -> bool:
        """Bubble-sort a right-nested chain by rendered text; dedupe and
        collapse complementary neighbours. Returns True when a constant
        was introduced (caller must re-run constant simplification)."""
        changed = True
        while changed:
            changed = False
            elems = self._chain_paths(path, cls)
            keys = [self._sort_key(p) for p in elems]
            for i in range(len(keys) - 1):
                if keys[i] > keys[i + 1]:
                    self._swap_adjacent(path, cls, i)
                    changed = True
                    break
        # dedupe / complement collapse
        while True:
            elems = self._chain_paths(path, cls)
            acted = False
            for i in range(len(elems) - 1):
                a, b = self.sub(elems[i]), self.sub(elems[i + 1])
                if a == b:
                    self._drop_adjacent_duplicate(path, cls, i)
                    acted = True
                    break
                if b == Not(a):
                    self._collapse_complement(path, cls, i)
                    return True
            if not acted:
                return False

    def _sort_key(self, path):
        node = self.sub(path)
        if isinstance(node, Not):
            return (render(node.child), 1)
        return (render(node), 0)

    def absorb_pass(self):
        while True:
            hit = None
            for path in preorder_paths(self.cur):
                sub = subformula_at(self.cur, path)
                for rid in ("absorb_and", "absorb_or"):
                    binding: dict = {}
                    if _match(_BY_ID[rid].lhs, sub, binding):
                        hit = (rid, path)
                        break
                if hit:
                    break
            if hit is None:
                return
            self.apply(*hit)

    def canonicalize(self):
        self.eliminate_impl_iff()
        self.push_negations()
        self.simplify_constants()
        self.distribute()
        for _ in range(200):  # safety bound; each pass shrinks or orders
            self.associate_right()
            reintroduced = self._sort_everything()
            self.absorb_pass()
            constants = self.simplify_constants()
            if not reintroduced and not constants:
                if self._sorted_everywhere():
                    return
        raise LogicError("canonicalization did not converge")

    def _region_paths(self):
        """Roots of maximal And/Or regions: the root itself and the bodies
        of quantifiers, skipping literals."""
        regions = []

        def walk(path):
            node = self.sub(path)
            if isinstance(node, (Forall, Exists)):
                walk(tuple(path) + (0,))
            elif isinstance(node, (And, Or)):
                regions.append((tuple(path), type(node)))
                for p in self._chain_paths(path, type(node)):
                    sub = self.sub(p)
                    if isinstance(sub, (And, Or, Forall, Exists)):
                        walk(p)

        walk(())
        # innermost regions first so outer sort keys see sorted children
        return sorted(regions, key=lambda rp: -len(rp[0]))

    def _sort_everything(self) -> bool:
        for path, cls in self._region_paths():
            try:
                node = self.sub(path)
            except PathInvalid:
                continue  # an earlier collapse removed this region
            if not isinstance(node, cls):
                continue
            if self.sort_chain(path, cls):
                # A constant appeared; stop and let the caller re-simplify
                # before touching now-stale region paths.
                return True
        return False

    def _sorted_everywhere(self) -> bool:
        for path, cls in self._region_paths():
            if not isinstance(self.sub(path), cls):
                continue
            keys = [self._sort_key(p) for p in self._chain_paths(path, cls)]
            if keys != sorted(keys) or len(set(keys)) != len(keys):
                return False
        return True


def _cnf_estimate(f: Formula) -> int:
    if isinstance(f, And):
        return _cnf_estimate(f.left) + _cnf_estimate(f.right)
    if isinstance(f, Or):
        return _cnf_estimate(f.left) * _cnf_estimate(f.right)
    return 1


@dataclass
class DeriveResult:
    derivation: Optional[Derivation] = None
    witness: Optional[object] = None
    semantic_bridge: bool = False  # a flagged non-syntactic step was needed

    @property
    def equivalent(self) -> bool:
        return self.derivation is not None


MAX_DERIVE_ATOMS = 12


def derive_equiv(f1: Formula, f2: Formula) -> DeriveResult:
    """Build an equivalence chain from f1 to f2 by canonicalizing both
    sides and appending the reversal of the second half."""
    from .errors import TooManyAtoms

    if is_propositional(f1) and is_propositional(f2):
        if len(set(atoms(f1)) | set(atoms(f2))) > MAX_DERIVE_ATOMS:
            raise TooManyAtoms(
                f"derive_equiv is limited to {MAX_DERIVE_ATOMS} atoms"
            )
    verdict = _semantic_check(f1, f2)
    if not verdict.equivalent:
        return DeriveResult(witness=verdict.witness)

    bridge = False
    try:
        left = _Canonicalizer(f1)
        left.canonicalize()
        right = _Canonicalizer(f2)
        right.canonicalize()
    except CanonicalizationOverflow:
        # Too large to distribute: keep whatever NNF-level progress both
        # sides can make and bridge semantically.
        left = _Canonicalizer(f1)
        left.eliminate_impl_iff()
        left.push_negations()
        left.simplify_constants()
        right = _Canonicalizer(f2)
        right.eliminate_impl_iff()
        right.push_negations()
        right.simplify_constants()

    steps = list(left.steps)
    if left.cur != right.cur:
        bridge = True
        steps.append(RewriteStep(SEMANTIC_RULE, (), L2R, left.cur, right.cur))
    for step in reversed(right.steps):
        steps.append(
            RewriteStep(
                step.rule,
                step.path,
                R2L if step.direction == L2R else L2R,
                step.after,
                step.before,
            )
        )
    return DeriveResult(
        derivation=Derivation(f1, f2, tuple(steps)), semantic_bridge=bridge
    )
