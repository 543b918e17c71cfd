import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logiclab.errors import (
    BudgetExceeded,
    InvalidSpec,
    MissingAtom,
    NotASentence,
    TooManyAtoms,
    UnboundVariable,
    UnknownPredicate,
)
from logiclab.formulas import Atom, Or, render
from logiclab.parser import parse_fol, parse_prop
from logiclab.semantics import (
    Categorical,
    FiniteModel,
    check_syllogism,
    encode_syllogism,
    equiv_finite,
    equiv_tt,
    eval_fol,
    eval_prop,
    iter_models,
    truth_table,
)


class TestEvalProp:
    def test_s1_hand_evaluation(self, s1):
        # (A|B)&C -> D with A=T,B=F,C=T,D=T: antecedent T, consequent T.
        assert eval_prop(s1, {"A": True, "B": False, "C": True, "D": True})

    def test_contradiction(self):
        f = parse_prop("A & !A")
        assert not eval_prop(f, {"A": True})
        assert not eval_prop(f, {"A": False})

    def test_implication_false_case(self):
        assert not eval_prop(parse_prop("A -> B"), {"A": True, "B": False})

    def test_missing_atom(self):
        with pytest.raises(MissingAtom):
            eval_prop(parse_prop("A & B"), {"A": True})


class TestTruthTable:
    def test_implication_rows(self):
        tt = truth_table(parse_prop("A -> B"))
        assert tt.atoms == ("A", "B")
        assert tt.rows == (True, True, False, True)

    def test_constant_true(self):
        tt = truth_table(parse_prop("true"))
        assert tt.atoms == ()
        assert tt.rows == (True,)

    def test_s1_s2_same_table(self, s1, s2):
        assert truth_table(s1).rows == truth_table(s2).rows
        assert len(truth_table(s1).rows) == 16

    def test_row_count(self):
        for n in range(5):
            f = parse_prop(" & ".join(f"x{i}" for i in range(n)) or "true")
            assert len(truth_table(f).rows) == 2 ** n

    def test_guard(self):
        f = parse_prop(" & ".join(f"x{i:02d}" for i in range(21)))
        with pytest.raises(TooManyAtoms):
            truth_table(f)

    def test_json_shape(self):
        data = truth_table(parse_prop("A | B")).to_json()
        assert data == {"atoms": ["A", "B"], "rows": [False, True, True, True]}


class TestEquivTT:
    def test_s1_s2_pair(self, s1, s2):
        assert equiv_tt(s1, s2).equivalent

    def test_identity(self):
        assert equiv_tt(parse_prop("A"), parse_prop("A")).equivalent

    def test_first_disagreement_in_canonical_order(self):
        v = equiv_tt(parse_prop("A & B"), parse_prop("A | B"))
        assert not v.equivalent
        assert v.witness == {"A": False, "B": True}


class TestEvalFol:
    def model(self, **tables):
        return FiniteModel({"U": 1}, {k: frozenset(v) for k, v in tables.items()})

    def test_direct_exists(self):
        f = parse_fol("exists t. (S(t) & !T(t) & (C(t) | B(t)))")
        m = self.model(S={(0,)}, T=set(), C={(0,)}, B=set())
        assert eval_fol(f, m)

    def test_forall_fails_on_partial_table(self):
        m = FiniteModel({"U": 2}, {"P": frozenset({(0,)})})
        assert not eval_fol(parse_fol("forall t. P(t)"), m)

    def test_fol1_in_same_model(self, fol1):
        m = self.model(S={(0,)}, T=set(), C={(0,)}, B=set())
        assert eval_fol(fol1, m)

    def test_unknown_predicate(self):
        with pytest.raises(UnknownPredicate):
            eval_fol(parse_fol("P(x) & Q(x)"), self.model(P={(0,)}), {"x": 0})

    def test_unbound_variable(self):
        with pytest.raises(UnboundVariable):
            eval_fol(parse_fol("P(x)"), self.model(P=set()))

    def test_ground_agreement_with_prop(self):
        # Quantifier-free closed-over-1-element evaluation must agree with
        # propositional evaluation after grounding each predicate to an atom.
        f_fol = parse_fol("forall x. (P(x) & Q(x) -> R(x))")
        f_prop = parse_prop("P & Q -> R")
        for bits in itertools.product([False, True], repeat=3):
            tables = {
                name: frozenset({(0,)} if bit else set())
                for name, bit in zip("PQR", bits)
            }
            m = FiniteModel({"U": 1}, tables)
            assignment = dict(zip("PQR", bits))
            assert eval_fol(f_fol, m) == eval_prop(f_prop, assignment)


class TestEquivFinite:
    def test_unary_equivalence(self, fol1, fol2):
        v = equiv_finite(fol1, fol2, {"U": 4})
        assert v.equivalent and v.bounded

    def test_two_sorted_equivalence(self, fol1_two_sorted, fol2_two_sorted):
        v = equiv_finite(fol1_two_sorted, fol2_two_sorted, {"T": 2, "P": 2})
        assert v.equivalent and v.bounded

    def test_forall_exists_counter_model(self):
        v = equiv_finite(
            parse_fol("forall x. P(x)"), parse_fol("exists x. P(x)"), {"U": 2}
        )
        assert not v.equivalent
        assert v.witness.sizes == {"U": 2}
        assert v.witness.tables["P"] == frozenset({(0,)})

    def test_witness_actually_distinguishes(self):
        f1, f2 = parse_fol("forall x. P(x)"), parse_fol("exists x. P(x)")
        v = equiv_finite(f1, f2, {"U": 2})
        assert eval_fol(f1, v.witness) != eval_fol(f2, v.witness)

    def test_symmetry_including_witness(self):
        f1, f2 = parse_fol("forall x. P(x)"), parse_fol("exists x. (P(x) & Q(x))")
        a = equiv_finite(f1, f2, {"U": 2})
        b = equiv_finite(f2, f1, {"U": 2})
        assert a.equivalent == b.equivalent
        assert a.witness.sizes == b.witness.sizes
        assert a.witness.tables == b.witness.tables

    def test_not_a_sentence(self):
        with pytest.raises(NotASentence):
            equiv_finite(parse_fol("P(x)"), parse_fol("P(x)"))

    def test_budget_exceeded_reports_progress(self):
        f1 = parse_fol("forall x. (P(x) | Q(x) | R(x) | S(x))")
        f2 = parse_fol("!exists x. (!P(x) & !Q(x) & !R(x) & !S(x))")
        with pytest.raises(BudgetExceeded) as exc:
            equiv_finite(f1, f2, {"U": 4}, budget=100)
        assert exc.value.enumerated <= 100
        assert exc.value.sizes_reached

    def test_agrees_with_explicit_enumeration(self):
        # Cross-check the bit-parallel engine against direct model iteration.
        f1 = parse_fol("forall x. (P(x) -> Q(x))")
        f2 = parse_fol("!exists x. (P(x) & !Q(x))")
        sigs = {"P": ("U",), "Q": ("U",)}
        for n in (1, 2):
            for m in iter_models({"U": n}, sigs):
                assert eval_fol(f1, m) == eval_fol(f2, m)
        assert equiv_finite(f1, f2, {"U": 2}).equivalent


class TestSyllogisms:
    def test_mood_encodings(self):
        # Quantifier bodies extend right, so no parens are needed.
        assert render(encode_syllogism(Categorical("A", "M", "P"))) == (
            "forall x. M(x) -> P(x)"
        )
        assert render(encode_syllogism(Categorical("E", "M", "P"))) == (
            "forall x. M(x) -> !P(x)"
        )
        assert render(encode_syllogism(Categorical("I", "S", "M"))) == (
            "exists x. S(x) & M(x)"
        )
        assert render(encode_syllogism(Categorical("O", "S", "P"))) == (
            "exists x. S(x) & !P(x)"
        )

    def test_barbara_valid(self):
        v = check_syllogism(
            Categorical("A", "M", "P"),
            Categorical("A", "S", "M"),
            Categorical("A", "S", "P"),
        )
        assert v.valid

    def test_undistributed_middle_invalid(self):
        v = check_syllogism(
            Categorical("A", "P", "M"),
            Categorical("A", "S", "M"),
            Categorical("A", "S", "P"),
        )
        assert not v.valid
        assert v.counter_model is not None
        # counter-model satisfies premises but not the conclusion
        assert eval_fol(encode_syllogism(Categorical("A", "P", "M")), v.counter_model)
        assert eval_fol(encode_syllogism(Categorical("A", "S", "M")), v.counter_model)
        assert not eval_fol(
            encode_syllogism(Categorical("A", "S", "P")), v.counter_model
        )

    def test_darapti_depends_on_existential_import(self):
        major = Categorical("A", "M", "P")
        minor = Categorical("A", "M", "S")
        concl = Categorical("I", "S", "P")
        assert not check_syllogism(major, minor, concl, False).valid
        assert check_syllogism(major, minor, concl, True).valid

    def test_requires_exactly_three_terms(self):
        with pytest.raises(InvalidSpec):
            check_syllogism(
                Categorical("A", "M", "P"),
                Categorical("A", "S", "Q"),
                Categorical("A", "S", "P"),
            )

    def test_domain_size_three_suffices(self):
        # Every verdict at the size-3 bound matches a size-4 re-check for
        # all mood combinations in the first figure.
        import logiclab.semantics as sem

        for m1, m2, mc in itertools.product("AEIO", repeat=3):
            args = (
                Categorical(m1, "M", "P"),
                Categorical(m2, "S", "M"),
                Categorical(mc, "S", "P"),
            )
            v3 = check_syllogism(*args)
            old = sem.SYLLOGISM_MAX_SIZE
            sem.SYLLOGISM_MAX_SIZE = 4
            try:
                v4 = check_syllogism(*args)
            finally:
                sem.SYLLOGISM_MAX_SIZE = old
            assert v3.valid == v4.valid, (m1, m2, mc)


# --- random agreement property ---------------------------------------------

atom_names = st.sampled_from(["A", "B", "C", "D", "E", "F"])

small_props = st.recursive(
    atom_names.map(Atom),
    lambda inner: st.one_of(
        inner.map(lambda f: __import__("logiclab").Not(f)),
        st.tuples(inner, inner).map(
            lambda t: __import__("logiclab").And(*t)
        ),
        st.tuples(inner, inner).map(lambda t: Or(*t)),
        st.tuples(inner, inner).map(
            lambda t: __import__("logiclab").Implies(*t)
        ),
    ),
    max_leaves=12,
)


@given(small_props, small_props)
@settings(max_examples=150, deadline=None)
def test_equiv_tt_agrees_with_equiv_sat(f1, f2):
    from logiclab.sat import equiv_sat

    assert equiv_tt(f1, f2).equivalent == equiv_sat(f1, f2).equivalent
