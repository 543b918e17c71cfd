import pytest

from logiclab.parser import parse_fol, parse_prop


@pytest.fixture
def s1():
    return parse_prop("(A | B) & C -> D")


@pytest.fixture
def s2():
    return parse_prop("(A -> (C -> D)) & (C -> (B -> D))")


@pytest.fixture
def fol1():
    return parse_fol("!forall t. ((C(t) | B(t)) & S(t) -> T(t))")


@pytest.fixture
def fol2():
    return parse_fol("exists t. (S(t) & !T(t) & (C(t) | B(t)))")


@pytest.fixture
def fol1_two_sorted():
    return parse_fol("!forall t:T. exists p:P. ((C(t) | B(t)) & S(p,t) -> T(p,t))")


@pytest.fixture
def fol2_two_sorted():
    return parse_fol("exists t:T. forall p:P. (S(p,t) & !T(p,t) & (C(t) | B(t)))")
