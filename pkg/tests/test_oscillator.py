from functools import reduce

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.algebra.elements import CENTER, Element, Family, L, M, Window
from app.algebra.oscillator import (
    OscElement,
    OscMonomial,
    a,
    a_dag,
    anticommutator,
    b,
    b_dag,
    commutator,
    normal_order_product,
    q_realization_report,
    q_relation_residual,
    realize,
    realize_element,
    unit,
    verify_realization,
)
from app.algebra.report import Status
from app.kernel.errors import RealizationError
from app.kernel.qfield import q_power


def test_canonical_relations():
    assert commutator(a(), a_dag()) == unit()
    assert anticommutator(b(), b_dag()) == unit()
    assert normal_order_product(b(), b()).is_zero
    assert normal_order_product(b_dag(), b_dag()).is_zero
    assert normal_order_product(a_dag(-1), a_dag()) == unit()


def test_normal_ordering():
    product = normal_order_product(a(), a_dag())
    assert product == OscElement.from_map({OscMonomial(1, 1): 1, OscMonomial(): 1})
    inverse = normal_order_product(a(), a_dag(-1))
    assert inverse == OscElement.from_map({OscMonomial(-1, 1): 1, OscMonomial(-2, 0): -1})
    fermions = normal_order_product(b(), b_dag())
    assert fermions == OscElement.from_map({OscMonomial(): 1, OscMonomial(bp=1, bn=1): -1})


def test_monomial_rejects_bad_powers():
    with pytest.raises(ValueError):
        OscMonomial(an=-1)
    with pytest.raises(ValueError):
        OscMonomial(bp=2)


def test_product_is_associative():
    x = a() + a_dag(2)
    y = b_dag() + a()
    z = a_dag(-1) * 3 + b()
    left = normal_order_product(normal_order_product(x, y), z)
    right = normal_order_product(x, normal_order_product(y, z))
    assert left == right


def test_rendering():
    assert str(realize(L(2))) == "ad^3*a"
    assert str(realize(M(-1))) == "a*bd"
    assert str(OscElement()) == "0"


def test_realized_bracket():
    assert commutator(realize(L(1)), realize(L(-1))) == realize(L(0)).scale(-2)
    assert realize_element(Element.of(L(0), 2)) == realize(L(0)).scale(2)


def test_center_has_no_realization():
    with pytest.raises(RealizationError):
        realize(CENTER)


def test_realization_small_window():
    report = verify_realization(Window(2))
    assert report.status is Status.PASS
    assert report.dims["checked"] == 3 * 25


@pytest.mark.slow
def test_realization_window_six():
    assert verify_realization(Window(6)).status is Status.PASS


def test_corrupted_realizer_fails():
    report = verify_realization(Window(2), realizer=lambda sym: realize(sym).scale(2))
    assert report.status is Status.FAIL
    assert report.counterexamples


def test_realization_single_family():
    report = verify_realization(Window(2), families=[(Family.M, Family.M)])
    assert report.parameters["families"] == ["MM"]
    assert report.dims["checked"] == 25


def test_q_relation_residual():
    residual = q_relation_residual(L(1), L(2))
    q_inv, q_one = q_power(-1), q_power(1)
    expected = OscElement.from_map(
        {
            OscMonomial(5, 2): q_inv - q_one,
            OscMonomial(4, 1): 3 * q_inv - 2 * q_one - 1,
        }
    )
    assert residual == expected
    assert q_relation_residual(L(2), L(2)).is_zero
    assert q_relation_residual(M(1), M(2)).is_zero


def test_q_realization_is_informational():
    report = q_realization_report(Window(2))
    assert report.status is Status.INFO
    assert report.dims["vanishing"] >= 5 + 25
    assert report.counterexamples


@pytest.mark.parametrize("i", range(-8, 9))
def test_annihilator_differentiates_powers(i):
    assert commutator(a(), a_dag(i)) == a_dag(i - 1).scale(i)


@pytest.mark.parametrize("boson", [a(), a_dag(), a_dag(-2), a_dag(3) * a()])
@pytest.mark.parametrize("fermion", [b(), b_dag(), b_dag() * b()])
def test_bosons_commute_with_fermions(boson, fermion):
    assert normal_order_product(boson, fermion) == normal_order_product(fermion, boson)
    assert commutator(boson, fermion).is_zero


_LETTERS = [a(), a_dag(), a_dag(-1), a_dag(2), b(), b_dag()]
words = st.lists(st.sampled_from(_LETTERS), min_size=1, max_size=3).map(
    lambda letters: reduce(normal_order_product, letters)
)
operators = st.lists(
    st.tuples(st.integers(min_value=-3, max_value=3), words), min_size=1, max_size=3
).map(OscElement.combine)


@given(operators, operators, operators)
def test_commutator_jacobi(x, y, z):
    total = (
        commutator(x, commutator(y, z))
        + commutator(y, commutator(z, x))
        + commutator(z, commutator(x, y))
    )
    assert total.is_zero
