from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.kernel.errors import (
    EvaluationPointError,
    ExponentOverflowError,
    PoleError,
    QDivisionByZeroError,
)
from app.kernel.qfield import (
    ONE,
    ZERO,
    LaurentPoly,
    Q,
    QScalar,
    ang,
    angle,
    eval_at,
    poly_gcd,
    q_power,
    qn,
    qnumber,
)

small = st.integers(min_value=-20, max_value=20)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw, max_terms: int = 4):
    data = draw(
        st.dictionaries(st.integers(-4, 4), fractions, max_size=max_terms)
    )
    return LaurentPoly.from_dict(data)


@st.composite
def scalars(draw):
    num = draw(polys())
    den = draw(polys().filter(lambda p: not p.is_zero))
    return QScalar(num, den)


def q(n: int) -> LaurentPoly:
    return LaurentPoly.monomial(n)


def test_qnumber_small_values():
    assert qnumber(0).is_zero
    assert qnumber(1) == LaurentPoly.constant(1)
    assert str(qnumber(2)) == "q + q^-1"
    assert str(qnumber(3)) == "q^2 + 1 + q^-2"
    assert str(qnumber(-2)) == "-q - q^-1"


def test_angle_values():
    assert angle(0) == LaurentPoly.constant(2)
    assert str(angle(2)) == "q^2 + q^-2"


def test_qnumber_equals_literal_quotient():
    for n in range(-6, 7):
        literal = QScalar(q(n) - q(-n), q(1) - q(-1))
        assert literal == qn(n)
        assert literal.is_polynomial


@given(small, small)
def test_shift_identities(m, n):
    assert q(n) * qnumber(m) - q(m) * qnumber(n) == qnumber(m - n)
    assert q(-n) * qnumber(m) + q(m) * qnumber(n) == qnumber(m + n)


@given(small, small)
def test_angle_product(m, n):
    assert angle(n) * angle(m) == angle(n + m) + angle(n - m)


@given(small)
def test_symmetries(n):
    assert qnumber(-n) == -qnumber(n)
    assert angle(-n) == angle(n)


@given(small, small)
def test_difference_of_squares(a, b):
    assert qnumber(a + b) * qnumber(a - b) == qnumber(a) * qnumber(a) - qnumber(b) * qnumber(b)


@given(scalars(), scalars(), scalars())
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == ZERO
    if x:
        assert x * (ONE / x) == ONE


@given(scalars(), scalars())
def test_eval_is_ring_homomorphism(x, y):
    point = Fraction(2)
    try:
        ex, ey = eval_at(x, point), eval_at(y, point)
    except PoleError:
        return
    assert eval_at(x * y, point) == ex * ey
    assert eval_at(x + y, point) == ex + ey


def test_canonical_form_is_structural():
    first = QScalar(q(2) - 1, q(1) - 1)
    assert first == Q + 1
    assert first.is_polynomial
    half = QScalar(LaurentPoly.constant(1), LaurentPoly.constant(2))
    assert half == Fraction(1, 2)
    shifted = QScalar(LaurentPoly.constant(1), q(-1) + q(1))
    assert shifted.den.valuation == 0
    assert shifted.den.leading_coeff == 1
    assert shifted == q_power(1) / (q_power(2) + 1)


def test_rendering():
    assert str(ZERO) == "0"
    value = QScalar(LaurentPoly.from_dict({2: Fraction(3, 2), 1: -1, 0: 1, -1: -1}))
    assert str(value) == "3/2*q^2 - q + 1 - q^-1"
    assert str(ONE / (Q + 1)) == "(1)/(q + 1)"


def test_division_by_zero():
    with pytest.raises(QDivisionByZeroError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        qn(3) / qn(0)


def test_negative_power():
    assert Q**-2 == q_power(-2)
    assert (Q + 1) ** -1 * (Q + 1) == ONE


@pytest.mark.parametrize("point", [0, 1, -1])
def test_eval_rejects_degenerate_points(point):
    with pytest.raises(EvaluationPointError):
        eval_at(qn(2), point)


def test_eval_pole():
    with pytest.raises(PoleError):
        eval_at(ONE / (Q - 2), 2)


def test_eval_values():
    assert eval_at(qn(2), 2) == Fraction(5, 2)
    assert eval_at(ang(1), Fraction(1, 2)) == Fraction(5, 2)


def test_exponent_overflow():
    with pytest.raises(ExponentOverflowError):
        LaurentPoly.monomial(2**63)
    with pytest.raises(ExponentOverflowError):
        q(2**63 - 1).shift(1)


def test_gcd_of_q_numbers():
    # [2][3] и [2][5] делятся на [2] = q^-1 (q^2 + 1)
    common = poly_gcd([qnumber(2) * qnumber(3), qnumber(2) * qnumber(5)])
    assert common == q(2) + 1
