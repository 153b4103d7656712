"""
Точная арифметика в Q и Q(q).

Рациональные числа: ``fractions.Fraction``; многочлены Лорана хранятся как
отсортированные кортежи (показатель, коэффициент); элементы поля Q(q): несократимые
дроби многочленов Лорана в каноническом виде. НОД многочленов считает sympy.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from .errors import (
    EvaluationPointError,
    ExponentOverflowError,
    PoleError,
    QDivisionByZeroError,
)

logger = logging.getLogger("app.kernel.qfield")

Rational = Fraction
Number = Union[int, Fraction]

_EXPONENT_LIMIT = 2**63
_RING, _ = ring("q", QQ)


def _check_exponent(exp: int) -> int:
    """Показатели q: знаковые 64-битные целые, переполнение не заворачиваем."""
    if not -_EXPONENT_LIMIT <= exp < _EXPONENT_LIMIT:
        raise ExponentOverflowError(f"Показатель q^{exp} вне диапазона int64.")
    return exp


def _render_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _render_term(exp: int, coeff: Fraction) -> str:
    if exp == 0:
        return _render_fraction(coeff)
    power = "q" if exp == 1 else f"q^{exp}"
    if coeff == 1:
        return power
    return f"{_render_fraction(coeff)}*{power}"


@dataclass(frozen=True, slots=True)
class LaurentPoly:
    """
    Многочлен Лорана от q с рациональными коэффициентами.

    ``terms``: пары (показатель, коэффициент) по убыванию показателя, нулевых
    коэффициентов нет; у нулевого многочлена ``terms`` пуст.
    """

    terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, data: Mapping[int, Number]) -> LaurentPoly:
        items = []
        for exp, coeff in data.items():
            value = Fraction(coeff)
            if value:
                items.append((_check_exponent(int(exp)), value))
        items.sort(key=lambda item: item[0], reverse=True)
        return cls(tuple(items))

    @classmethod
    def constant(cls, value: Number) -> LaurentPoly:
        return cls.from_dict({0: value})

    @classmethod
    def monomial(cls, exp: int, coeff: Number = 1) -> LaurentPoly:
        return cls.from_dict({exp: coeff})

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def valuation(self) -> int:
        """Наименьший показатель (0 для нулевого многочлена)."""
        return self.terms[-1][0] if self.terms else 0

    @property
    def degree(self) -> int:
        return self.terms[0][0] if self.terms else 0

    @property
    def leading_coeff(self) -> Fraction:
        return self.terms[0][1] if self.terms else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: object) -> LaurentPoly:
        poly = _as_poly(other)
        if poly is None:
            return NotImplemented
        if not poly.terms:
            return self
        if not self.terms:
            return poly
        acc = dict(self.terms)
        for exp, coeff in poly.terms:
            acc[exp] = acc.get(exp, 0) + coeff
        return LaurentPoly.from_dict(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((exp, -coeff) for exp, coeff in self.terms))

    def __sub__(self, other: object) -> LaurentPoly:
        poly = _as_poly(other)
        if poly is None:
            return NotImplemented
        return self + (-poly)

    def __rsub__(self, other: object) -> LaurentPoly:
        poly = _as_poly(other)
        if poly is None:
            return NotImplemented
        return poly + (-self)

    def __mul__(self, other: object) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return ZERO_POLY
        acc: dict[int, Fraction] = {}
        for exp1, coeff1 in self.terms:
            for exp2, coeff2 in other.terms:
                key = exp1 + exp2
                acc[key] = acc.get(key, 0) + coeff1 * coeff2
        return LaurentPoly.from_dict(acc)

    __rmul__ = __mul__

    def scale(self, factor: Number) -> LaurentPoly:
        value = Fraction(factor)
        if not value:
            return ZERO_POLY
        return LaurentPoly(tuple((exp, coeff * value) for exp, coeff in self.terms))

    def shift(self, k: int) -> LaurentPoly:
        """Умножить на q^k."""
        if k == 0:
            return self
        return LaurentPoly(tuple((_check_exponent(exp + k), coeff) for exp, coeff in self.terms))

    def evaluate(self, q0: Number) -> Fraction:
        point = Fraction(q0)
        return sum((coeff * point**exp for exp, coeff in self.terms), Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for index, (exp, coeff) in enumerate(self.terms):
            body = _render_term(exp, abs(coeff))
            if index == 0:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f" {'+' if coeff > 0 else '-'} {body}")
        return "".join(parts)


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly(((0, Fraction(1)),))


def _as_poly(value: object) -> LaurentPoly | None:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentPoly.constant(value)
    return None


# --- мост к sympy: только для многочленов с неотрицательной валюацией ---


def _to_ring(poly: LaurentPoly):
    return _RING.from_dict(
        {(exp,): QQ(coeff.numerator, coeff.denominator) for exp, coeff in poly.terms}
    )


def _from_ring(element) -> LaurentPoly:
    return LaurentPoly.from_dict(
        {
            monom[0]: Fraction(int(coeff.numerator), int(coeff.denominator))
            for monom, coeff in element.items()
        }
    )


def _normalized(poly: LaurentPoly) -> LaurentPoly:
    return poly.shift(-poly.valuation)


def poly_gcd(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    """
    НОД многочленов Лорана как обычных многочленов после сдвига к валюации 0.

    :return: нормированный (старший коэффициент 1) многочлен с валюацией 0 или ноль,
        если все аргументы нулевые.
    """
    result = None
    for poly in polys:
        if poly.is_zero:
            continue
        element = _to_ring(_normalized(poly))
        result = element if result is None else result.gcd(element)
        if result.is_ground:
            return ONE_POLY
    if result is None:
        return ZERO_POLY
    return _from_ring(result.monic())


def poly_exquo(dividend: LaurentPoly, divisor: LaurentPoly) -> LaurentPoly:
    """Точное частное многочленов Лорана (делимость обязана выполняться)."""
    if divisor.is_zero:
        raise QDivisionByZeroError("Деление многочлена на ноль.")
    if dividend.is_zero:
        return ZERO_POLY
    quotient = _to_ring(_normalized(dividend)).exquo(_to_ring(_normalized(divisor)))
    return _from_ring(quotient).shift(dividend.valuation - divisor.valuation)


def poly_lcm(first: LaurentPoly, second: LaurentPoly) -> LaurentPoly:
    """НОК многочленов с валюацией 0, нормированный."""
    if first == ONE_POLY:
        return second
    if second == ONE_POLY or first == second:
        return first
    return _from_ring(_to_ring(first).lcm(_to_ring(second)).monic())


def _canonical(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero:
        raise QDivisionByZeroError("Знаменатель равен нулю.")
    if num.is_zero:
        return ZERO_POLY, ONE_POLY
    if den.is_monomial:
        exp, coeff = den.terms[0]
        return num.shift(-exp).scale(1 / coeff), ONE_POLY
    low = den.valuation
    num, den = num.shift(-low), den.shift(-low)
    num_low = num.valuation
    _, num_cof, den_cof = _to_ring(num.shift(-num_low)).cofactors(_to_ring(den))
    num, den = _from_ring(num_cof).shift(num_low), _from_ring(den_cof)
    lead = den.leading_coeff
    if lead != 1:
        num, den = num.scale(1 / lead), den.scale(1 / lead)
    return num, den


def _raw(num: LaurentPoly, den: LaurentPoly) -> QScalar:
    scalar = object.__new__(QScalar)
    object.__setattr__(scalar, "num", num)
    object.__setattr__(scalar, "den", den)
    return scalar


ScalarLike = Union["QScalar", LaurentPoly, int, Fraction]


@dataclass(frozen=True, slots=True, eq=False)
class QScalar:
    """
    Элемент поля Q(q) в каноническом виде.

    Знаменатель сдвинут к валюации 0, нормирован и взаимно прост с числителем,
    поэтому равенство сводится к сравнению полей.
    """

    num: LaurentPoly
    den: LaurentPoly = ONE_POLY

    def __post_init__(self) -> None:
        if self.den == ONE_POLY:
            return
        num, den = _canonical(self.num, self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def of(cls, value: ScalarLike) -> QScalar:
        scalar = _coerce(value)
        if scalar is None:
            raise TypeError(f"Нельзя привести {value!r} к элементу Q(q).")
        return scalar

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den == ONE_POLY

    @property
    def numerator(self) -> LaurentPoly:
        return self.num

    @property
    def denominator(self) -> LaurentPoly:
        return self.den

    def __bool__(self) -> bool:
        return not self.num.is_zero

    def __eq__(self, other: object) -> bool:
        scalar = _coerce(other)
        if scalar is None:
            return NotImplemented
        return self.num == scalar.num and self.den == scalar.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: object) -> QScalar:
        scalar = _coerce(other)
        if scalar is None:
            return NotImplemented
        if self.is_polynomial and scalar.is_polynomial:
            return _raw(self.num + scalar.num, ONE_POLY)
        if self.den == scalar.den:
            return QScalar(self.num + scalar.num, self.den)
        return QScalar(self.num * scalar.den + scalar.num * self.den, self.den * scalar.den)

    __radd__ = __add__

    def __neg__(self) -> QScalar:
        return _raw(-self.num, self.den)

    def __sub__(self, other: object) -> QScalar:
        scalar = _coerce(other)
        if scalar is None:
            return NotImplemented
        return self + (-scalar)

    def __rsub__(self, other: object) -> QScalar:
        scalar = _coerce(other)
        if scalar is None:
            return NotImplemented
        return scalar + (-self)

    def __mul__(self, other: object) -> QScalar:
        scalar = _coerce(other)
        if scalar is None:
            return NotImplemented
        if self.is_zero or scalar.is_zero:
            return ZERO
        if self.is_polynomial and scalar.is_polynomial:
            return _raw(self.num * scalar.num, ONE_POLY)
        return QScalar(self.num * scalar.num, self.den * scalar.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> QScalar:
        scalar = _coerce(other)
        if scalar is None:
            return NotImplemented
        if scalar.is_zero:
            raise QDivisionByZeroError("Деление на нулевой элемент Q(q).")
        return QScalar(self.num * scalar.den, self.den * scalar.num)

    def __rtruediv__(self, other: object) -> QScalar:
        scalar = _coerce(other)
        if scalar is None:
            return NotImplemented
        return scalar / self

    def __pow__(self, exponent: int) -> QScalar:
        if exponent < 0:
            return (ONE / self) ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"QScalar({self})"


def _coerce(value: object) -> QScalar | None:
    if isinstance(value, QScalar):
        return value
    if isinstance(value, LaurentPoly):
        return _raw(value, ONE_POLY)
    if isinstance(value, (int, Fraction)):
        return _raw(LaurentPoly.constant(value), ONE_POLY)
    return None


ZERO = _raw(ZERO_POLY, ONE_POLY)
ONE = _raw(ONE_POLY, ONE_POLY)
Q = _raw(LaurentPoly.monomial(1), ONE_POLY)


@lru_cache(maxsize=None)
def qnumber(n: int) -> LaurentPoly:
    """
    q-число [n]_q = (q^n - q^-n)/(q - q^-1) как многочлен Лорана.

    Для n > 0 это q^(n-1) + q^(n-3) + ... + q^(1-n); [-n]_q = -[n]_q; [0]_q = 0.
    """
    if n == 0:
        return ZERO_POLY
    if n < 0:
        return -qnumber(-n)
    return LaurentPoly.from_dict({n - 1 - 2 * i: 1 for i in range(n)})


@lru_cache(maxsize=None)
def angle(m: int) -> LaurentPoly:
    """<m>_q = q^m + q^-m; <0>_q = 2."""
    if m == 0:
        return LaurentPoly.constant(2)
    return LaurentPoly.from_dict({m: 1, -m: 1})


def qn(n: int) -> QScalar:
    """[n]_q как элемент поля."""
    return _raw(qnumber(n), ONE_POLY)


def ang(m: int) -> QScalar:
    """<m>_q как элемент поля."""
    return _raw(angle(m), ONE_POLY)


def q_power(k: int) -> QScalar:
    return _raw(LaurentPoly.monomial(k), ONE_POLY)


def eval_at(value: ScalarLike, q0: Number | str) -> Fraction:
    """
    Значение элемента Q(q) при q = q0.

    :param value: элемент поля (или многочлен/число).
    :param q0: рациональная точка, не из {0, 1, -1}.
    :raises EvaluationPointError: если q0 ∈ {0, 1, -1}.
    :raises PoleError: если знаменатель обращается в ноль.
    """
    point = Fraction(q0)
    if point in (0, 1, -1):
        raise EvaluationPointError(f"Точка q0={point} недопустима: корень из единицы или ноль.")
    scalar = QScalar.of(value)
    den = scalar.den.evaluate(point)
    if den == 0:
        raise PoleError(f"Полюс в точке q0={point}.")
    return scalar.num.evaluate(point) / den
