"""
Нормально упорядоченная алгебра бозонного осциллятора (с обратимым a⁺) и
фермионного осциллятора; реализация W(2,2) операторами.

Мономы хранятся как (a⁺)^ap a^an (b⁺)^bp b^bn; ap может быть отрицательным,
остальные показатели неотрицательны, bp, bn ∈ {0, 1}. В тексте a⁺ и b⁺
записываются как ``ad`` и ``bd``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from app.kernel.errors import RealizationError
from app.kernel.qfield import ONE, ZERO, QScalar, ScalarLike, q_power, qn

from .elements import BasisSym, Element, Family, Window, as_element
from .homlie import bracket, make_w22_classical
from .report import Report, ReportBuilder, Status

logger = logging.getLogger("app.algebra.oscillator")


@dataclass(frozen=True, slots=True, order=True)
class OscMonomial:
    ap: int = 0
    an: int = 0
    bp: int = 0
    bn: int = 0

    def __post_init__(self) -> None:
        if self.an < 0:
            raise ValueError("Степень a неотрицательна.")
        if self.bp not in (0, 1) or self.bn not in (0, 1):
            raise ValueError("Фермионные степени равны 0 или 1.")

    def __str__(self) -> str:
        factors = []
        for name, power in (("ad", self.ap), ("a", self.an), ("bd", self.bp), ("b", self.bn)):
            if power == 1:
                factors.append(name)
            elif power:
                factors.append(f"{name}^{power}")
        return "*".join(factors) if factors else "1"


UNIT = OscMonomial()


@lru_cache(maxsize=None)
def _reorder(n: int, p: int) -> tuple[tuple[tuple[int, int], int], ...]:
    """
    a^n (a⁺)^p в нормальном порядке как пары ((ap, an), коэффициент).

    Рекурсия по одному a: a^n (a⁺)^p = [a^(n-1) (a⁺)^p] a + p a^(n-1) (a⁺)^(p-1),
    тождество a (a⁺)^p = (a⁺)^p a + p (a⁺)^(p-1) верно при любом целом p.
    """
    if n == 0:
        return (((p, 0), 1),)
    acc: dict[tuple[int, int], int] = {}
    for (ap, an), coeff in _reorder(n - 1, p):
        acc[(ap, an + 1)] = acc.get((ap, an + 1), 0) + coeff
    if p:
        for (ap, an), coeff in _reorder(n - 1, p - 1):
            acc[(ap, an)] = acc.get((ap, an), 0) + p * coeff
    return tuple(sorted((key, value) for key, value in acc.items() if value))


def _fermion_product(
    left: tuple[int, int], right: tuple[int, int]
) -> list[tuple[tuple[int, int], int]]:
    bp1, bn1 = left
    bp2, bn2 = right
    if not bn1:
        return [] if bp1 + bp2 > 1 else [((bp1 + bp2, bn2), 1)]
    if not bp2:
        return [] if bn2 else [((bp1, 1), 1)]
    # b b⁺ = 1 - b⁺ b
    terms = [((bp1, bn2), 1)]
    if not bp1 and not bn2:
        terms.append(((1, 1), -1))
    return terms


@lru_cache(maxsize=None)
def monomial_product(x: OscMonomial, y: OscMonomial) -> tuple[tuple[OscMonomial, int], ...]:
    fermions = _fermion_product((x.bp, x.bn), (y.bp, y.bn))
    if not fermions:
        return ()
    acc: dict[OscMonomial, int] = {}
    for (ap, an), boson_coeff in _reorder(x.an, y.ap):
        for (bp, bn), fermion_coeff in fermions:
            mono = OscMonomial(x.ap + ap, an + y.an, bp, bn)
            acc[mono] = acc.get(mono, 0) + boson_coeff * fermion_coeff
    return tuple(sorted((mono, value) for mono, value in acc.items() if value))


@dataclass(frozen=True, slots=True)
class OscElement:
    """Конечная Q(q)-комбинация нормально упорядоченных мономов."""

    terms: tuple[tuple[OscMonomial, QScalar], ...] = ()

    @classmethod
    def from_map(cls, mapping: Mapping[OscMonomial, ScalarLike]) -> OscElement:
        items = []
        for mono, coeff in mapping.items():
            value = QScalar.of(coeff)
            if value:
                items.append((mono, value))
        items.sort(key=lambda item: item[0])
        return cls(tuple(items))

    @classmethod
    def monomial(cls, mono: OscMonomial, coeff: ScalarLike = ONE) -> OscElement:
        return cls.from_map({mono: coeff})

    @classmethod
    def combine(cls, parts: Iterable[tuple[ScalarLike, OscElement]]) -> OscElement:
        acc: dict[OscMonomial, QScalar] = {}
        for coeff, element in parts:
            scalar = QScalar.of(coeff)
            if not scalar:
                continue
            for mono, value in element.terms:
                acc[mono] = acc.get(mono, ZERO) + scalar * value
        return cls.from_map(acc)

    def as_map(self) -> dict[OscMonomial, QScalar]:
        return dict(self.terms)

    def coeff(self, mono: OscMonomial) -> QScalar:
        return self.as_map().get(mono, ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: object) -> OscElement:
        if not isinstance(other, OscElement):
            return NotImplemented
        return OscElement.combine(((ONE, self), (ONE, other)))

    def __sub__(self, other: object) -> OscElement:
        if not isinstance(other, OscElement):
            return NotImplemented
        return OscElement.combine(((ONE, self), (-ONE, other)))

    def __neg__(self) -> OscElement:
        return OscElement(tuple((mono, -value) for mono, value in self.terms))

    def scale(self, factor: ScalarLike) -> OscElement:
        scalar = QScalar.of(factor)
        if not scalar:
            return ZERO_OSC
        return OscElement(tuple((mono, value * scalar) for mono, value in self.terms))

    def __mul__(self, other: object) -> OscElement:
        if isinstance(other, OscElement):
            return normal_order_product(self, other)
        try:
            return self.scale(other)  # type: ignore[arg-type]
        except TypeError:
            return NotImplemented

    def __rmul__(self, other: object) -> OscElement:
        try:
            return self.scale(other)  # type: ignore[arg-type]
        except TypeError:
            return NotImplemented

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for index, (mono, coeff) in enumerate(self.terms):
            if coeff == ONE:
                body = str(mono)
            elif coeff == -ONE:
                body = f"-{mono}"
            elif mono == UNIT:
                body = f"({coeff})"
            else:
                body = f"({coeff})*{mono}"
            if index and body.startswith("-"):
                parts.append(f" - {body[1:]}")
            elif index:
                parts.append(f" + {body}")
            else:
                parts.append(body)
        return "".join(parts)


ZERO_OSC = OscElement()


def normal_order_product(x: OscElement, y: OscElement) -> OscElement:
    """Произведение в нормальном порядке; билинейно и ассоциативно."""
    acc: dict[OscMonomial, QScalar] = {}
    for mono_x, coeff_x in x.terms:
        for mono_y, coeff_y in y.terms:
            weight = coeff_x * coeff_y
            for mono, count in monomial_product(mono_x, mono_y):
                acc[mono] = acc.get(mono, ZERO) + weight * count
    return OscElement.from_map(acc)


def commutator(x: OscElement, y: OscElement) -> OscElement:
    return normal_order_product(x, y) - normal_order_product(y, x)


def anticommutator(x: OscElement, y: OscElement) -> OscElement:
    return normal_order_product(x, y) + normal_order_product(y, x)


def q_bracket(x: OscElement, y: OscElement, i: int, j: int) -> OscElement:
    """[x, y]_(q^i, q^j) = q^i xy - q^j yx."""
    return OscElement.combine(
        ((q_power(i), normal_order_product(x, y)), (-q_power(j), normal_order_product(y, x)))
    )


def a() -> OscElement:
    return OscElement.monomial(OscMonomial(an=1))


def a_dag(k: int = 1) -> OscElement:
    """(a⁺)^k, k любого знака."""
    return OscElement.monomial(OscMonomial(ap=k))


def b() -> OscElement:
    return OscElement.monomial(OscMonomial(bn=1))


def b_dag() -> OscElement:
    return OscElement.monomial(OscMonomial(bp=1))


def unit() -> OscElement:
    return OscElement.monomial(UNIT)


Realizer = Callable[[BasisSym], OscElement]


def realize(sym: BasisSym) -> OscElement:
    """
    L_n -> (a⁺)^(n+1) a, M_n -> (a⁺)^(n+1) b⁺ a.

    :raises RealizationError: для центрального символа.
    """
    if sym.family is Family.L:
        return OscElement.monomial(OscMonomial(sym.degree + 1, 1, 0, 0))
    if sym.family is Family.M:
        return OscElement.monomial(OscMonomial(sym.degree + 1, 1, 1, 0))
    raise RealizationError(f"Символ {sym} не имеет операторной реализации.")


def realize_element(x: Element | BasisSym, realizer: Realizer = realize) -> OscElement:
    return OscElement.combine((coeff, realizer(sym)) for sym, coeff in as_element(x).terms)


FAMILY_PAIRS = ((Family.L, Family.L), (Family.L, Family.M), (Family.M, Family.M))


def _family_pairs(families: Iterable[tuple[Family, Family]] | None):
    return tuple(families) if families is not None else FAMILY_PAIRS


def verify_realization(
    window: Window,
    realizer: Realizer = realize,
    families: Iterable[tuple[Family, Family]] | None = None,
) -> Report:
    """
    Коммутаторы реализации против структурных констант (n - m) классической W(2,2).

    :param realizer: символ -> оператор; по умолчанию стандартная реализация.
    :param families: какие семейства пар проверять (по умолчанию LL, LM, MM).
    """
    algebra = make_w22_classical()
    pairs = _family_pairs(families)
    builder = ReportBuilder(
        "realization",
        window=window.N,
        families=["".join(f.value for f in pair) for pair in pairs],
    )
    for first, second in pairs:
        for n in window.degrees():
            for m in window.degrees():
                x, y = BasisSym(first, n), BasisSym(second, m)
                builder.tick()
                expected = realize_element(bracket(algebra, x, y), realizer)
                residual = commutator(realizer(x), realizer(y)) - expected
                if residual:
                    builder.violation(residual, pair=(x, y))
    logger.info(
        "Реализация, окно %d: %d пар, %d нарушений", window.N, builder.checked, builder.violations
    )
    return builder.finish()


def q_relation_residual(x: BasisSym, y: BasisSym, realizer: Realizer = realize) -> OscElement:
    """q-скобка [X_n, Y_m]_(q^(n-m), q^(m-n)) реализации минус [m-n]_q Z_(n+m)."""
    n, m = x.degree, y.degree
    lhs = q_bracket(realizer(x), realizer(y), n - m, m - n)
    if x.family is Family.M and y.family is Family.M:
        target = ZERO_OSC
    else:
        family = Family.M if Family.M in (x.family, y.family) else Family.L
        target = realizer(BasisSym(family, n + m)).scale(qn(m - n))
    return lhs - target


def q_realization_report(
    window: Window, families: Iterable[tuple[Family, Family]] | None = None
) -> Report:
    """
    Выполняются ли q-соотношения для операторов реализации.

    Только фиксирует факты: статус INFO, ненулевые остатки идут в контрпримеры.
    """
    pairs = _family_pairs(families)
    builder = ReportBuilder(
        "q_realization",
        window=window.N,
        families=["".join(f.value for f in pair) for pair in pairs],
    )
    vanishing = 0
    for first, second in pairs:
        for n in window.degrees():
            for m in window.degrees():
                x, y = BasisSym(first, n), BasisSym(second, m)
                builder.tick()
                residual = q_relation_residual(x, y)
                if residual:
                    builder.violation(residual, pair=(x, y))
                else:
                    vanishing += 1
    builder.dim("vanishing", vanishing)
    return builder.finish(Status.INFO)


__all__ = [
    "OscElement",
    "OscMonomial",
    "a",
    "a_dag",
    "anticommutator",
    "b",
    "b_dag",
    "commutator",
    "monomial_product",
    "normal_order_product",
    "q_bracket",
    "q_realization_report",
    "q_relation_residual",
    "realize",
    "realize_element",
    "unit",
    "verify_realization",
]
