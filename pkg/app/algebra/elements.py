"""Градуированные базисные символы, элементы алгебры и окно усечения."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from typing import Iterable, Mapping

from app.kernel.qfield import ONE, ZERO, QScalar, ScalarLike


class Family(str, Enum):
    L = "L"
    M = "M"
    C = "C"


_FAMILY_RANK = {Family.L: 0, Family.M: 1, Family.C: 2}


@total_ordering
@dataclass(frozen=True, slots=True)
class BasisSym:
    """
    Базисный символ: семейство и степень.

    Порядок: L раньше M раньше C, внутри семейства по возрастанию степени.
    Центральный символ C всегда имеет степень 0.
    """

    family: Family
    degree: int = 0

    def __post_init__(self) -> None:
        if self.family is Family.C and self.degree != 0:
            raise ValueError("Центральный символ C имеет степень 0.")

    @property
    def sort_key(self) -> tuple[int, int]:
        return _FAMILY_RANK[self.family], self.degree

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, BasisSym):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if self.family is Family.C:
            return "C"
        return f"{self.family.value}[{self.degree}]"


def L(n: int) -> BasisSym:
    return BasisSym(Family.L, n)


def M(n: int) -> BasisSym:
    return BasisSym(Family.M, n)


CENTER = BasisSym(Family.C, 0)


def _coefficient_prefix(coeff: QScalar) -> str:
    if coeff == ONE:
        return ""
    if coeff == -ONE:
        return "-"
    if coeff.is_polynomial and coeff.num.is_monomial:
        return f"{coeff}*"
    return f"({coeff})*"


@dataclass(frozen=True, slots=True)
class Element:
    """Конечная Q(q)-линейная комбинация символов; нулевых коэффициентов нет."""

    terms: tuple[tuple[BasisSym, QScalar], ...] = ()

    @classmethod
    def from_map(cls, mapping: Mapping[BasisSym, ScalarLike]) -> Element:
        items = []
        for sym, coeff in mapping.items():
            value = QScalar.of(coeff)
            if value:
                items.append((sym, value))
        items.sort(key=lambda item: item[0].sort_key)
        return cls(tuple(items))

    @classmethod
    def of(cls, sym: BasisSym, coeff: ScalarLike = ONE) -> Element:
        value = QScalar.of(coeff)
        return cls(((sym, value),)) if value else ZERO_ELEMENT

    @classmethod
    def combine(cls, parts: Iterable[tuple[ScalarLike, Element]]) -> Element:
        """Линейная комбинация sum(c * e)."""
        acc: dict[BasisSym, QScalar] = {}
        for coeff, element in parts:
            scalar = QScalar.of(coeff)
            if not scalar:
                continue
            for sym, value in element.terms:
                acc[sym] = acc.get(sym, ZERO) + scalar * value
        return cls.from_map(acc)

    def as_map(self) -> dict[BasisSym, QScalar]:
        return dict(self.terms)

    def coeff(self, sym: BasisSym) -> QScalar:
        for own, value in self.terms:
            if own == sym:
                return value
        return ZERO

    @property
    def symbols(self) -> tuple[BasisSym, ...]:
        return tuple(sym for sym, _ in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_homogeneous(self) -> bool:
        return len({sym.degree for sym, _ in self.terms}) <= 1

    @property
    def degree(self) -> int | None:
        """Степень однородного ненулевого элемента, иначе None."""
        degrees = {sym.degree for sym, _ in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: object) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        return Element.combine(((ONE, self), (ONE, other)))

    def __sub__(self, other: object) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        return Element.combine(((ONE, self), (-ONE, other)))

    def __neg__(self) -> Element:
        return Element(tuple((sym, -value) for sym, value in self.terms))

    def scale(self, factor: ScalarLike) -> Element:
        scalar = QScalar.of(factor)
        if not scalar:
            return ZERO_ELEMENT
        return Element(tuple((sym, value * scalar) for sym, value in self.terms))

    def __mul__(self, factor: object) -> Element:
        if isinstance(factor, Element):
            return NotImplemented
        try:
            return self.scale(factor)  # type: ignore[arg-type]
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for index, (sym, coeff) in enumerate(self.terms):
            body = f"{_coefficient_prefix(coeff)}{sym}"
            if index == 0:
                parts.append(body)
            elif body.startswith("-"):
                parts.append(f" - {body[1:]}")
            else:
                parts.append(f" + {body}")
        return "".join(parts)


ZERO_ELEMENT = Element()


def as_element(value: Element | BasisSym) -> Element:
    if isinstance(value, BasisSym):
        return Element.of(value)
    return value


@dataclass(frozen=True, slots=True)
class Window:
    """Окно степеней [-N, N] для проверок и неизвестных решателя."""

    N: int

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"Окно должно быть N >= 1, получено {self.N}.")

    def degrees(self) -> range:
        return range(-self.N, self.N + 1)

    def __contains__(self, degree: object) -> bool:
        return isinstance(degree, int) and -self.N <= degree <= self.N
