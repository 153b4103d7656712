"""Скалярные 2-коцепи на парах символов: хранение, кососимметричность, сектор степени."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from app.kernel.errors import CocycleError
from app.kernel.qfield import ZERO, QScalar, ScalarLike

from .elements import BasisSym, Element, Family, Window

PairKey = tuple[BasisSym, BasisSym]
ValueRule = Callable[[BasisSym, BasisSym], ScalarLike]


@dataclass(frozen=True, eq=False)
class Cocycle:
    """
    Кососимметричная билинейная форма psi со значениями в Q(q).

    Значения хранятся один раз на каноническую пару (x < y); либо в ``values``,
    либо задаются правилом ``rule``. Все ненулевые значения лежат в секторе
    ``deg x + deg y = sector``.
    """

    sector: int = 0
    values: Mapping[PairKey, QScalar] = field(default_factory=dict)
    rule: ValueRule | None = None
    name: str = "psi"

    @classmethod
    def from_pairs(
        cls,
        entries: Mapping[PairKey, ScalarLike] | Iterable[tuple[PairKey, ScalarLike]],
        sector: int | None = None,
        name: str = "psi",
    ) -> Cocycle:
        """
        Собрать коцепь из явных значений, замыкая их по кососимметричности.

        :raises CocycleError: psi(x, x) != 0, противоречивые psi(x, y) и psi(y, x)
            или значения из разных секторов.
        """
        items = entries.items() if isinstance(entries, Mapping) else entries
        canonical: dict[PairKey, QScalar] = {}
        inferred = sector
        for (x, y), raw in items:
            value = QScalar.of(raw)
            if x == y:
                if value:
                    raise CocycleError(f"{name}({x}, {x}) = {value}: значение на диагонали.")
                continue
            key, signed = ((x, y), value) if x < y else ((y, x), -value)
            if key in canonical and canonical[key] != signed:
                raise CocycleError(
                    f"{name}({x}, {y}) и {name}({y}, {x}) нарушают кососимметричность."
                )
            canonical[key] = signed
            if not value:
                continue
            degree = x.degree + y.degree
            if inferred is None:
                inferred = degree
            elif degree != inferred:
                raise CocycleError(
                    f"{name}({x}, {y}) лежит в секторе {degree}, ожидался {inferred}."
                )
        return cls(
            sector=inferred if inferred is not None else 0,
            values={key: value for key, value in canonical.items() if value},
            name=name,
        )

    @property
    def is_lazy(self) -> bool:
        return self.rule is not None

    def _canonical_value(self, x: BasisSym, y: BasisSym) -> QScalar:
        if self.rule is not None:
            return QScalar.of(self.rule(x, y))
        return self.values.get((x, y), ZERO)

    def value(self, x: BasisSym, y: BasisSym) -> QScalar:
        if x == y or x.degree + y.degree != self.sector:
            return ZERO
        if y < x:
            return -self._canonical_value(y, x)
        return self._canonical_value(x, y)

    def evaluate(self, u: Element, v: Element) -> QScalar:
        """Билинейное продолжение на элементы."""
        total = ZERO
        for x, a in u.terms:
            for y, b in v.terms:
                value = self.value(x, y)
                if value:
                    total = total + a * b * value
        return total

    def restrict(self, pairs: Iterable[PairKey]) -> dict[PairKey, QScalar]:
        """Ненулевые значения на заданных парах."""
        result = {}
        for x, y in pairs:
            value = self.value(x, y)
            if value:
                result[(x, y)] = value
        return result


def zero_cocycle(sector: int = 0) -> Cocycle:
    return Cocycle(sector=sector, name="zero")


def cocycle_from_closed_form(
    fn: Callable[[BasisSym, BasisSym], ScalarLike],
    families: tuple[Family, Family],
    sector: int = 0,
    window: Window | None = None,
    name: str = "psi",
) -> Cocycle:
    """
    Коцепь по замкнутой формуле на канонических парах семейств ``families``.

    Без окна коцепь ленивая (значение считается по запросу на любой паре),
    с окном значения вычисляются заранее для пар из окна.
    """

    def rule(x: BasisSym, y: BasisSym) -> ScalarLike:
        if (x.family, y.family) != families:
            return ZERO
        return fn(x, y)

    lazy = Cocycle(sector=sector, rule=rule, name=name)
    if window is None:
        return lazy
    first, second = families
    pairs = [
        (BasisSym(first, n), BasisSym(second, sector - n))
        for n in window.degrees()
        if sector - n in window
    ]
    pairs = [(x, y) for x, y in pairs if x < y]
    return Cocycle(sector=sector, values=lazy.restrict(pairs), name=name)


def _same_sector(first: Cocycle, second: Cocycle) -> int:
    if first.sector != second.sector:
        raise CocycleError(f"Секторы коцепей различаются: {first.sector} и {second.sector}.")
    return first.sector


def cocycle_add(first: Cocycle, second: Cocycle) -> Cocycle:
    sector = _same_sector(first, second)
    name = f"{first.name}+{second.name}"
    if not first.is_lazy and not second.is_lazy:
        keys = set(first.values) | set(second.values)
        summed = {key: first.values.get(key, ZERO) + second.values.get(key, ZERO) for key in keys}
        return Cocycle(sector=sector, values={k: v for k, v in summed.items() if v}, name=name)
    return Cocycle(
        sector=sector,
        rule=lambda x, y: first._canonical_value(x, y) + second._canonical_value(x, y),
        name=name,
    )


def cocycle_scale(factor: ScalarLike, psi: Cocycle) -> Cocycle:
    scalar = QScalar.of(factor)
    name = f"({scalar})*{psi.name}"
    if not scalar:
        return zero_cocycle(psi.sector)
    if not psi.is_lazy:
        return Cocycle(
            sector=psi.sector,
            values={key: scalar * value for key, value in psi.values.items()},
            name=name,
        )
    return Cocycle(
        sector=psi.sector,
        rule=lambda x, y: scalar * psi._canonical_value(x, y),
        name=name,
    )
