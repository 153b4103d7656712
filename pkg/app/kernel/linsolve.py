"""
Разреженные линейные системы над Q(q).

Строки приводятся к многочленам Лорана (домножением на НОК знаменателей) и
исключаются без дробей: r_i <- p*r_i - a*r_p с выбором опорного элемента по
Марковицу. Свободные неизвестные параметризуют ядро; итоговый базис ядра
приводится к приведённой ступенчатой форме, поэтому он не зависит от порядка строк.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import UnknownSymbolError
from .qfield import (
    ONE,
    ONE_POLY,
    ZERO,
    LaurentPoly,
    QScalar,
    ScalarLike,
    poly_exquo,
    poly_gcd,
    poly_lcm,
)

logger = logging.getLogger("app.kernel.linsolve")

Vector = tuple[QScalar, ...]


def _primitive(row: dict[int, LaurentPoly]) -> dict[int, LaurentPoly]:
    """Сократить строку на общий многочленный множитель и степень q."""
    if not row:
        return row
    low = min(poly.valuation for poly in row.values())
    content = poly_gcd(row.values())
    if content == ONE_POLY:
        return {col: poly.shift(-low) for col, poly in row.items()} if low else row
    return {col: poly_exquo(poly, content).shift(-low) for col, poly in row.items()}


def _polynomial_row(row: Mapping[int, QScalar]) -> dict[int, LaurentPoly]:
    common = ONE_POLY
    for value in row.values():
        common = poly_lcm(common, value.den)
    return _primitive(
        {col: value.num * poly_exquo(common, value.den) for col, value in row.items()}
    )


def _combine(
    target: dict[int, LaurentPoly],
    pivot_row: dict[int, LaurentPoly],
    col: int,
) -> dict[int, LaurentPoly]:
    pivot = pivot_row[col]
    factor = target[col]
    result: dict[int, LaurentPoly] = {}
    for j in target.keys() | pivot_row.keys():
        if j == col:
            continue
        value = pivot * target.get(j, LaurentPoly()) - factor * pivot_row.get(j, LaurentPoly())
        if value:
            result[j] = value
    return _primitive(result)


def _select_pivot(active: list[dict[int, LaurentPoly]]) -> tuple[int, int]:
    counts: dict[int, int] = {}
    for row in active:
        for col in row:
            counts[col] = counts.get(col, 0) + 1
    best: tuple[int, int, int] | None = None
    for row_index, row in enumerate(active):
        width = len(row) - 1
        for col in row:
            key = (width * (counts[col] - 1), col, row_index)
            if best is None or key < best:
                best = key
    assert best is not None
    return best[2], best[1]


def reduced_row_echelon(vectors: Iterable[Sequence[ScalarLike]]) -> list[Vector]:
    """
    Приведённая ступенчатая форма набора векторов (нулевые строки отброшены).

    :param vectors: векторы одной длины.
    :return: строки RREF по возрастанию столбца ведущего элемента.
    """
    rows = [[QScalar.of(value) for value in vector] for vector in vectors]
    if not rows:
        return []
    width = len(rows[0])
    pivot_row = 0
    for col in range(width):
        found = next((i for i in range(pivot_row, len(rows)) if rows[i][col]), None)
        if found is None:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        lead = rows[pivot_row][col]
        if lead != ONE:
            rows[pivot_row] = [value / lead for value in rows[pivot_row]]
        for i, row in enumerate(rows):
            if i != pivot_row and row[col]:
                factor = row[col]
                rows[i] = [a - factor * b for a, b in zip(row, rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return [tuple(row) for row in rows[:pivot_row]]


def rank_of(vectors: Iterable[Sequence[ScalarLike]]) -> int:
    return len(reduced_row_echelon(vectors))


@dataclass(slots=True)
class Nullspace:
    """Ранг системы и канонический базис её ядра."""

    unknowns: list[Hashable]
    rank: int
    basis: list[Vector] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def as_maps(self) -> list[dict[Hashable, QScalar]]:
        """Базис в виде словарей неизвестная -> значение (только ненулевые)."""
        return [
            {name: value for name, value in zip(self.unknowns, vector) if value}
            for vector in self.basis
        ]


class ConstraintSystem:
    """Однородная система линейных уравнений над Q(q) с именованными неизвестными."""

    def __init__(self, unknowns: Sequence[Hashable]) -> None:
        self.unknowns: list[Hashable] = list(unknowns)
        self._index = {name: i for i, name in enumerate(self.unknowns)}
        self.rows: list[dict[int, QScalar]] = []

    def unknown_index(self, name: Hashable) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownSymbolError(f"Неизвестная {name!r} не входит в систему.") from None

    def __contains__(self, name: Hashable) -> bool:
        return name in self._index

    def add_row(self, coefficients: Mapping[Hashable, ScalarLike]) -> bool:
        """
        Добавить уравнение sum(coeff * x) = 0.

        :return: False, если строка оказалась нулевой и была пропущена.
        """
        row: dict[int, QScalar] = {}
        for name, coeff in coefficients.items():
            col = self.unknown_index(name)
            row[col] = row.get(col, ZERO) + QScalar.of(coeff)
        row = {col: value for col, value in row.items() if value}
        if not row:
            return False
        self.rows.append(row)
        return True

    def solve(self) -> Nullspace:
        active = [_polynomial_row(row) for row in self.rows]
        pivots: list[tuple[int, dict[int, LaurentPoly]]] = []
        while True:
            active = [row for row in active if row]
            if not active:
                break
            row_index, col = _select_pivot(active)
            pivot_row = active.pop(row_index)
            active = [_combine(row, pivot_row, col) if col in row else row for row in active]
            pivots.append((col, pivot_row))

        pivot_cols = {col for col, _ in pivots}
        free_cols = [col for col in range(len(self.unknowns)) if col not in pivot_cols]
        vectors: list[list[QScalar]] = []
        for free in free_cols:
            values: dict[int, QScalar] = {free: ONE}
            for col, row in reversed(pivots):
                total = ZERO
                for j, coeff in row.items():
                    if j != col and j in values:
                        total = total + QScalar(coeff) * values[j]
                values[col] = -total / QScalar(row[col])
            vectors.append([values.get(i, ZERO) for i in range(len(self.unknowns))])

        basis = reduced_row_echelon(vectors)
        logger.debug(
            "Система: %d неизвестных, %d строк, ранг %d, размерность ядра %d",
            len(self.unknowns),
            len(self.rows),
            len(pivots),
            len(basis),
        )
        return Nullspace(unknowns=list(self.unknowns), rank=len(pivots), basis=basis)


def solve_system(
    unknowns: Sequence[Hashable], rows: Iterable[Mapping[Hashable, ScalarLike]]
) -> Nullspace:
    system = ConstraintSystem(unknowns)
    for row in rows:
        system.add_row(row)
    return system.solve()
