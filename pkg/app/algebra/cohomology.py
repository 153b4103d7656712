"""
Вторая когомология со скалярными коэффициентами.

Условие коцикла связывает только пары одного сектора степени, поэтому Z², B² и H²
считаются посекторно. В систему попадают лишь тождества, все аргументы psi
которых лежат в окне.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from app.kernel.linsolve import ConstraintSystem, Vector, rank_of, reduced_row_echelon
from app.kernel.qfield import ONE, ZERO, QScalar, ScalarLike, ang, qn

from .cocycles import Cocycle, PairKey, cocycle_from_closed_form
from .elements import BasisSym, Family, Window
from .homlie import (
    HomAlgebra,
    alpha,
    basis,
    bracket,
    central_extend,
    hom_jacobi_check,
    multiplicativity_check,
)
from .report import Report, ReportBuilder, Status

logger = logging.getLogger("app.algebra.cohomology")


def cocycle_profile(m: int) -> QScalar:
    """[m-1]_q [m]_q [m+1]_q / ([2]_q [3]_q <m>_q): общий множитель beta и gamma."""
    return qn(m - 1) * qn(m) * qn(m + 1) / (qn(2) * qn(3) * ang(m))


def builtin_beta() -> Cocycle:
    """beta(L_m, L_-m) по замкнутой формуле, сектор 0."""
    return cocycle_from_closed_form(
        lambda x, _y: cocycle_profile(x.degree), (Family.L, Family.L), 0, name="beta"
    )


def builtin_gamma() -> Cocycle:
    """gamma(L_m, M_-m) по той же формуле; gamma(L, L) = gamma(M, M) = 0."""
    return cocycle_from_closed_form(
        lambda x, _y: cocycle_profile(x.degree), (Family.L, Family.M), 0, name="gamma"
    )


def window_pairs(algebra: HomAlgebra, sector: int, window: Window) -> list[PairKey]:
    """Канонические пары (x < y) символов окна с deg x + deg y = sector."""
    symbols = basis(algebra, window)
    return [(x, y) for x, y in combinations(symbols, 2) if x.degree + y.degree == sector]


def _sector_triples(algebra: HomAlgebra, sector: int, window: Window):
    symbols = basis(algebra, window)
    for x, y, z in combinations(symbols, 3):
        if x.degree + y.degree + z.degree == sector:
            yield x, y, z


def cocycle_identity(
    algebra: HomAlgebra, psi: Cocycle, x: BasisSym, y: BasisSym, z: BasisSym
) -> QScalar:
    """psi(alpha x, [y, z]) + psi(alpha y, [z, x]) + psi(alpha z, [x, y])."""
    total = ZERO
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        total = total + psi.evaluate(alpha(algebra, a), bracket(algebra, b, c))
    return total


def verify_cocycle(algebra: HomAlgebra, psi: Cocycle, window: Window) -> Report:
    """Условие 2-коцикла на всех тройках окна сектора ``psi.sector``."""
    builder = ReportBuilder(
        f"cocycle_{psi.name}", algebra=algebra.name, sector=psi.sector, window=window.N
    )
    for x, y, z in _sector_triples(algebra, psi.sector, window):
        builder.tick()
        residual = cocycle_identity(algebra, psi, x, y, z)
        if residual:
            builder.violation(residual, triple=(x, y, z))
    logger.info(
        "Коцикл %s на %s, окно %d: %d троек, %d нарушений",
        psi.name,
        algebra.name,
        window.N,
        builder.checked,
        builder.violations,
    )
    return builder.finish()


def coboundary(
    f_values: Mapping[BasisSym, ScalarLike],
    algebra: HomAlgebra,
    sector: int,
    window: Window,
) -> Cocycle:
    """
    Кограница psi_f(x, y) = f([x, y]) на парах окна.

    Вклад дают только значения f на символах степени ``sector``.
    """
    functional = {sym: QScalar.of(value) for sym, value in f_values.items() if sym.degree == sector}
    values: dict[PairKey, QScalar] = {}
    for x, y in window_pairs(algebra, sector, window):
        product = bracket(algebra, x, y)
        total = ZERO
        for sym, coeff in product.terms:
            weight = functional.get(sym)
            if weight:
                total = total + coeff * weight
        if total:
            values[(x, y)] = total
    return Cocycle(sector=sector, values=values, name="delta_f")


def _sector_functionals(algebra: HomAlgebra, sector: int) -> list[BasisSym]:
    symbols = [
        BasisSym(family, sector)
        for family in (Family.L, Family.M)
        if family in algebra.families
    ]
    if algebra.has_center and sector == 0:
        symbols.append(BasisSym(Family.C, 0))
    return symbols


def cocycle_vector(psi: Cocycle, unknowns: Sequence[PairKey]) -> Vector:
    return tuple(psi.value(x, y) for x, y in unknowns)


@dataclass(slots=True)
class SolveResult:
    """Z², B² и H² одного сектора на окне."""

    algebra: str
    sector: int
    window: Window
    unknowns: list[PairKey]
    rank: int
    nullspace_basis: list[Vector] = field(default_factory=list)
    coboundary_basis: list[Vector] = field(default_factory=list)
    representatives: list[Vector] = field(default_factory=list)

    @property
    def dims(self) -> dict[str, int]:
        z2 = len(self.nullspace_basis)
        b2 = len(self.coboundary_basis)
        return {"z2": z2, "b2": b2, "h2": z2 - b2}

    def as_cocycle(self, vector: Vector, name: str = "psi") -> Cocycle:
        values = {pair: value for pair, value in zip(self.unknowns, vector) if value}
        return Cocycle(sector=self.sector, values=values, name=name)

    def render_vector(self, vector: Vector) -> str:
        parts = [f"({x},{y}): {value}" for (x, y), value in zip(self.unknowns, vector) if value]
        return "; ".join(parts) if parts else "0"


def _reduce_modulo(vector: Vector, echelon: list[Vector]) -> Vector:
    result = list(vector)
    for row in echelon:
        pivot = next(i for i, value in enumerate(row) if value)
        factor = result[pivot]
        if factor:
            result = [a - factor * b for a, b in zip(result, row)]
    return tuple(result)


def span_rank_modulo(vectors: Sequence[Vector], subspace: Sequence[Vector]) -> int:
    """Ранг набора векторов по модулю подпространства."""
    return rank_of([*subspace, *vectors]) - rank_of(subspace)


def solve_h2(algebra: HomAlgebra, sector: int, window: Window) -> SolveResult:
    """
    Z², B² и представители H² в секторе ``sector``.

    Неизвестные: значения psi на канонических парах окна; строки: тождества
    коцикла, все аргументы psi которых остаются в окне. B² натянуто на кограницы
    двойственного базиса символов степени ``sector``.
    """
    unknowns = window_pairs(algebra, sector, window)
    index = set(unknowns)
    system = ConstraintSystem(unknowns)
    dropped = 0
    for x, y, z in _sector_triples(algebra, sector, window):
        row: dict[PairKey, QScalar] = {}
        closed = True
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for s, u in alpha(algebra, a).terms:
                for t, v in bracket(algebra, b, c).terms:
                    if s == t:
                        continue
                    key, sign = ((s, t), ONE) if s < t else ((t, s), -ONE)
                    if key not in index:
                        closed = False
                        break
                    row[key] = row.get(key, ZERO) + sign * u * v
                if not closed:
                    break
            if not closed:
                break
        if closed:
            system.add_row(row)
        else:
            dropped += 1
    nullspace = system.solve()
    logger.debug(
        "H² %s сектор %d окно %d: %d неизвестных, %d строк, %d тождеств вне окна",
        algebra.name,
        sector,
        window.N,
        len(unknowns),
        len(system.rows),
        dropped,
    )

    coboundaries = [
        cocycle_vector(coboundary({sym: ONE}, algebra, sector, window), unknowns)
        for sym in _sector_functionals(algebra, sector)
    ]
    b2 = reduced_row_echelon(coboundaries)

    complement: list[Vector] = []
    spanned = list(b2)
    for vector in nullspace.basis:
        if rank_of([*spanned, vector]) > len(spanned):
            spanned = reduced_row_echelon([*spanned, vector])
            complement.append(_reduce_modulo(vector, b2))
    representatives = reduced_row_echelon(complement)

    return SolveResult(
        algebra=algebra.name,
        sector=sector,
        window=window,
        unknowns=unknowns,
        rank=nullspace.rank,
        nullspace_basis=nullspace.basis,
        coboundary_basis=b2,
        representatives=representatives,
    )


def h2_report(algebra: HomAlgebra, sector: int, window: Window) -> Report:
    result = solve_h2(algebra, sector, window)
    builder = ReportBuilder("h2", algebra=algebra.name, sector=sector, window=window.N)
    for key, value in result.dims.items():
        builder.dim(key, value)
    builder.dim("unknowns", len(result.unknowns))
    builder.dim("rank", result.rank)
    for number, vector in enumerate(result.representatives, start=1):
        builder.note(f"rep{number}: {result.render_vector(vector)}")
    return builder.finish(Status.INFO)


def h2_span_check(algebra: HomAlgebra, window: Window, cocycles: Sequence[Cocycle]) -> Report:
    """
    Сравнить представителей H² сектора 0 с заданными коциклами по модулю B².

    PASS, если ранг {представители, коциклы} по модулю B² равен числу представителей
    и самих коциклов по модулю B² столько же.
    """
    result = solve_h2(algebra, 0, window)
    vectors = [cocycle_vector(psi, result.unknowns) for psi in cocycles]
    names = ", ".join(psi.name for psi in cocycles)
    builder = ReportBuilder("h2_span", algebra=algebra.name, window=window.N, cocycles=names)
    joint = span_rank_modulo([*result.representatives, *vectors], result.coboundary_basis)
    own = span_rank_modulo(vectors, result.coboundary_basis)
    builder.dim("h2", result.dims["h2"])
    builder.dim("joint_rank", joint)
    builder.dim("cocycle_rank", own)
    builder.tick()
    if not (joint == own == result.dims["h2"]):
        builder.violation(f"joint={joint}, cocycles={own}, h2={result.dims['h2']}", pair=(names,))
    return builder.finish()


def alpha_invariance_check(psi: Cocycle, algebra: HomAlgebra, window: Window) -> Report:
    """psi(alpha x, alpha y) = psi(x, y) на парах окна сектора psi."""
    builder = ReportBuilder(f"alpha_invariance_{psi.name}", algebra=algebra.name, window=window.N)
    for x, y in window_pairs(algebra, psi.sector, window):
        builder.tick()
        residual = psi.evaluate(alpha(algebra, x), alpha(algebra, y)) - psi.value(x, y)
        if residual:
            builder.violation(residual, pair=(x, y))
    return builder.finish()


def is_multiplicative_extension(algebra: HomAlgebra, psi: Cocycle, window: Window) -> Report:
    """
    Мультипликативность центрального расширения.

    Прямая проверка расширения сравнивается с условием «alpha мультипликативно
    и psi(alpha x, alpha y) = psi(x, y)». PASS, если они согласуются.
    """
    base = multiplicativity_check(algebra, window)
    invariant = alpha_invariance_check(psi, algebra, window)
    direct = multiplicativity_check(central_extend(algebra, psi), window)
    predicted = base.status is Status.PASS and invariant.status is Status.PASS
    actual = direct.status is Status.PASS
    builder = ReportBuilder(
        "multiplicative_extension", algebra=algebra.name, cocycle=psi.name, window=window.N
    )
    builder.dim("base_multiplicative", int(base.status is Status.PASS))
    builder.dim("alpha_invariant", int(invariant.status is Status.PASS))
    builder.dim("extension_multiplicative", int(actual))
    builder.tick()
    if predicted != actual:
        witness = direct.counterexamples[0] if direct.counterexamples else None
        builder.violation(
            witness.residual if witness else "расширение мультипликативно",
            pair=witness.pair if witness else None,
        )
    return builder.finish()


def extension_equivalence_check(algebra: HomAlgebra, psi: Cocycle, window: Window) -> Report:
    """
    Расширение является Hom-алгеброй Ли ровно тогда, когда psi коцикл.

    PASS, если ``hom_jacobi_check`` расширения и ``verify_cocycle`` дают одинаковый итог.
    Контрпримеры берутся из проверки Hom-Якоби расширения.
    """
    jacobi = hom_jacobi_check(central_extend(algebra, psi), window)
    cocycle = verify_cocycle(algebra, psi, window)
    builder = ReportBuilder(
        f"extension_{psi.name}", algebra=algebra.name, cocycle=psi.name, window=window.N
    )
    builder.dim("hom_jacobi", int(jacobi.status is Status.PASS))
    builder.dim("cocycle", int(cocycle.status is Status.PASS))
    for record in jacobi.counterexamples:
        builder.note(f"{', '.join(record.triple or ())}: {record.residual}")
    builder.tick()
    if jacobi.status is not cocycle.status:
        builder.violation("Hom-Якоби расширения и условие коцикла расходятся")
    return builder.finish()

