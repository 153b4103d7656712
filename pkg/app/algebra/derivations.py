"""
alpha^k-дифференцирования однородной степени s.

Неизвестные: коэффициенты таблицы D(L_n) = a_n L_{n+s} + b_n M_{n+s},
D(M_n) = c_n L_{n+s} + d_n M_{n+s}. Тождество Лейбница собирается для любой
алгебры, заданной таблицами; условие D∘alpha = alpha∘D задаётся отдельным блоком строк.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Mapping

from app.kernel.errors import LemmaArgumentError
from app.kernel.linsolve import ConstraintSystem, Vector, rank_of, solve_system
from app.kernel.qfield import ONE, ZERO, QScalar, ScalarLike, angle, qn

from .elements import BasisSym, Element, Family, L, M, Window, as_element
from .homlie import HomAlgebra, alpha, alpha_power, basis, bracket, make_wq
from .report import Report, ReportBuilder, Status

logger = logging.getLogger("app.algebra.derivations")

LETTERS = {
    (Family.L, Family.L): "a",
    (Family.L, Family.M): "b",
    (Family.M, Family.L): "c",
    (Family.M, Family.M): "d",
}
_TARGETS = {letter: pair for pair, letter in LETTERS.items()}

DerUnknown = tuple[str, int]
LinearForm = dict[DerUnknown, QScalar]


def degree_order(n: int) -> tuple[int, bool]:
    """Порядок степеней 0, 1, -1, 2, -2, ..."""
    return abs(n), n < 0


def derivation_unknowns(algebra: HomAlgebra, s: int, window: Window) -> list[DerUnknown]:
    """Неизвестные таблицы в каноническом порядке: буква, затем степень 0, 1, -1, ..."""
    letters = [
        letter
        for (source, target), letter in LETTERS.items()
        if source in algebra.families and target in algebra.families
    ]
    degrees = sorted((n for n in window.degrees() if n + s in window), key=degree_order)
    return [(letter, n) for letter in sorted(letters) for n in degrees]


@dataclass(frozen=True, slots=True)
class DerivationTable:
    """Однородное линейное отображение степени s, заданное коэффициентами a, b, c, d."""

    k: int
    s: int
    entries: Mapping[DerUnknown, QScalar] = field(default_factory=dict)

    @classmethod
    def from_vector(
        cls, k: int, s: int, unknowns: Iterable[DerUnknown], vector: Vector
    ) -> DerivationTable:
        return cls(k, s, {name: value for name, value in zip(unknowns, vector) if value})

    @classmethod
    def from_rule(
        cls,
        k: int,
        s: int,
        window: Window,
        rule: Callable[[str, int], ScalarLike],
    ) -> DerivationTable:
        """Таблица по формуле rule(буква, n) на степенях окна."""
        entries: dict[DerUnknown, QScalar] = {}
        for letter in "abcd":
            for n in window.degrees():
                if n + s not in window:
                    continue
                value = QScalar.of(rule(letter, n))
                if value:
                    entries[(letter, n)] = value
        return cls(k, s, entries)

    @classmethod
    def from_map(
        cls, k: int, s: int, mapping: Mapping[BasisSym, Element]
    ) -> DerivationTable:
        """
        Прочитать таблицу из отображения символ -> элемент.

        :raises ValueError: образ содержит символ не той степени или центральный символ.
        """
        entries: dict[DerUnknown, QScalar] = {}
        for source, image in mapping.items():
            for target, value in image.terms:
                letter = LETTERS.get((source.family, target.family))
                if letter is None or target.degree != source.degree + s:
                    raise ValueError(f"{source} -> {target}: отображение не степени {s}.")
                entries[(letter, source.degree)] = value
        return cls(k, s, entries)

    def entry(self, letter: str, n: int) -> QScalar:
        return self.entries.get((letter, n), ZERO)

    def apply(self, sym: BasisSym) -> Element:
        terms = {}
        for letter, (source, target) in _TARGETS.items():
            if source is sym.family:
                value = self.entry(letter, sym.degree)
                if value:
                    terms[BasisSym(target, sym.degree + self.s)] = value
        return Element.from_map(terms)

    def __call__(self, x: Element | BasisSym) -> Element:
        return Element.combine((coeff, self.apply(sym)) for sym, coeff in as_element(x).terms)

    def as_map(self, window: Window) -> dict[BasisSym, Element]:
        return {
            BasisSym(family, n): self.apply(BasisSym(family, n))
            for family in (Family.L, Family.M)
            for n in window.degrees()
        }

    def vector(self, unknowns: Iterable[DerUnknown]) -> Vector:
        return tuple(self.entries.get(name, ZERO) for name in unknowns)

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        ordered = sorted(
            self.entries.items(), key=lambda item: (item[0][0], degree_order(item[0][1]))
        )
        return ", ".join(f"{letter}[{n}]={value}" for (letter, n), value in ordered)


def _image_form(
    unknown_names: set[DerUnknown], sym: BasisSym, s: int
) -> dict[BasisSym, LinearForm]:
    """D(sym) как элемент с линейными формами от неизвестных вместо коэффициентов."""
    result: dict[BasisSym, LinearForm] = {}
    for letter, (source, target) in _TARGETS.items():
        if source is sym.family and (letter, sym.degree) in unknown_names:
            result[BasisSym(target, sym.degree + s)] = {(letter, sym.degree): ONE}
    return result


def _accumulate(
    rows: dict[BasisSym, LinearForm], element: Element, form: LinearForm, sign: QScalar
) -> None:
    for target, coeff in element.terms:
        row = rows.setdefault(target, {})
        for name, value in form.items():
            row[name] = row.get(name, ZERO) + sign * coeff * value


def _leibniz_pairs(algebra: HomAlgebra, s: int, window: Window):
    for x, y in combinations(basis(algebra, window), 2):
        n, m = x.degree, y.degree
        if all(d in window for d in (n + m, n + s, m + s, n + m + s)):
            yield x, y


def assemble_leibniz(algebra: HomAlgebra, k: int, s: int, window: Window) -> ConstraintSystem:
    """
    Строки D([x, y]) - [alpha^k x, D y] - [D x, alpha^k y] = 0.

    Берутся все пары различных символов окна (LL, LM, MM), у которых степени
    n + m, n + s, m + s, n + m + s остаются в окне; строка на каждый целевой символ.
    """
    unknowns = derivation_unknowns(algebra, s, window)
    names = set(unknowns)
    system = ConstraintSystem(unknowns)
    twisted: dict[BasisSym, Element] = {}

    def twist(sym: BasisSym) -> Element:
        if sym not in twisted:
            twisted[sym] = alpha_power(algebra, sym, k)
        return twisted[sym]

    for x, y in _leibniz_pairs(algebra, s, window):
        rows: dict[BasisSym, LinearForm] = {}
        for target, coeff in bracket(algebra, x, y).terms:
            for image, form in _image_form(names, target, s).items():
                _accumulate(rows, Element.of(image, coeff), form, ONE)
        for first, second, sign in ((x, y, -ONE), (y, x, ONE)):
            # -[alpha^k x, D y] и +[alpha^k y, D x]
            for image, form in _image_form(names, second, s).items():
                _accumulate(rows, bracket(algebra, twist(first), image), form, sign)
        for row in rows.values():
            system.add_row(row)
    logger.debug(
        "Лейбниц k=%d s=%d окно %d: %d неизвестных, %d строк",
        k,
        s,
        window.N,
        len(unknowns),
        len(system.rows),
    )
    return system


def assemble_equivariance(algebra: HomAlgebra, k: int, s: int, window: Window) -> ConstraintSystem:
    """Строки D(alpha x) - alpha(D x) = 0; тождественно нулевые строки отбрасываются."""
    unknowns = derivation_unknowns(algebra, s, window)
    names = set(unknowns)
    system = ConstraintSystem(unknowns)
    for x in basis(algebra, window):
        rows: dict[BasisSym, LinearForm] = {}
        for sym, coeff in alpha(algebra, x).terms:
            for image, form in _image_form(names, sym, s).items():
                _accumulate(rows, Element.of(image, coeff), form, ONE)
        for image, form in _image_form(names, x, s).items():
            _accumulate(rows, alpha(algebra, image), form, -ONE)
        for row in rows.values():
            system.add_row(row)
    return system


@dataclass(slots=True)
class DerivationSpace:
    k: int
    s: int
    window: Window
    equivariance_enforced: bool
    unknowns: list[DerUnknown]
    rank: int
    basis: list[DerivationTable] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)


def solve_derivations(
    algebra: HomAlgebra,
    k: int,
    s: int,
    window: Window,
    enforce_equivariance: bool = False,
) -> DerivationSpace:
    """
    Пространство alpha^k-дифференцирований степени s на окне.

    Базис: приведённая ступенчатая форма ядра в порядке неизвестных
    ``derivation_unknowns``: первый ненулевой коэффициент каждого вектора равен 1.
    """
    if k < 0:
        raise ValueError("k должно быть неотрицательным.")
    system = assemble_leibniz(algebra, k, s, window)
    if enforce_equivariance:
        for row in assemble_equivariance(algebra, k, s, window).rows:
            system.rows.append(row)
    nullspace = system.solve()
    tables = [
        DerivationTable.from_vector(k, s, system.unknowns, vector) for vector in nullspace.basis
    ]
    logger.info(
        "Дифференцирования k=%d s=%d окно %d (эквивариантность %s): размерность %d",
        k,
        s,
        window.N,
        "да" if enforce_equivariance else "нет",
        len(tables),
    )
    return DerivationSpace(
        k=k,
        s=s,
        window=window,
        equivariance_enforced=enforce_equivariance,
        unknowns=list(system.unknowns),
        rank=nullspace.rank,
        basis=tables,
    )


def derivation_report(
    algebra: HomAlgebra, k: int, s: int, window: Window, enforce_equivariance: bool
) -> Report:
    space = solve_derivations(algebra, k, s, window, enforce_equivariance)
    builder = ReportBuilder(
        "derivations",
        algebra=algebra.name,
        k=k,
        degree=s,
        window=window.N,
        equivariance="on" if enforce_equivariance else "off",
    )
    builder.dim("dim", space.dim)
    builder.dim("unknowns", len(space.unknowns))
    builder.dim("rank", space.rank)
    for number, table in enumerate(space.basis, start=1):
        builder.note(f"D{number}: {table}")
    return builder.finish(Status.INFO)


def leibniz_residual(
    algebra: HomAlgebra, k: int, derivation: DerivationTable, x: BasisSym, y: BasisSym
) -> Element:
    """D([x, y]) - [alpha^k x, D y] - [D x, alpha^k y]."""
    return (
        derivation(bracket(algebra, x, y))
        - bracket(algebra, alpha_power(algebra, x, k), derivation(y))
        - bracket(algebra, derivation(x), alpha_power(algebra, y, k))
    )


def verify_derivation(
    algebra: HomAlgebra, k: int, derivation: DerivationTable, window: Window
) -> Report:
    """Подставить таблицу в тождество Лейбница для всех пар окна."""
    builder = ReportBuilder(
        "verify_derivation", algebra=algebra.name, k=k, degree=derivation.s, window=window.N
    )
    for x, y in _leibniz_pairs(algebra, derivation.s, window):
        builder.tick()
        residual = leibniz_residual(algebra, k, derivation, x, y)
        if residual:
            builder.violation(residual, pair=(x, y))
    return builder.finish()


def inner_map(
    algebra: HomAlgebra, k: int, v: Element | BasisSym, window: Window
) -> DerivationTable:
    """
    Отображение x -> [alpha^k x, v] присоединённого модуля на символах окна.

    :raises ValueError: v неоднородный.
    """
    element = as_element(v)
    if not element.is_homogeneous:
        raise ValueError(f"Элемент {element} неоднороден.")
    s = element.degree or 0
    mapping = {
        sym: bracket(algebra, alpha_power(algebra, sym, k), element)
        for sym in basis(algebra, window)
        if sym.family is not Family.C
    }
    return DerivationTable.from_map(k, s, mapping)


def commutator_table(
    first: DerivationTable, second: DerivationTable, window: Window
) -> DerivationTable:
    """[D1, D2] = D1∘D2 - D2∘D1 на символах окна, у которых все промежуточные степени в окне."""
    s = first.s + second.s
    mapping: dict[BasisSym, Element] = {}
    for family in (Family.L, Family.M):
        for n in window.degrees():
            if not all(d in window for d in (n + first.s, n + second.s, n + s)):
                continue
            sym = BasisSym(family, n)
            mapping[sym] = first(second.apply(sym)) - second(first.apply(sym))
    return DerivationTable.from_map(first.k, s, mapping)


def decompose(mapping: Mapping[BasisSym, Element], k: int = 0) -> dict[int, DerivationTable]:
    """Разложить линейное отображение с конечным носителем на однородные компоненты по степени."""
    parts: dict[int, dict[BasisSym, dict[BasisSym, QScalar]]] = {}
    for source, image in mapping.items():
        for target, value in image.terms:
            shift = target.degree - source.degree
            parts.setdefault(shift, {}).setdefault(source, {})[target] = value
    return {
        shift: DerivationTable.from_map(
            k, shift, {source: Element.from_map(terms) for source, terms in images.items()}
        )
        for shift, images in sorted(parts.items())
    }


def ideal_module_check(algebra: HomAlgebra, window: Window) -> Report:
    """span{M_n} является идеалом: [x, M_m] лежит в span{M} для всех символов окна."""
    builder = ReportBuilder("ideal_m", algebra=algebra.name, window=window.N)
    symbols = basis(algebra, window)
    for x in symbols:
        for m in window.degrees():
            builder.tick()
            product = bracket(algebra, x, M(m))
            stray = Element.from_map(
                {sym: value for sym, value in product.terms if sym.family is not Family.M}
            )
            if stray:
                builder.violation(stray, pair=(x, M(m)))
    return builder.finish()


def closed_form_table(
    window: Window, a: ScalarLike, b: ScalarLike, d: ScalarLike
) -> DerivationTable:
    """D(L_n) = n(a L_n + b M_n), D(M_n) = (n a + d) M_n."""
    a_, b_, d_ = QScalar.of(a), QScalar.of(b), QScalar.of(d)

    def rule(letter: str, n: int) -> QScalar:
        if letter == "a":
            return a_ * n
        if letter == "b":
            return b_ * n
        if letter == "d":
            return a_ * n + d_
        return ZERO

    return DerivationTable.from_rule(0, 0, window, rule)


# --- леммы о модулях W_q^n над W_q^0 = span{L_0, M_0} ---


def _graded_piece(n: int) -> list[BasisSym]:
    return [L(n), M(n)]


def lemma_h1_w0_check(n: int, enforce_equivariance: bool = False) -> Report:
    """
    H^1(W_q^0, W_q^n) = 0 для n != 0.

    Решает систему на D: W_q^0 -> W_q^n с D([X, Y]) = X·D(Y) - Y·D(X), строит
    внутренние отображения X -> [X, v] и сравнивает. Для каждого базисного D
    проверяется, что v = D(L_0)/[n]_q восстанавливает D.

    :raises LemmaArgumentError: n = 0.
    """
    if n == 0:
        raise LemmaArgumentError("Лемма о H^1 требует n != 0.")
    algebra = make_wq()
    sources = _graded_piece(0)
    targets = _graded_piece(n)
    unknowns = [(src, tgt) for src in sources for tgt in targets]
    system = ConstraintSystem(unknowns)

    def image_forms(src: BasisSym) -> list[tuple[BasisSym, LinearForm]]:
        return [(tgt, {(src, tgt): ONE}) for tgt in targets]

    for x, y in combinations(sources, 2):
        rows: dict[BasisSym, LinearForm] = {}
        for sym, coeff in bracket(algebra, x, y).terms:
            for tgt, form in image_forms(sym):
                _accumulate(rows, Element.of(tgt, coeff), form, ONE)
        for tgt, form in image_forms(y):
            _accumulate(rows, bracket(algebra, x, tgt), form, -ONE)
        for tgt, form in image_forms(x):
            _accumulate(rows, bracket(algebra, y, tgt), form, ONE)
        for row in rows.values():
            system.add_row(row)
    if enforce_equivariance:
        for src in sources:
            for tgt, form in image_forms(src):
                gap = QScalar.of(angle(0) - angle(n))
                system.add_row({name: gap * value for name, value in form.items()})

    derivations = system.solve()
    inner = [
        tuple(bracket(algebra, src, v).coeff(tgt) for src, tgt in unknowns) for v in targets
    ]
    der_rank = derivations.dimension
    inner_rank = rank_of(inner)
    combined = rank_of([*derivations.basis, *inner])
    builder = ReportBuilder(
        "lemma_h1_w0", n=n, equivariance="on" if enforce_equivariance else "off"
    )
    builder.dim("der", der_rank)
    builder.dim("inner", inner_rank)
    builder.dim("quotient", combined - inner_rank)

    for vector in derivations.basis:
        builder.tick()
        values = dict(zip(unknowns, vector))
        image_l0 = Element.from_map({tgt: values[(L(0), tgt)] for tgt in targets})
        v = image_l0.scale(ONE / qn(n))
        rebuilt = {
            (src, tgt): bracket(algebra, src, v).coeff(tgt) for src, tgt in unknowns
        }
        if any(rebuilt[name] != values[name] for name in unknowns):
            residual = Element.from_map(
                {tgt: values[(M(0), tgt)] - rebuilt[(M(0), tgt)] for tgt in targets}
            )
            builder.violation(residual, pair=(M(0), v), note="v = D(L_0)/[n] не восстанавливает D")
    if combined - inner_rank:
        builder.violation(f"quotient={combined - inner_rank}", pair=(L(0), L(n)))
    return builder.finish()


def lemma_hom_vanish_check(m: int, n: int) -> Report:
    """
    Hom_{W_q^0}(W_q^m, W_q^n) = 0 при m != n.

    Полная система (эквивариантность плюс f(X·v) = X·f(v)) решается вместе с
    системой из одной эквивариантности. Если последняя имеет решения (n = -m,
    <m> = <n>), рассуждение через alpha не работает: статус DISCREPANT.

    :raises LemmaArgumentError: m = n.
    """
    if m == n:
        raise LemmaArgumentError("Лемма о гомоморфизмах требует m != n.")
    algebra = make_wq()
    sources = _graded_piece(m)
    targets = _graded_piece(n)
    unknowns = [(src, tgt) for src in sources for tgt in targets]
    gap = QScalar.of(angle(m) - angle(n))
    equivariance_rows = [{(src, tgt): gap} for src, tgt in unknowns]

    module_rows: list[LinearForm] = []
    for x in _graded_piece(0):
        for v in sources:
            rows: dict[BasisSym, LinearForm] = {}
            for sym, coeff in bracket(algebra, x, v).terms:
                for tgt in targets:
                    _accumulate(rows, Element.of(tgt, coeff), {(sym, tgt): ONE}, ONE)
            for tgt in targets:
                _accumulate(rows, bracket(algebra, x, tgt), {(v, tgt): ONE}, -ONE)
            module_rows.extend(rows.values())

    full = solve_system(unknowns, [*equivariance_rows, *module_rows])
    alpha_only = solve_system(unknowns, equivariance_rows)
    builder = ReportBuilder("lemma_hom_vanish", m=m, n=n)
    builder.dim("full", full.dimension)
    builder.dim("equivariance_only", alpha_only.dimension)
    builder.tick()
    if alpha_only.dimension:
        builder.violation(
            f"<{m}> - <{n}> = {gap}",
            pair=(L(m), L(n)),
            note="строка эквивариантности обращается в ноль",
        )
        builder.note(f"Полная система даёт размерность {full.dimension}.")
        return builder.finish(Status.DISCREPANT)
    if full.dimension:
        builder.violation(f"dim={full.dimension}", pair=(L(m), L(n)))
    return builder.finish()


def _inner_candidates(
    algebra: HomAlgebra, window: Window
) -> list[tuple[BasisSym, DerivationTable]]:
    return [(v, inner_map(algebra, 0, v, window)) for v in (L(0), M(0))]


def h1_report(window: Window) -> Report:
    """
    Der_0 и кандидаты H^1 для W_q при двух прочтениях Inn.

    Прочтение A: внутренние отображения учитываются, только если сами удовлетворяют
    Лейбницу. Прочтение B: Inn: линейная оболочка x -> [x, v] как есть, H^1 =
    dim(Der_0 + Inn) - dim Inn. Утверждение «H^1 одномерна» подтверждается (PASS),
    если хотя бы одно прочтение даёт 1, иначе DISCREPANT. Нарушения в отчёте: внутренние
    отображения, не прошедшие Лейбница; при PASS это отмечено отдельной заметкой.
    """
    algebra = make_wq()
    space = solve_derivations(algebra, 0, 0, window)
    unknowns = space.unknowns
    builder = ReportBuilder("h1", algebra=algebra.name, window=window.N)
    builder.dim("der0", space.dim)

    accepted: list[Vector] = []
    all_inner: list[Vector] = []
    for v, table in _inner_candidates(algebra, window):
        check = verify_derivation(algebra, 0, table, window)
        all_inner.append(table.vector(unknowns))
        if check.status is Status.PASS:
            accepted.append(table.vector(unknowns))
            builder.note(f"x -> [x, {v}] удовлетворяет Лейбницу")
        else:
            witness = check.counterexamples[0]
            builder.violation(
                witness.residual, pair=witness.pair, note=f"x -> [x, {v}] не дифференцирование"
            )

    der_vectors = [table.vector(unknowns) for table in space.basis]
    inner_rank = rank_of(all_inner)
    for number, vector in enumerate(der_vectors, start=1):
        inside = rank_of([*all_inner, vector]) == inner_rank
        builder.note(f"D{number} {'лежит' if inside else 'не лежит'} в оболочке внутренних")

    reading_a = rank_of([*der_vectors, *accepted]) - rank_of(accepted)
    reading_b = rank_of([*der_vectors, *all_inner]) - inner_rank
    builder.dim("inner_leibniz", len(accepted))
    builder.dim("h1_reading_a", reading_a)
    builder.dim("h1_reading_b", reading_b)
    if 1 in (reading_a, reading_b):
        if builder.violations:
            builder.note(
                "Контрпримеры относятся к внутренним отображениям и статус H^1 не меняют."
            )
        return builder.finish(Status.PASS)
    builder.note("Ни одно прочтение не даёт одномерную H^1.")
    return builder.finish(Status.DISCREPANT)


__all__ = [
    "DerivationSpace",
    "DerivationTable",
    "assemble_equivariance",
    "assemble_leibniz",
    "closed_form_table",
    "commutator_table",
    "decompose",
    "derivation_report",
    "derivation_unknowns",
    "h1_report",
    "ideal_module_check",
    "inner_map",
    "lemma_h1_w0_check",
    "lemma_hom_vanish_check",
    "solve_derivations",
    "verify_derivation",
]
