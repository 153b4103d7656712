"""
Полный прогон утверждений (`check all`).

Каждое утверждение задано функцией окна, возвращающей один ``Report``. Прогон не
останавливается на первом FAIL: отчёты копятся в заданном порядке, поэтому
JSON двух одинаковых запусков совпадает байт-в-байт (если не включено время).
"""

from __future__ import annotations

import logging
import time
from typing import Callable

from app.algebra.cocycles import Cocycle, cocycle_from_closed_form
from app.algebra.cohomology import (
    alpha_invariance_check,
    builtin_beta,
    builtin_gamma,
    extension_equivalence_check,
    h2_span_check,
    is_multiplicative_extension,
    solve_h2,
    verify_cocycle,
)
from app.algebra.derivations import (
    closed_form_table,
    h1_report,
    ideal_module_check,
    inner_map,
    lemma_h1_w0_check,
    lemma_hom_vanish_check,
    solve_derivations,
    verify_derivation,
)
from app.algebra.elements import Family, L, M, Window
from app.algebra.homlie import (
    grading_check,
    hom_jacobi_check,
    make_w22_classical,
    make_wq,
    multiplicativity_check,
    q_jacobi_check,
    skew_check,
)
from app.algebra.oscillator import q_realization_report, verify_realization
from app.algebra.report import Report, ReportBuilder, Status
from app.kernel.errors import HomLieError
from app.kernel.qfield import ONE, LaurentPoly, angle, qnumber

logger = logging.getLogger("app.cli.claims")

IDENTITY_RANGE = 20
H2_STABLE_FROM = 4
H2_EXPECTED = 2
VANISHING_K = (1, 2)
VANISHING_DEGREES = range(-4, 5)
HOM_VANISH_PAIRS = ((1, 2), (3, -3))
H1_W0_DEGREES = (1, 2, -1)

Claim = Callable[[Window], Report]


def non_cocycle() -> Cocycle:
    """psi(L_-m, L_m) = 1 при m > 0: кососимметрична, но не коцикл."""
    return cocycle_from_closed_form(
        lambda _x, _y: ONE, (Family.L, Family.L), 0, name="non_cocycle"
    )


def qfield_identities(window: Window) -> Report:
    """Тождества для [n]_q и <n>_q при |m|, |n| <= 20 как многочлены Лорана."""
    builder = ReportBuilder("qfield_identities", range=IDENTITY_RANGE)
    span = range(-IDENTITY_RANGE, IDENTITY_RANGE + 1)
    for m in span:
        builder.tick(2)
        if qnumber(-m) != -qnumber(m):
            builder.violation(qnumber(-m) + qnumber(m), pair=(m, -m), note="[-n] = -[n]")
        if angle(-m) != angle(m):
            builder.violation(angle(-m) - angle(m), pair=(m, -m), note="<-m> = <m>")
        for n in span:
            builder.tick(4)
            qm, qn_ = LaurentPoly.monomial(m), LaurentPoly.monomial(n)
            checks = (
                (qn_ * qnumber(m) - qm * qnumber(n), qnumber(m - n), "q^n[m] - q^m[n] = [m-n]"),
                (
                    LaurentPoly.monomial(-n) * qnumber(m) + qm * qnumber(n),
                    qnumber(m + n),
                    "q^-n[m] + q^m[n] = [m+n]",
                ),
                (angle(n) * angle(m), angle(n + m) + angle(n - m), "<n><m> = <n+m> + <n-m>"),
                (
                    qnumber(m + n) * qnumber(m - n),
                    qnumber(m) * qnumber(m) - qnumber(n) * qnumber(n),
                    "[m+n][m-n] = [m]^2 - [n]^2",
                ),
            )
            for lhs, rhs, label in checks:
                if lhs != rhs:
                    builder.violation(lhs - rhs, pair=(m, n), note=label)
    return builder.finish()


def jacobi_wq(window: Window) -> Report:
    return hom_jacobi_check(make_wq(), window).relabel("hom_jacobi_wq")


def jacobi_w22(window: Window) -> Report:
    return hom_jacobi_check(make_w22_classical(), window).relabel("hom_jacobi_w22")


def skew_wq(window: Window) -> Report:
    return skew_check(make_wq(), window).relabel("skew_wq")


def grading_wq(window: Window) -> Report:
    return grading_check(make_wq(), window).relabel("grading_wq")


def q_jacobi(window: Window) -> Report:
    return q_jacobi_check(window)


def multiplicative_wq(window: Window) -> Report:
    """W_q не мультипликативна: фиксируется как факт."""
    report = multiplicativity_check(make_wq(), window)
    return report.relabel("multiplicative_wq", Status.INFO)


def multiplicative_w22(window: Window) -> Report:
    return multiplicativity_check(make_w22_classical(), window).relabel("multiplicative_w22")


def cocycle_beta(window: Window) -> Report:
    return verify_cocycle(make_wq(), builtin_beta(), window)


def cocycle_gamma(window: Window) -> Report:
    return verify_cocycle(make_wq(), builtin_gamma(), window)


def h2_stabilization(window: Window) -> Report:
    """h2 сектора 0 равно 2 на всех окнах от 4 до N."""
    algebra = make_wq()
    start = min(H2_STABLE_FROM, window.N)
    builder = ReportBuilder("h2_stabilization", algebra=algebra.name, window=window.N)
    for size in range(start, window.N + 1):
        result = solve_h2(algebra, 0, Window(size))
        builder.tick()
        builder.dim(f"h2_N{size}", result.dims["h2"])
        if result.dims["h2"] != H2_EXPECTED:
            builder.violation(f"h2={result.dims['h2']}", note=f"окно {size}")
    return builder.finish()


def h2_span(window: Window) -> Report:
    return h2_span_check(make_wq(), window, [builtin_beta(), builtin_gamma()])


def extension_beta(window: Window) -> Report:
    """Расширение W_q при помощи beta является Hom-алгеброй Ли."""
    report = extension_equivalence_check(make_wq(), builtin_beta(), window)
    if report.status is Status.PASS and report.dims.get("hom_jacobi") != 1:
        return report.relabel(report.claim_id, Status.FAIL)
    return report


def extension_non_cocycle(window: Window) -> Report:
    """Расширение некоциклом должно нарушать Hom-Якоби хотя бы на одной тройке."""
    report = extension_equivalence_check(make_wq(), non_cocycle(), window)
    if report.status is Status.PASS and (report.dims.get("hom_jacobi") != 0 or not report.notes):
        return report.relabel(report.claim_id, Status.FAIL)
    return report


def alpha_invariance_beta(window: Window) -> Report:
    report = alpha_invariance_check(builtin_beta(), make_wq(), window)
    return report.relabel(report.claim_id, Status.INFO)


def multiplicative_extension_beta(window: Window) -> Report:
    return is_multiplicative_extension(make_wq(), builtin_beta(), window)


def derivations_degree_zero(window: Window) -> Report:
    """Der_0 трёхмерна с базисом (n, 0, 0, n), (0, n, 0, 0), (0, 0, 0, 1)."""
    algebra = make_wq()
    space = solve_derivations(algebra, 0, 0, window)
    builder = ReportBuilder("derivations_degree_zero", algebra=algebra.name, window=window.N)
    builder.dim("dim", space.dim)
    expected = [
        closed_form_table(window, 1, 0, 0),
        closed_form_table(window, 0, 1, 0),
        closed_form_table(window, 0, 0, 1),
    ]
    builder.tick()
    if space.dim != len(expected):
        builder.violation(f"dim={space.dim}", note="ожидалась размерность 3")
        return builder.finish()
    for number, (table, closed) in enumerate(zip(space.basis, expected), start=1):
        builder.tick()
        builder.note(f"D{number}: {table}")
        if table.vector(space.unknowns) != closed.vector(space.unknowns):
            builder.violation(str(table), note=f"ожидалось {closed}")
    return builder.finish()


def derivations_vanish(window: Window) -> Report:
    """alpha^k-дифференцирования при k = 1, 2 и |s| <= 4 нулевые (оба режима)."""
    algebra = make_wq()
    builder = ReportBuilder("derivations_vanish", algebra=algebra.name, window=window.N)
    for k in VANISHING_K:
        for s in VANISHING_DEGREES:
            for enforce in (False, True):
                builder.tick()
                space = solve_derivations(algebra, k, s, window, enforce_equivariance=enforce)
                mode = "on" if enforce else "off"
                builder.dim(f"k{k}_s{s}_{mode}", space.dim)
                if space.dim:
                    builder.violation(f"dim={space.dim}", note=f"k={k}, s={s}, eq={mode}")
    return builder.finish()


def ideal_m(window: Window) -> Report:
    return ideal_module_check(make_wq(), window)


def inner_maps(window: Window) -> Report:
    """x -> [x, v] при v = L_0, M_0 не удовлетворяют тождеству Лейбница."""
    algebra = make_wq()
    builder = ReportBuilder("inner_maps", algebra=algebra.name, window=window.N)
    for v in (L(0), M(0)):
        builder.tick()
        check = verify_derivation(algebra, 0, inner_map(algebra, 0, v, window), window)
        builder.dim(f"violations_{v}", check.dims["violations"])
        if check.counterexamples:
            witness = check.counterexamples[0]
            builder.violation(witness.residual, pair=witness.pair, note=f"v = {v}")
    return builder.finish(fail_status=Status.DISCREPANT)


def h1_claim(window: Window) -> Report:
    return h1_report(window)


def lemma_h1_w0(window: Window) -> Report:
    """H^1(W_q^0, W_q^n) = 0 для нескольких n != 0."""
    builder = ReportBuilder("lemma_h1_w0", degrees=list(H1_W0_DEGREES))
    for n in H1_W0_DEGREES:
        report = lemma_h1_w0_check(n)
        builder.tick()
        builder.dim(f"quotient_n{n}", report.dims["quotient"])
        for record in report.counterexamples:
            builder.violation(record.residual, pair=record.pair, note=f"n={n}")
    return builder.finish()


def lemma_hom_vanish(window: Window) -> Report:
    """Hom(W_q^m, W_q^n) для m != n; при n = -m рассуждение через alpha не проходит."""
    builder = ReportBuilder("lemma_hom_vanish", pairs=[list(pair) for pair in HOM_VANISH_PAIRS])
    statuses = []
    for m, n in HOM_VANISH_PAIRS:
        report = lemma_hom_vanish_check(m, n)
        statuses.append(report.status)
        builder.tick()
        builder.dim(f"full_{m}_{n}", report.dims["full"])
        builder.dim(f"equivariance_only_{m}_{n}", report.dims["equivariance_only"])
        for record in report.counterexamples:
            builder.violation(record.residual, pair=record.pair, note=record.note)
    if Status.FAIL in statuses:
        return builder.finish(Status.FAIL)
    if Status.DISCREPANT in statuses:
        return builder.finish(Status.DISCREPANT)
    return builder.finish()


def realization(window: Window) -> Report:
    return verify_realization(window)


def q_realization(window: Window) -> Report:
    return q_realization_report(window)


CLAIMS: tuple[Claim, ...] = (
    qfield_identities,
    jacobi_wq,
    jacobi_w22,
    skew_wq,
    grading_wq,
    q_jacobi,
    multiplicative_wq,
    multiplicative_w22,
    cocycle_beta,
    cocycle_gamma,
    h2_stabilization,
    h2_span,
    extension_beta,
    extension_non_cocycle,
    alpha_invariance_beta,
    multiplicative_extension_beta,
    derivations_degree_zero,
    derivations_vanish,
    ideal_m,
    inner_maps,
    h1_claim,
    lemma_h1_w0,
    lemma_hom_vanish,
    realization,
    q_realization,
)


def _crashed(claim: Claim, error: Exception) -> Report:
    builder = ReportBuilder(claim.__name__)
    builder.violation(f"{type(error).__name__}: {error}")
    return builder.finish()


def run_claims(
    window: Window, claims: tuple[Claim, ...] = CLAIMS, timings: bool = False
) -> list[Report]:
    """
    Прогнать утверждения по порядку.

    :param timings: записывать время каждой проверки в ``time_ms``.
    :return: по отчёту на утверждение; исключение внутри утверждения даёт FAIL,
        прогон продолжается.
    """
    reports: list[Report] = []
    logger.info("Прогон утверждений: %d шт., окно %d", len(claims), window.N)
    for claim in claims:
        started = time.perf_counter()
        try:
            report = claim(window)
        except (HomLieError, ArithmeticError, ValueError, RuntimeError, OSError) as error:
            logger.exception("Утверждение %s завершилось ошибкой", claim.__name__)
            report = _crashed(claim, error)
        if timings:
            report = report.with_timing((time.perf_counter() - started) * 1000)
        logger.info("%s: %s", report.claim_id, report.status.value)
        reports.append(report)
    return reports
