import pytest

from app.algebra.cocycles import Cocycle, cocycle_from_closed_form
from app.algebra.cohomology import builtin_beta
from app.algebra.elements import CENTER, BasisSym, Element, Family, L, M, Window
from app.algebra.homlie import (
    alpha,
    alpha_power,
    basis,
    bracket,
    central_extend,
    grading_check,
    hom_jacobi_check,
    jacobi_residual,
    make_w22_classical,
    make_wq,
    multiplicativity_check,
    project,
    q_jacobi_check,
    skew_check,
)
from app.algebra.report import Status
from app.kernel.errors import UnknownSymbolError
from app.kernel.qfield import ONE, ang, qn


def test_wq_structure_constants(wq):
    assert bracket(wq, L(1), L(2)) == Element.of(L(3), qn(1))
    assert bracket(wq, L(2), L(1)) == Element.of(L(3), -qn(1))
    assert bracket(wq, L(-1), M(3)) == Element.of(M(2), qn(4))
    assert bracket(wq, M(1), M(2)).is_zero
    assert bracket(wq, L(4), L(4)).is_zero


def test_bracket_is_bilinear(wq):
    x = Element.from_map({L(1): 2, M(0): qn(2)})
    y = Element.of(L(-1))
    expected = bracket(wq, L(1), L(-1)).scale(2) + bracket(wq, M(0), L(-1)).scale(qn(2))
    assert bracket(wq, x, y) == expected


def test_alpha_and_powers(wq):
    assert alpha(wq, L(3)) == Element.of(L(3), ang(3))
    assert alpha_power(wq, M(2), 0) == Element.of(M(2))
    assert alpha_power(wq, M(2), 2) == Element.of(M(2), ang(2) * ang(2))
    with pytest.raises(ValueError):
        alpha_power(wq, M(2), -1)


def test_basis_order():
    symbols = basis(make_wq(), Window(1))
    assert [str(sym) for sym in symbols] == ["L[-1]", "L[0]", "L[1]", "M[-1]", "M[0]", "M[1]"]


def test_center_not_in_base(wq):
    with pytest.raises(UnknownSymbolError):
        bracket(wq, CENTER, L(1))


@pytest.mark.parametrize("make", [make_wq, make_w22_classical])
def test_hom_jacobi_passes(make):
    report = hom_jacobi_check(make(), Window(3))
    assert report.status is Status.PASS
    assert report.dims["violations"] == 0
    assert report.dims["checked"] > 0


@pytest.mark.slow
def test_hom_jacobi_wq_window_six(wq):
    assert hom_jacobi_check(wq, Window(6)).status is Status.PASS


def test_corrupted_algebra_fails(corrupted):
    report = hom_jacobi_check(corrupted, Window(3))
    assert report.status is Status.FAIL
    assert report.counterexamples
    residual = jacobi_residual(corrupted, L(1), L(2), L(3))
    assert residual == Element.of(L(6), ang(2) - ang(1))


@pytest.mark.parametrize("make", [make_wq, make_w22_classical])
def test_skew_and_grading(make):
    algebra = make()
    assert skew_check(algebra, Window(3)).status is Status.PASS
    assert grading_check(algebra, Window(3)).status is Status.PASS


def test_wq_is_not_multiplicative(wq):
    report = multiplicativity_check(wq, Window(2))
    assert report.status is Status.FAIL
    pairs = {record.pair for record in report.counterexamples}
    assert ("L[1]", "L[2]") in pairs


def test_classical_is_multiplicative():
    assert multiplicativity_check(make_w22_classical(), Window(4)).status is Status.PASS


def test_q_jacobi_agrees_with_table():
    report = q_jacobi_check(Window(3))
    assert report.status is Status.PASS


def test_central_extension_with_beta(wq):
    extension = central_extend(wq, builtin_beta())
    assert extension.has_center
    assert bracket(extension, L(2), L(-2)) == Element.from_map(
        {L(0): qn(-4), CENTER: ONE / ang(2)}
    )
    assert bracket(extension, CENTER, L(1)).is_zero
    assert alpha(extension, CENTER) == Element.of(CENTER)
    assert hom_jacobi_check(extension, Window(3)).status is Status.PASS


def test_central_extension_with_non_cocycle_fails(wq):
    psi = cocycle_from_closed_form(lambda x, y: ONE, (Family.L, Family.L), 0, name="delta")
    report = hom_jacobi_check(central_extend(wq, psi), Window(3))
    assert report.status is Status.FAIL
    triples = {record.triple for record in report.counterexamples}
    assert ("L[-3]", "L[1]", "L[2]") in triples


def test_project_forgets_center(wq):
    psi = Cocycle.from_pairs({(L(1), L(-1)): 1})
    extension = central_extend(wq, psi)
    base = project(extension)
    assert base.families == (Family.L, Family.M)
    assert bracket(base, L(1), L(-1)) == bracket(wq, L(1), L(-1))
    assert project(wq) is wq


def test_symbol_bracket_unknown_family(wq):
    with pytest.raises(UnknownSymbolError):
        wq.symbol_alpha(BasisSym(Family.C))
