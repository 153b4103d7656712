import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.kernel.errors import UnknownSymbolError
from app.kernel.linsolve import ConstraintSystem, rank_of, reduced_row_echelon, solve_system
from app.kernel.qfield import ONE, ZERO, Q, QScalar, qn


def _apply(row, vector, unknowns):
    values = dict(zip(unknowns, vector))
    total = ZERO
    for name, coeff in row.items():
        total = total + QScalar.of(coeff) * values[name]
    return total


def test_empty_system_is_full_space():
    result = solve_system(["x", "y", "z"], [])
    assert result.rank == 0
    assert result.dimension == 3
    assert result.as_maps() == [{"x": ONE}, {"y": ONE}, {"z": ONE}]


def test_q_coefficients_nullspace():
    # [2] x - (q^2 + 1) y = 0 даёт x = q y
    rows = [{"x": qn(2), "y": -(Q * Q + 1)}]
    result = solve_system(["x", "y"], rows)
    assert result.rank == 1
    assert result.dimension == 1
    (vector,) = result.basis
    assert vector == (ONE, ONE / Q)


def test_zero_rows_are_skipped():
    system = ConstraintSystem(["x"])
    assert system.add_row({"x": 0}) is False
    assert system.add_row({"x": Q - Q}) is False
    assert system.rows == []


def test_unknown_name_raises():
    system = ConstraintSystem(["x"])
    with pytest.raises(UnknownSymbolError):
        system.add_row({"y": 1})
    with pytest.raises(KeyError):
        system.unknown_index("y")


def test_basis_independent_of_row_order():
    unknowns = ["a", "b", "c", "d"]
    rows = [
        {"a": 1, "b": -Q},
        {"b": qn(3), "c": -1},
        {"a": qn(3), "c": -Q},
    ]
    forward = solve_system(unknowns, rows)
    backward = solve_system(unknowns, list(reversed(rows)))
    assert forward.basis == backward.basis
    assert forward.rank == backward.rank == 2


def test_rref_shape():
    rows = reduced_row_echelon([(2, 4, 0), (1, 2, 1), (3, 6, 1)])
    assert rows == [(ONE, QScalar.of(2), ZERO), (ZERO, ZERO, ONE)]
    assert rank_of([(1, Q), (Q, Q * Q)]) == 1


coeffs = st.sampled_from([0, 1, -1, 2]).map(QScalar.of) | st.integers(-3, 3).map(qn)


@given(st.lists(st.lists(coeffs, min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace_vectors_solve_every_row(matrix):
    unknowns = ["u0", "u1", "u2", "u3"]
    rows = [dict(zip(unknowns, line)) for line in matrix]
    result = solve_system(unknowns, rows)
    assert result.rank + result.dimension == len(unknowns)
    for vector in result.basis:
        for row in rows:
            assert _apply(row, vector, unknowns) == ZERO
