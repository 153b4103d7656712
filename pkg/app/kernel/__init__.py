"""Точное ядро: поле Q(q), q-числа и разреженная линейная алгебра."""

from .errors import (
    CocycleError,
    EvaluationPointError,
    ExponentOverflowError,
    ExpressionSyntaxError,
    HomLieError,
    LemmaArgumentError,
    PoleError,
    QDivisionByZeroError,
    RealizationError,
    UnknownSymbolError,
)
from .linsolve import ConstraintSystem, Nullspace, rank_of, reduced_row_echelon, solve_system
from .qfield import (
    ONE,
    Q,
    ZERO,
    LaurentPoly,
    QScalar,
    Rational,
    ang,
    angle,
    eval_at,
    q_power,
    qn,
    qnumber,
)

__all__ = [
    "CocycleError",
    "ConstraintSystem",
    "EvaluationPointError",
    "ExponentOverflowError",
    "ExpressionSyntaxError",
    "HomLieError",
    "LaurentPoly",
    "LemmaArgumentError",
    "Nullspace",
    "ONE",
    "PoleError",
    "Q",
    "QDivisionByZeroError",
    "QScalar",
    "Rational",
    "RealizationError",
    "UnknownSymbolError",
    "ZERO",
    "ang",
    "angle",
    "eval_at",
    "q_power",
    "qn",
    "qnumber",
    "rank_of",
    "reduced_row_echelon",
    "solve_system",
]
