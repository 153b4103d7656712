"""Hom-алгебры Ли: W_q, когомологии, дифференцирования, осцилляторная реализация."""

from .cocycles import Cocycle, cocycle_add, cocycle_from_closed_form, cocycle_scale, zero_cocycle
from .elements import CENTER, BasisSym, Element, Family, L, M, Window
from .homlie import HomAlgebra, bracket, central_extend, make_w22_classical, make_wq
from .report import Counterexample, Report, RunEnvelope, Status

__all__ = [
    "CENTER",
    "BasisSym",
    "Cocycle",
    "Counterexample",
    "Element",
    "Family",
    "HomAlgebra",
    "L",
    "M",
    "Report",
    "RunEnvelope",
    "Status",
    "Window",
    "bracket",
    "central_extend",
    "cocycle_add",
    "cocycle_from_closed_form",
    "cocycle_scale",
    "make_w22_classical",
    "make_wq",
    "zero_cocycle",
]
