"""Командная строка: разбор выражений, подкоманды и полный прогон утверждений."""

from .claims import CLAIMS, run_claims
from .commands import build_parser, execute, parse_args, run
from .parser import (
    load_cocycle,
    parse_cocycle_text,
    parse_element,
    parse_expression,
    parse_scalar,
    render_element,
    render_scalar,
)

__all__ = [
    "CLAIMS",
    "build_parser",
    "execute",
    "load_cocycle",
    "parse_args",
    "parse_cocycle_text",
    "parse_element",
    "parse_expression",
    "parse_scalar",
    "render_element",
    "render_scalar",
    "run",
    "run_claims",
]
