"""
Подкоманды CLI ``homlie``.

Разбор аргументов (argparse) отделён от выполнения: ``parse_args`` бросает
``SystemExit(2)`` на неверных флагах, ``execute`` возвращает код выхода
0/1/2 и печатает отчёты в текстовом или JSON-формате.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from typing import Any, Callable, Sequence, TextIO

from app import __version__
from app.algebra.cocycles import Cocycle
from app.algebra.cohomology import (
    alpha_invariance_check,
    builtin_beta,
    builtin_gamma,
    h2_report,
    verify_cocycle,
)
from app.algebra.derivations import derivation_report, lemma_h1_w0_check, lemma_hom_vanish_check
from app.algebra.elements import Window
from app.algebra.homlie import (
    HomAlgebra,
    central_extend,
    grading_check,
    hom_jacobi_check,
    make_w22_classical,
    make_wq,
    multiplicativity_check,
    skew_check,
)
from app.algebra.oscillator import q_realization_report, verify_realization
from app.algebra.report import Report, RunEnvelope, Status
from app.config import LOG_LEVELS, OUTPUT_FORMATS, Settings, get_settings
from app.kernel.errors import HomLieError

from .claims import run_claims
from .parser import load_cocycle
from .texts import COMMAND_HELP, ERROR_PREFIX, OPTION_HELP, PROGRAM_DESCRIPTION, render_run

logger = logging.getLogger("app.cli.commands")

DEFAULT_MAX_COUNTEREXAMPLES = 5
EXIT_USAGE = 2

# Ключи argparse, которые попадают в parameters JSON-конверта.
_PARAMETER_KEYS = (
    "algebra",
    "which",
    "window",
    "sector",
    "k",
    "degree",
    "equivariance",
    "n",
    "pair",
    "q_bracket",
)


def _positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидалось целое число, получено {raw!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"ожидалось число >= 1, получено {value}")
    return value


def _non_negative_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидалось целое число, получено {raw!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"ожидалось число >= 0, получено {value}")
    return value


def _pair(raw: str) -> tuple[int, int]:
    """Разобрать ``m,n``."""
    parts = raw.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"ожидалась пара m,n, получено {raw!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидалась пара целых m,n, получено {raw!r}") from None


def _algebra_spec(raw: str) -> str:
    if raw in ("wq", "w22", "ext:beta", "ext:gamma") or raw.startswith("ext:file:"):
        return raw
    raise argparse.ArgumentTypeError(
        f"неизвестная алгебра {raw!r}: wq, w22, ext:beta, ext:gamma или ext:file:<путь>"
    )


def _cocycle_spec(raw: str) -> str:
    if raw in ("beta", "gamma") or raw.startswith("file:"):
        return raw
    raise argparse.ArgumentTypeError(f"неизвестный коцикл {raw!r}: beta, gamma или file:<путь>")


def resolve_cocycle(name: str) -> Cocycle:
    """
    Коцикл по имени: ``beta``, ``gamma`` или ``file:<путь>``.

    :raises HomLieError: файл коцикла содержит ошибку.
    :raises OSError: файл не читается.
    """
    if name == "beta":
        return builtin_beta()
    if name == "gamma":
        return builtin_gamma()
    return load_cocycle(name.removeprefix("file:"))


def resolve_algebra(name: str) -> HomAlgebra:
    if name == "wq":
        return make_wq()
    if name == "w22":
        return make_w22_classical()
    return central_extend(make_wq(), resolve_cocycle(name.removeprefix("ext:")))


def _common_options(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        default=settings.output_format,
        help=OPTION_HELP["format"],
    )
    common.add_argument("--timings", action="store_true", help=OPTION_HELP["timings"])
    common.add_argument(
        "--max-counterexamples",
        type=_non_negative_int,
        default=DEFAULT_MAX_COUNTEREXAMPLES,
        help=OPTION_HELP["max_counterexamples"],
    )
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=None,
        help=OPTION_HELP["log_level"],
    )
    common.add_argument(
        "--window", type=_positive_int, default=settings.default_window, help=OPTION_HELP["window"]
    )
    return common


def _add_algebra(parser: argparse.ArgumentParser, default: str = "wq") -> None:
    parser.add_argument(
        "--algebra", type=_algebra_spec, default=default, help=OPTION_HELP["algebra"]
    )


def build_parser(settings: Settings | None = None) -> argparse.ArgumentParser:
    settings = settings or get_settings()
    common = _common_options(settings)
    parser = argparse.ArgumentParser(
        prog="homlie",
        description=PROGRAM_DESCRIPTION,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    check = groups.add_parser("check", help=COMMAND_HELP["check"])
    checks = check.add_subparsers(dest="command", required=True)
    for name in ("jacobi", "multiplicative", "skew", "grading"):
        sub = checks.add_parser(name, parents=[common], help=COMMAND_HELP[name])
        _add_algebra(sub)
        sub.set_defaults(handler=_ALGEBRA_CHECKS[name])

    cocycle = checks.add_parser("cocycle", parents=[common], help=COMMAND_HELP["cocycle"])
    cocycle.add_argument("--which", type=_cocycle_spec, required=True, help=OPTION_HELP["which"])
    cocycle.add_argument(
        "--algebra", choices=("wq", "w22"), default="wq", help=OPTION_HELP["algebra"]
    )
    cocycle.set_defaults(handler=_check_cocycle)

    lemmas = checks.add_parser("lemmas", parents=[common], help=COMMAND_HELP["lemmas"])
    choice = lemmas.add_mutually_exclusive_group(required=True)
    choice.add_argument("--n", type=int, help=OPTION_HELP["n"])
    choice.add_argument("--pair", type=_pair, help=OPTION_HELP["pair"])
    lemmas.add_argument(
        "--equivariance", choices=("on", "off"), default="off", help=OPTION_HELP["equivariance"]
    )
    lemmas.set_defaults(handler=_check_lemmas)

    realization = checks.add_parser(
        "realization", parents=[common], help=COMMAND_HELP["realization"]
    )
    realization.add_argument("--q-bracket", action="store_true", help=OPTION_HELP["q_bracket"])
    realization.set_defaults(handler=_check_realization)

    sweep = checks.add_parser("all", parents=[common], help=COMMAND_HELP["all"])
    sweep.set_defaults(handler=None)

    solve = groups.add_parser("solve", help=COMMAND_HELP["solve"])
    solvers = solve.add_subparsers(dest="command", required=True)
    h2 = solvers.add_parser("h2", parents=[common], help=COMMAND_HELP["h2"])
    h2.add_argument("--sector", type=int, default=0, help=OPTION_HELP["sector"])
    _add_algebra(h2)
    h2.set_defaults(handler=_solve_h2)

    der = solvers.add_parser("der", parents=[common], help=COMMAND_HELP["der"])
    der.add_argument("--k", type=_non_negative_int, default=0, help=OPTION_HELP["k"])
    der.add_argument("--degree", type=int, default=0, help=OPTION_HELP["degree"])
    der.add_argument(
        "--equivariance",
        choices=("on", "off", "both"),
        default="off",
        help=OPTION_HELP["equivariance"],
    )
    _add_algebra(der)
    der.set_defaults(handler=_solve_der)
    return parser


Handler = Callable[[argparse.Namespace, Window], list[Report]]


def _algebra_check(check: Callable[[HomAlgebra, Window], Report]) -> Handler:
    def handler(args: argparse.Namespace, window: Window) -> list[Report]:
        return [check(resolve_algebra(args.algebra), window)]

    return handler


_ALGEBRA_CHECKS: dict[str, Handler] = {
    "jacobi": _algebra_check(hom_jacobi_check),
    "multiplicative": _algebra_check(multiplicativity_check),
    "skew": _algebra_check(skew_check),
    "grading": _algebra_check(grading_check),
}


def _check_cocycle(args: argparse.Namespace, window: Window) -> list[Report]:
    algebra = resolve_algebra(args.algebra)
    psi = resolve_cocycle(args.which)
    invariance = alpha_invariance_check(psi, algebra, window)
    return [
        verify_cocycle(algebra, psi, window),
        invariance.relabel(invariance.claim_id, Status.INFO),
    ]


def _check_lemmas(args: argparse.Namespace, window: Window) -> list[Report]:
    if args.pair is not None:
        return [lemma_hom_vanish_check(*args.pair)]
    return [lemma_h1_w0_check(args.n, enforce_equivariance=args.equivariance == "on")]


def _check_realization(args: argparse.Namespace, window: Window) -> list[Report]:
    if args.q_bracket:
        return [q_realization_report(window)]
    return [verify_realization(window)]


def _solve_h2(args: argparse.Namespace, window: Window) -> list[Report]:
    return [h2_report(resolve_algebra(args.algebra), args.sector, window)]


def _solve_der(args: argparse.Namespace, window: Window) -> list[Report]:
    algebra = resolve_algebra(args.algebra)
    modes = {"off": (False,), "on": (True,), "both": (False, True)}[args.equivariance]
    return [derivation_report(algebra, args.k, args.degree, window, enforce) for enforce in modes]


def _parameters(args: argparse.Namespace) -> dict[str, Any]:
    values = vars(args)
    return {
        key: list(values[key]) if isinstance(values[key], tuple) else values[key]
        for key in _PARAMETER_KEYS
        if values.get(key) is not None
    }


def parse_args(
    argv: Sequence[str] | None = None, settings: Settings | None = None
) -> argparse.Namespace:
    return build_parser(settings).parse_args(argv)


def execute(args: argparse.Namespace, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """
    Выполнить разобранную команду и напечатать отчёты.

    :return: 0, если все отчёты PASS/INFO; 1 при FAIL/DISCREPANT; 2 при ошибке ввода.
    """
    out = out or sys.stdout
    err = err or sys.stderr
    command = f"{args.group} {args.command}"
    window = Window(args.window)
    logger.info("Команда %s, окно %d", command, window.N)
    try:
        if args.handler is None:
            reports = run_claims(window, timings=args.timings)
        else:
            started = time.perf_counter()
            reports = args.handler(args, window)
            if args.timings:
                elapsed = (time.perf_counter() - started) * 1000 / max(len(reports), 1)
                reports = [report.with_timing(elapsed) for report in reports]
    except (HomLieError, RuntimeError, OSError) as error:
        logger.info("Команда %s прервана: %s", command, error)
        print(f"{ERROR_PREFIX} {error}", file=err)
        return EXIT_USAGE

    envelope = RunEnvelope(
        tool_version=__version__,
        command=command,
        parameters=_parameters(args),
        reports=[report.truncated(args.max_counterexamples) for report in reports],
    )
    if args.format == "json":
        print(envelope.to_json(), file=out)
    else:
        print(render_run(envelope, args.max_counterexamples), file=out)
    return envelope.exit_code


def run(
    argv: Sequence[str] | None = None,
    settings: Settings | None = None,
    out: TextIO | None = None,
    err: TextIO | None = None,
) -> int:
    """Разбор и выполнение без настройки логирования; ошибки флагов дают код 2."""
    try:
        args = parse_args(argv, settings)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else EXIT_USAGE
    return execute(args, out, err)
