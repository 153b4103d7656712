"""
Текстовые шаблоны CLI: справка по командам и текстовый формат отчётов.

Формулировки живут здесь, чтобы команды не смешивали вывод с логикой.
"""

from __future__ import annotations

from typing import Any

from app.algebra.report import Report, RunEnvelope

PROGRAM_DESCRIPTION = (
    "Точная проверка q-деформированной алгебры W(2,2) как Hom-алгебры Ли над Q(q):\n"
    "тождество Hom-Якоби, H^2, alpha^k-дифференцирования, осцилляторная реализация."
)

COMMAND_HELP = {
    "check": "Проверить утверждение и вывести отчёт.",
    "solve": "Решить линейную систему и вывести размерности и базис.",
    "jacobi": "Тождество Hom-Якоби на тройках символов окна.",
    "multiplicative": "Мультипликативность alpha: alpha[x, y] = [alpha x, alpha y].",
    "skew": "Кососимметричность скобки.",
    "grading": "Согласованность скобки и alpha с градуировкой.",
    "cocycle": "Условие 2-коцикла и alpha-инвариантность (beta, gamma или файл).",
    "lemmas": "Леммы о W_q^0-модулях: --n для H^1, --pair m,n для Hom.",
    "realization": "Осцилляторная реализация W(2,2); --q-bracket для q-соотношений.",
    "all": "Полный прогон всех утверждений, по отчёту на каждое.",
    "h2": "Вторая когомология сектора --sector.",
    "der": "alpha^k-дифференцирования степени --degree.",
}

OPTION_HELP = {
    "format": "Формат вывода: text или json (по умолчанию из HOMLIE_OUTPUT_FORMAT).",
    "timings": "Записывать время каждой проверки в time_ms.",
    "max_counterexamples": "Сколько контрпримеров печатать на отчёт.",
    "log_level": "Уровень логирования (DEBUG, INFO, WARNING, ...).",
    "window": "Окно N: степени от -N до N (по умолчанию из HOMLIE_DEFAULT_WINDOW).",
    "algebra": "wq, w22, ext:beta, ext:gamma или ext:file:<путь>.",
    "which": "beta, gamma или file:<путь>.",
    "sector": "Сектор коцикла: psi(X_m, Y_n) != 0 только при m + n = sector.",
    "k": "Показатель k в alpha^k-дифференцировании.",
    "degree": "Степень дифференцирования s.",
    "equivariance": "Условие D alpha = alpha D: on, off или both.",
    "n": "Степень n != 0 для леммы о H^1(W_q^0, W_q^n).",
    "pair": "Пара m,n с m != n для леммы о Hom(W_q^m, W_q^n).",
    "q_bracket": "Проверять q-соотношения вместо обычных коммутаторов.",
}

STATUS_MARKS = {
    "PASS": "[PASS]",
    "FAIL": "[FAIL]",
    "INFO": "[INFO]",
    "DISCREPANT": "[DISCREPANT]",
}

ERROR_PREFIX = "homlie: ошибка:"


def _format_mapping(data: dict[str, Any]) -> str:
    return ", ".join(f"{key}={data[key]}" for key in sorted(data))


def render_report(report: Report, max_counterexamples: int) -> str:
    """Один отчёт в тексте: заголовок ``[STATUS] claim_id`` и отступы под ним."""
    lines = [f"{STATUS_MARKS[report.status.value]} {report.claim_id}"]
    if report.parameters:
        lines.append(f"  параметры: {_format_mapping(report.parameters)}")
    if report.dims:
        lines.append(f"  размерности: {_format_mapping(report.dims)}")
    for note in report.notes:
        lines.append(f"  - {note}")
    shown = report.counterexamples[:max_counterexamples]
    for record in shown:
        where = ", ".join(record.triple or record.pair or ())
        suffix = f"  ({record.note})" if record.note else ""
        lines.append(f"  ! ({where}): {record.residual}{suffix}")
    hidden = max(report.dims.get("violations", 0), len(report.counterexamples)) - len(shown)
    if hidden > 0:
        lines.append(f"  ... ещё {hidden} контрпример(ов) в отчёте")
    if report.time_ms is not None:
        lines.append(f"  время: {report.time_ms} мс")
    return "\n".join(lines)


def render_run(envelope: RunEnvelope, max_counterexamples: int) -> str:
    blocks = [render_report(report, max_counterexamples) for report in envelope.reports]
    passed = sum(1 for report in envelope.reports if report.ok)
    blocks.append(f"Итого: {passed}/{len(envelope.reports)} без замечаний.")
    return "\n\n".join(blocks)
