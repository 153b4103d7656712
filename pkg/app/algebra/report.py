"""
Отчёты проверок.

Проверки не бросают исключений при нарушениях: нарушения складываются в ``Report``
как контрпримеры. Модели: pydantic v2, JSON стабилен байт-в-байт для одинаковых входов.
"""

from __future__ import annotations

import json
import logging
from enum import Enum
from typing import Any, Iterable, Sequence

from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger("app.algebra.report")

# Сколько контрпримеров хранит сама проверка; вывод дополнительно режет по флагу CLI.
STORED_COUNTEREXAMPLES = 50


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INFO = "INFO"
    DISCREPANT = "DISCREPANT"


class Counterexample(BaseModel):
    model_config = ConfigDict(frozen=True)

    triple: tuple[str, ...] | None = None
    pair: tuple[str, ...] | None = None
    residual: str
    note: str | None = None


class Report(BaseModel):
    """Результат одной проверяемой гипотезы."""

    model_config = ConfigDict(frozen=True)

    claim_id: str
    status: Status
    parameters: dict[str, Any] = Field(default_factory=dict)
    dims: dict[str, int] = Field(default_factory=dict)
    counterexamples: list[Counterexample] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)
    time_ms: float | None = None

    @property
    def ok(self) -> bool:
        return self.status in (Status.PASS, Status.INFO)

    def truncated(self, limit: int) -> Report:
        if len(self.counterexamples) <= limit:
            return self
        return self.model_copy(update={"counterexamples": self.counterexamples[:limit]})

    def with_timing(self, time_ms: float) -> Report:
        return self.model_copy(update={"time_ms": round(time_ms, 3)})

    def relabel(self, claim_id: str, status: Status | None = None) -> Report:
        update: dict[str, Any] = {"claim_id": claim_id}
        if status is not None:
            update["status"] = status
        return self.model_copy(update=update)

    def payload(self) -> dict[str, Any]:
        data = self.model_dump(mode="json", exclude_none=True)
        data["time_ms"] = self.time_ms
        return data


class RunEnvelope(BaseModel):
    """Верхний уровень JSON-вывода одной команды."""

    model_config = ConfigDict(frozen=True)

    tool_version: str
    command: str
    parameters: dict[str, Any] = Field(default_factory=dict)
    reports: list[Report] = Field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if all(report.ok for report in self.reports) else 1

    def to_json(self) -> str:
        data = {
            "tool_version": self.tool_version,
            "command": self.command,
            "parameters": self.parameters,
            "reports": [report.payload() for report in self.reports],
        }
        return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


class ReportBuilder:
    """
    Накопитель нарушений одной проверки.

    Хранит не больше ``STORED_COUNTEREXAMPLES`` контрпримеров, полное число
    нарушений попадает в ``dims["violations"]``.
    """

    def __init__(self, claim_id: str, **parameters: Any) -> None:
        self.claim_id = claim_id
        self.parameters = parameters
        self.dims: dict[str, int] = {}
        self.notes: list[str] = []
        self.checked = 0
        self.violations = 0
        self._counterexamples: list[Counterexample] = []

    def tick(self, count: int = 1) -> None:
        self.checked += count

    def violation(
        self,
        residual: object,
        *,
        triple: Sequence[object] | None = None,
        pair: Sequence[object] | None = None,
        note: str | None = None,
    ) -> None:
        self.violations += 1
        record = Counterexample(
            triple=tuple(str(item) for item in triple) if triple is not None else None,
            pair=tuple(str(item) for item in pair) if pair is not None else None,
            residual=str(residual),
            note=note,
        )
        logger.info("%s: нарушение %s -> %s", self.claim_id, record.triple or record.pair, residual)
        if len(self._counterexamples) < STORED_COUNTEREXAMPLES:
            self._counterexamples.append(record)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def dim(self, key: str, value: int) -> None:
        self.dims[key] = value

    def finish(
        self,
        status: Status | None = None,
        *,
        fail_status: Status = Status.FAIL,
    ) -> Report:
        """
        Собрать отчёт.

        :param status: явный статус; по умолчанию PASS без нарушений и ``fail_status`` иначе.
        """
        if status is None:
            status = fail_status if self.violations else Status.PASS
        dims = dict(self.dims)
        dims.setdefault("checked", self.checked)
        dims.setdefault("violations", self.violations)
        return Report(
            claim_id=self.claim_id,
            status=status,
            parameters=self.parameters,
            dims=dims,
            counterexamples=list(self._counterexamples),
            notes=list(self.notes),
        )


def combine_status(reports: Iterable[Report]) -> Status:
    """Худший статус набора: FAIL/DISCREPANT важнее PASS/INFO."""
    statuses = {report.status for report in reports}
    for status in (Status.FAIL, Status.DISCREPANT, Status.PASS, Status.INFO):
        if status in statuses:
            return status
    return Status.INFO
