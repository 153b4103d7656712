from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import dotenv

dotenv.load_dotenv()


DEFAULT_WINDOW = 6
DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_OUTPUT_FORMAT = "text"
OUTPUT_FORMATS = ("text", "json")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(slots=True)
class Settings:
    """Runtime configuration loaded from environment variables."""

    default_window: int = DEFAULT_WINDOW
    log_level: str = DEFAULT_LOG_LEVEL
    output_format: str = DEFAULT_OUTPUT_FORMAT
    hypothesis_profile: str = "default"


def _read_window(raw: str | None) -> int:
    if raw is None or not raw.strip():
        return DEFAULT_WINDOW
    try:
        value = int(raw.strip())
    except ValueError:
        raise RuntimeError(
            f"HOMLIE_DEFAULT_WINDOW должно быть целым числом, получено {raw!r}."
        ) from None
    if value < 1:
        raise RuntimeError(f"HOMLIE_DEFAULT_WINDOW должно быть >= 1, получено {value}.")
    return value


@lru_cache(1)
def get_settings() -> Settings:
    """
    Прочитать переменные окружения и сформировать объект настроек.

    :return: объект Settings с окном по умолчанию, уровнем логов и форматом вывода.
    :raises RuntimeError: если значения переменных некорректны.
    """
    log_level = (os.getenv("HOMLIE_LOG_LEVEL") or DEFAULT_LOG_LEVEL).strip().upper()
    if log_level not in LOG_LEVELS:
        raise RuntimeError(f"HOMLIE_LOG_LEVEL: неизвестный уровень {log_level!r}.")

    output_format = (os.getenv("HOMLIE_OUTPUT_FORMAT") or DEFAULT_OUTPUT_FORMAT).strip().lower()
    if output_format not in OUTPUT_FORMATS:
        raise RuntimeError(
            f"HOMLIE_OUTPUT_FORMAT должно быть text или json, получено {output_format!r}."
        )

    return Settings(
        default_window=_read_window(os.getenv("HOMLIE_DEFAULT_WINDOW")),
        log_level=log_level,
        output_format=output_format,
        hypothesis_profile=os.getenv("HOMLIE_HYPOTHESIS_PROFILE", "default"),
    )
