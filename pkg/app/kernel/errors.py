"""Исключения ядра. Каждое наследует подходящее встроенное исключение."""

from __future__ import annotations


class HomLieError(Exception):
    """Базовый класс всех ошибок пакета."""


class QDivisionByZeroError(HomLieError, ZeroDivisionError):
    """Деление на нулевой элемент поля Q(q)."""


class EvaluationPointError(HomLieError, ValueError):
    """Точка подстановки q0 из {0, 1, -1}."""


class PoleError(HomLieError, ZeroDivisionError):
    """Знаменатель обращается в ноль в точке подстановки."""


class ExponentOverflowError(HomLieError, OverflowError):
    """Показатель степени q не помещается в машинное слово."""


class UnknownSymbolError(HomLieError, KeyError):
    """Символ базиса не принадлежит алгебре."""


class CocycleError(HomLieError, ValueError):
    """Некорректный коцикл: не кососимметричен или смешивает секторы."""


class RealizationError(HomLieError, ValueError):
    """Символ не имеет осцилляторной реализации."""


class LemmaArgumentError(HomLieError, ValueError):
    """Недопустимые параметры проверки леммы."""


class ExpressionSyntaxError(HomLieError, ValueError):
    """
    Ошибка разбора выражения.

    :param message: описание ошибки.
    :param line: номер строки (с единицы).
    :param column: смещение в строке (с нуля).
    """

    def __init__(self, message: str, line: int = 1, column: int = 0) -> None:
        super().__init__(f"{message} (строка {line}, столбец {column})")
        self.message = message
        self.line = line
        self.column = column
