"""
Разбор выражений над Q(q) и элементов алгебры.

Грамматика::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-'? atom ('^' int)?
    atom   := int | 'q' | '[' int ']' | '<' int '>' | sym | '(' expr ')'
    sym    := ('L' | 'M') '[' int ']' | 'C'

Позиции ошибок: строка с 1, столбец с 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from app.algebra.cocycles import Cocycle
from app.algebra.elements import CENTER, ZERO_ELEMENT, BasisSym, Element, Family
from app.kernel.errors import ExpressionSyntaxError, QDivisionByZeroError, UnknownSymbolError
from app.kernel.qfield import Q, QScalar, ang, qn

logger = logging.getLogger("app.cli.parser")

_PUNCTUATION = set("+-*/^()[]<>")
_SYMBOL_LETTERS = {"q", "L", "M", "C"}


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "int", "name", "op", "eof"
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 0) -> list[Token]:
    tokens: list[Token] = []
    index = 0
    while index < len(text):
        char = text[index]
        if char == "\n":
            line += 1
            column = 0
            index += 1
            continue
        if char.isspace():
            index += 1
            column += 1
            continue
        if char.isascii() and char.isdigit():
            start = index
            while index < len(text) and text[index].isascii() and text[index].isdigit():
                index += 1
            tokens.append(Token("int", text[start:index], line, column))
            column += index - start
            continue
        if char in _PUNCTUATION:
            tokens.append(Token("op", char, line, column))
        elif char in _SYMBOL_LETTERS:
            tokens.append(Token("name", char, line, column))
        elif char.isalpha():
            raise UnknownSymbolError(
                f"Неизвестный символ {char!r} (строка {line}, столбец {column})"
            )
        else:
            raise ExpressionSyntaxError(f"Неожиданный знак {char!r}", line, column)
        index += 1
        column += 1
    tokens.append(Token("eof", "", line, column))
    return tokens


# --- синтаксическое дерево ---


@dataclass(frozen=True, slots=True)
class Node:
    line: int
    column: int


@dataclass(frozen=True, slots=True)
class Number(Node):
    value: int


@dataclass(frozen=True, slots=True)
class QVar(Node):
    pass


@dataclass(frozen=True, slots=True)
class QNumber(Node):
    n: int


@dataclass(frozen=True, slots=True)
class Angle(Node):
    n: int


@dataclass(frozen=True, slots=True)
class Symbol(Node):
    sym: BasisSym


@dataclass(frozen=True, slots=True)
class Negate(Node):
    operand: Node


@dataclass(frozen=True, slots=True)
class Power(Node):
    base: Node
    exponent: int


@dataclass(frozen=True, slots=True)
class BinaryOp(Node):
    op: str
    left: Node
    right: Node


ElementExpr = Node
Value = Union[QScalar, Element]


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.position = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def _advance(self) -> Token:
        token = self.current
        self.position += 1
        return token

    def _error(self, message: str, token: Token | None = None) -> ExpressionSyntaxError:
        token = token or self.current
        return ExpressionSyntaxError(message, token.line, token.column)

    def _expect(self, text: str) -> Token:
        token = self.current
        if token.kind != "op" or token.text != text:
            found = token.text or "конец строки"
            raise self._error(f"Ожидался {text!r}, найдено {found!r}")
        return self._advance()

    def _integer(self) -> int:
        sign = 1
        if self.current.kind == "op" and self.current.text == "-":
            self._advance()
            sign = -1
        token = self.current
        if token.kind != "int":
            raise self._error("Ожидалось целое число")
        self._advance()
        return sign * int(token.text)

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "eof":
            raise self._error(f"Лишний фрагмент {self.current.text!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            token = self._advance()
            node = BinaryOp(token.line, token.column, token.text, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.current.kind == "op" and self.current.text in "*/":
            token = self._advance()
            node = BinaryOp(token.line, token.column, token.text, node, self.factor())
        return node

    def factor(self) -> Node:
        token = self.current
        if token.kind == "op" and token.text == "-":
            self._advance()
            return Negate(token.line, token.column, self._powered())
        return self._powered()

    def _powered(self) -> Node:
        node = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            token = self._advance()
            return Power(token.line, token.column, node, self._integer())
        return node

    def atom(self) -> Node:
        token = self.current
        if token.kind == "int":
            self._advance()
            return Number(token.line, token.column, int(token.text))
        if token.kind == "name":
            self._advance()
            if token.text == "q":
                return QVar(token.line, token.column)
            if token.text == "C":
                return Symbol(token.line, token.column, CENTER)
            self._expect("[")
            degree = self._integer()
            self._expect("]")
            return Symbol(token.line, token.column, BasisSym(Family(token.text), degree))
        if token.kind == "op" and token.text == "[":
            self._advance()
            n = self._integer()
            self._expect("]")
            return QNumber(token.line, token.column, n)
        if token.kind == "op" and token.text == "<":
            self._advance()
            n = self._integer()
            self._expect(">")
            return Angle(token.line, token.column, n)
        if token.kind == "op" and token.text == "(":
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        found = token.text or "конец строки"
        raise self._error(f"Неожиданный {found!r}")


def parse_expression(text: str, line: int = 1, column: int = 0) -> ElementExpr:
    """
    Разобрать текст в синтаксическое дерево.

    :raises ExpressionSyntaxError: с номером строки и столбца.
    :raises UnknownSymbolError: буква вне алфавита грамматики.
    """
    return _Parser(tokenize(text, line, column)).parse()


def _mismatch(node: Node, message: str) -> ExpressionSyntaxError:
    return ExpressionSyntaxError(message, node.line, node.column)


def evaluate(node: ElementExpr) -> Value:
    """Вычислить дерево в скаляр Q(q) или элемент алгебры."""
    if isinstance(node, Number):
        return QScalar.of(node.value)
    if isinstance(node, QVar):
        return Q
    if isinstance(node, QNumber):
        return qn(node.n)
    if isinstance(node, Angle):
        return ang(node.n)
    if isinstance(node, Symbol):
        return Element.of(node.sym)
    if isinstance(node, Negate):
        value = evaluate(node.operand)
        return -value
    if isinstance(node, Power):
        base = evaluate(node.base)
        if isinstance(base, Element):
            if node.exponent == 1:
                return base
            raise _mismatch(node, "Степень элемента алгебры не определена")
        if base.is_zero and node.exponent < 0:
            raise QDivisionByZeroError(f"Ноль в отрицательной степени (строка {node.line}).")
        return base**node.exponent
    if isinstance(node, BinaryOp):
        return _binary(node, evaluate(node.left), evaluate(node.right))
    raise TypeError(f"Неизвестный узел {node!r}")


def _binary(node: BinaryOp, left: Value, right: Value) -> Value:
    if node.op in "+-":
        if isinstance(left, Element) != isinstance(right, Element):
            raise _mismatch(node, "Нельзя складывать скаляр и элемент алгебры")
        return left + right if node.op == "+" else left - right
    if node.op == "*":
        if isinstance(left, Element) and isinstance(right, Element):
            raise _mismatch(node, "Произведение двух элементов алгебры не определено")
        if isinstance(left, Element):
            return left.scale(right)
        if isinstance(right, Element):
            return right.scale(left)
        return left * right
    if isinstance(right, Element):
        raise _mismatch(node, "Делить можно только на скаляр")
    if right.is_zero:
        raise QDivisionByZeroError(f"Деление на ноль (строка {node.line}, столбец {node.column}).")
    if isinstance(left, Element):
        return left.scale(QScalar.of(1) / right)
    return left / right


def parse_element(text: str) -> Element:
    """Разобрать элемент; чистый скаляр допускается только нулевой."""
    node = parse_expression(text)
    value = evaluate(node)
    if isinstance(value, Element):
        return value
    if value.is_zero:
        return ZERO_ELEMENT
    raise _mismatch(node, "Ожидался элемент алгебры, получен скаляр")


def parse_scalar(text: str, line: int = 1, column: int = 0) -> QScalar:
    node = parse_expression(text, line, column)
    value = evaluate(node)
    if isinstance(value, Element):
        raise _mismatch(node, "Ожидался скаляр, получен элемент алгебры")
    return value


def render_scalar(value: QScalar) -> str:
    return str(value)


def render_element(value: Element) -> str:
    return str(value)


def _family(text: str, line: int, column: int) -> Family:
    if text not in ("L", "M"):
        raise ExpressionSyntaxError(f"Ожидалось семейство L или M, найдено {text!r}", line, column)
    return Family(text)


def _integer_field(text: str, line: int, column: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ExpressionSyntaxError(f"Ожидалась степень, найдено {text!r}", line, column) from None


def parse_cocycle_text(text: str, name: str = "file") -> Cocycle:
    """
    Разобрать файл коцикла: строки ``FAMILY m FAMILY n <скаляр>``.

    Пустые строки и всё после ``#`` игнорируются; кососимметричное замыкание
    достраивается автоматически.

    :raises ExpressionSyntaxError: неверная строка (номер строки файла).
    :raises CocycleError: значения противоречат кососимметричности или секторам.
    """
    entries = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        fields = content.split(maxsplit=4)
        if len(fields) < 5:
            raise ExpressionSyntaxError("Ожидалось `FAMILY m FAMILY n значение`", number, 0)
        offsets = []
        cursor = 0
        for item in fields:
            cursor = content.index(item, cursor)
            offsets.append(cursor)
            cursor += len(item)
        first = BasisSym(
            _family(fields[0], number, offsets[0]), _integer_field(fields[1], number, offsets[1])
        )
        second = BasisSym(
            _family(fields[2], number, offsets[2]), _integer_field(fields[3], number, offsets[3])
        )
        value = parse_scalar(fields[4], number, offsets[4])
        entries.append(((first, second), value))
    logger.debug("Коцикл %s: %d строк значений", name, len(entries))
    return Cocycle.from_pairs(entries, name=name)


def load_cocycle(path: str | Path) -> Cocycle:
    """Прочитать коцикл из файла (UTF-8)."""
    source = Path(path)
    try:
        text = source.read_text(encoding="utf-8")
    except UnicodeDecodeError as error:
        line = error.object[: error.start].count(b"\n") + 1
        raise ExpressionSyntaxError("Файл коцикла не в UTF-8", line, 0) from None
    return parse_cocycle_text(text, name=source.stem)
