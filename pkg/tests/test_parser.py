import pytest

from app.algebra.elements import CENTER, ZERO_ELEMENT, Element, L, M
from app.cli.parser import (
    BinaryOp,
    Symbol,
    evaluate,
    load_cocycle,
    parse_cocycle_text,
    parse_element,
    parse_expression,
    parse_scalar,
    render_element,
    render_scalar,
    tokenize,
)
from app.kernel.errors import (
    CocycleError,
    ExpressionSyntaxError,
    QDivisionByZeroError,
    UnknownSymbolError,
)
from app.kernel.qfield import ONE, Q, QScalar, ang, q_power, qn


def test_tokenize_positions():
    tokens = tokenize("[12] * L[-3]")
    assert [(t.kind, t.text, t.column) for t in tokens[:4]] == [
        ("op", "[", 0),
        ("int", "12", 1),
        ("op", "]", 3),
        ("op", "*", 5),
    ]
    assert tokens[-1].kind == "eof"


def test_parse_mixed_element():
    value = parse_element("[2] * L[3] + (q - q^-1) * M[0]")
    assert value == Element.from_map({L(3): qn(2), M(0): Q - q_power(-1)})


def test_parse_tree_shape():
    tree = parse_expression("L[1] + 2 * M[0]")
    assert isinstance(tree, BinaryOp)
    assert tree.op == "+"
    assert isinstance(tree.left, Symbol)
    assert tree.left.sym == L(1)
    assert evaluate(tree.right) == Element.of(M(0), 2)


def test_center_with_angle():
    assert parse_element("<2> * C") == Element.of(CENTER, ang(2))


def test_scalar_expressions():
    assert parse_scalar("[3] - <1>") == qn(3) - ang(1)
    assert parse_scalar("(q + 1)^-1") == ONE / (Q + 1)
    assert parse_scalar("-q^2") == -(Q * Q)
    assert parse_scalar("3/2") == QScalar.of(3) / 2


def test_zero_scalar_is_zero_element():
    assert parse_element("0") == ZERO_ELEMENT
    assert parse_element("L[1] - L[1]").is_zero


def test_missing_bracket_column():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_element("L[1")
    assert info.value.line == 1
    assert info.value.column == 3


def test_bad_character_column():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_scalar("q + & 1")
    assert info.value.column == 4


@pytest.mark.parametrize("text", ["L[²]", "M[-٣]", "q^¹"])
def test_non_ascii_digits_rejected(text):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_element(text)
    assert info.value.column == text.index(next(c for c in text if c in "²٣¹"))


def test_unknown_symbol():
    with pytest.raises(UnknownSymbolError):
        parse_element("x * L[1]")


@pytest.mark.parametrize(
    "text",
    ["L[1] + 2", "L[1] * M[2]", "1 / L[1]", "L[1]^2", "q", "L[1] 2"],
)
def test_type_mismatches(text):
    with pytest.raises(ExpressionSyntaxError):
        parse_element(text)


def test_scalar_rejects_element():
    with pytest.raises(ExpressionSyntaxError):
        parse_scalar("L[1]")
    assert parse_element("L[1]^1") == Element.of(L(1))


def test_division_by_zero():
    with pytest.raises(QDivisionByZeroError):
        parse_element("1/0 * L[1]")
    with pytest.raises(QDivisionByZeroError):
        parse_scalar("(q - q)^-1")


@pytest.mark.parametrize(
    "element",
    [
        Element.from_map({L(3): qn(2), M(0): Q - q_power(-1)}),
        Element.from_map({L(-2): QScalar.of(3) / 2, CENTER: ONE / (Q + 1)}),
        Element.from_map({M(4): -q_power(3), L(0): -1}),
    ],
)
def test_render_then_parse(element):
    assert parse_element(render_element(element)) == element


def test_render_scalar_parses_back():
    value = ONE / ang(2) - Q
    assert parse_scalar(render_scalar(value)) == value


COCYCLE_TEXT = """\
# фрагмент beta
L 2 L -2  1/<2>
L 1 M -1  [2]   # с комментарием

"""


def test_parse_cocycle_text():
    psi = parse_cocycle_text(COCYCLE_TEXT, name="sample")
    assert psi.name == "sample"
    assert psi.sector == 0
    assert psi.value(L(2), L(-2)) == ONE / ang(2)
    assert psi.value(L(-2), L(2)) == -ONE / ang(2)
    assert psi.value(M(-1), L(1)) == -qn(2)


def test_load_cocycle(tmp_path):
    path = tmp_path / "custom.txt"
    path.write_text(COCYCLE_TEXT, encoding="utf-8")
    psi = load_cocycle(path)
    assert psi.name == "custom"
    assert psi.value(L(1), M(-1)) == qn(2)


def test_load_cocycle_rejects_non_utf8(tmp_path):
    path = tmp_path / "latin.txt"
    path.write_bytes(b"# ok\nL 2 L -2 \xff\xfe\n")
    with pytest.raises(ExpressionSyntaxError) as info:
        load_cocycle(path)
    assert info.value.line == 2


@pytest.mark.parametrize(
    ("text", "line", "column"),
    [
        ("L 1 X 2 3", 1, 4),
        ("# заголовок\nL a L 2 1", 2, 2),
        ("L 1 L", 1, 0),
        ("L 1 L -1 q & 1", 1, 11),
    ],
)
def test_cocycle_file_errors(text, line, column):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_cocycle_text(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_cocycle_file_rejects_diagonal():
    with pytest.raises(CocycleError):
        parse_cocycle_text("L 1 L 1 2")
    with pytest.raises(UnknownSymbolError):
        parse_cocycle_text("L 1 L -1 x")
