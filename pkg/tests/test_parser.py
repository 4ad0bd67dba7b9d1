import pytest
import sympy

from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.expr import opaque
from cubic_ode_invariants.core.parser import TILDE_VARIABLES
from cubic_ode_invariants.core.parser import ExpressionParseError
from cubic_ode_invariants.core.parser import parse


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("0", sympy.Integer(0)),
        ("1 + x^2*y", 1 + X**2 * Y),
        ("-x^2", -(X**2)),
        ("2^3^2", sympy.Integer(512)),
        ("x^-1", 1 / X),
        ("(x + y)*(x - y)", (X + Y) * (X - Y)),
        ("1/3", sympy.Rational(1, 3)),
        ("sin(x) + cos(y) + exp(x*y) + ln(x)", sympy.sin(X) + sympy.cos(Y) + sympy.exp(X * Y) + sympy.log(X)),
        ("B_{1.0} + F", opaque("B", 1, 0) + opaque("F")),
        ("x  # trailing comment", X),
    ],
)
def test_parse(text, expected):
    assert sympy.simplify(parse(text) - expected) == 0


def test_tilde_variables():
    assert parse("yt - xt^2", TILDE_VARIABLES) == Y - X**2


@pytest.mark.parametrize(
    ("text", "offset"),
    [
        ("y'", 1),
        ("x + ", 4),
        ("1.5*x", 0),
        ("x $ y", 2),
        ("(x + y", 6),
        ("foo(x)", 0),
        ("x/0", 1),
        ("x^y", 2),
        ("", 0),
    ],
)
def test_parse_errors_carry_byte_offsets(text, offset):
    with pytest.raises(ExpressionParseError) as info:
        parse(text)
    assert info.value.offset == offset


def test_offsets_count_bytes_not_characters():
    with pytest.raises(ExpressionParseError) as info:
        parse("x # é\n $")
    assert info.value.offset == 8


def test_derivative_of_y_is_rejected_with_a_hint():
    with pytest.raises(ExpressionParseError, match="derivatives of y"):
        parse("y'")


def test_unknown_function():
    with pytest.raises(ExpressionParseError, match="unknown function 'foo'"):
        parse("foo(x)")


def test_opaque_symbols_can_be_disallowed():
    with pytest.raises(ExpressionParseError, match="unknown symbol 'B'"):
        parse("B + x", allow_opaque=False)


def test_variables_cannot_carry_an_index():
    with pytest.raises(ExpressionParseError):
        parse("x_{1.0}")


def test_plane_names_are_rejected_in_tilde_expressions():
    with pytest.raises(ExpressionParseError, match="unknown symbol 'x'"):
        parse("x + yt", TILDE_VARIABLES)


def test_error_message_names_location():
    error = ExpressionParseError("boom", 3, source="eq.ode", line=2)
    assert str(error) == "eq.ode:2:offset 3: boom"
