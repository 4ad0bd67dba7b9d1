from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from cubic_ode_invariants.core.expr import DegenerateDivisionError
from cubic_ode_invariants.core.expr import LinearSolveError
from cubic_ode_invariants.core.expr import PoleError
from cubic_ode_invariants.core.expr import UnboundSymbolError
from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.expr import canonical
from cubic_ode_invariants.core.expr import equal
from cubic_ode_invariants.core.expr import evaluate
from cubic_ode_invariants.core.expr import is_zero
from cubic_ode_invariants.core.expr import normalize
from cubic_ode_invariants.core.expr import numeric_values
from cubic_ode_invariants.core.expr import opaque
from cubic_ode_invariants.core.expr import opaque_parts
from cubic_ode_invariants.core.expr import partial
from cubic_ode_invariants.core.expr import precise_value
from cubic_ode_invariants.core.expr import probe_points
from cubic_ode_invariants.core.expr import shift
from cubic_ode_invariants.core.expr import solve_linear_for
from cubic_ode_invariants.core.expr import to_text
from cubic_ode_invariants.core.parser import parse

small = st.integers(min_value=-5, max_value=5)


@st.composite
def polynomials(draw):
    """Polynomials in x, y of total degree at most 3 with small integer coefficients."""
    monomials = [X**i * Y**j for i in range(4) for j in range(4 - i)]
    return sympy.Add(*(draw(small) * m for m in monomials))


@st.composite
def rational_functions(draw):
    numerator = draw(polynomials())
    denominator = draw(polynomials())
    if is_zero(denominator):
        denominator = sympy.Integer(1)
    return numerator / denominator


def test_partial_of_monomial():
    assert partial(X**2 * Y, 1, 1) == 2 * X


def test_partial_of_opaque_symbol_raises_its_index():
    b = opaque("B")
    assert partial(b, 1, 0) == opaque("B", 1, 0)
    assert partial(b**2, 0, 1) == 2 * b * opaque("B", 0, 1)
    assert partial(opaque("B", 1, 0), 1, 2) == opaque("B", 2, 2)


def test_opaque_naming():
    assert str(opaque("B", 1, 0)) == "B_{1.0}"
    assert opaque("F") == sympy.Symbol("F")
    assert opaque_parts(opaque("R", 2, 1)) == ("R", 2, 1)
    assert opaque_parts(X) is None
    assert shift(opaque("S", 1, 0), 0, 2) == opaque("S", 1, 2)


@pytest.mark.parametrize("name", ["x", "sin", "ln"])
def test_reserved_names_are_not_opaque(name):
    with pytest.raises(ValueError):
        opaque(name)


@settings(max_examples=30, deadline=None)
@given(polynomials(), polynomials(), small)
def test_partial_is_linear(a, b, c):
    assert is_zero(partial(c * a + b, 1, 0) - c * partial(a, 1, 0) - partial(b, 1, 0))


@settings(max_examples=30, deadline=None)
@given(rational_functions())
def test_mixed_partials_commute(e):
    assert is_zero(partial(partial(e, 1, 0), 0, 1) - partial(partial(e, 0, 1), 1, 0))


@settings(max_examples=30, deadline=None)
@given(rational_functions())
def test_normalize_is_idempotent(e):
    once = normalize(e)
    twice = normalize(once.as_expr())
    assert once.numerator == twice.numerator
    assert once.denominator == twice.denominator


@settings(max_examples=30, deadline=None)
@given(polynomials(), st.fractions(min_value=-3, max_value=3, max_denominator=7))
def test_exact_and_numeric_evaluation_agree(e, x):
    exact = evaluate(e, x, Fraction(1, 2))
    numeric = numeric_values(e, np.array([float(x)]), np.array([0.5]))[0]
    assert isinstance(exact, Fraction)
    assert float(exact) == pytest.approx(numeric, rel=1e-12, abs=1e-12)


def test_evaluate_is_exact_on_rationals():
    assert evaluate(64 * X**5 - 24, 0, 0) == Fraction(-24)
    assert evaluate(X / (Y + 1), Fraction(1, 2), 1) == Fraction(1, 4)


def test_evaluate_elementary_gives_float():
    assert evaluate(sympy.sin(X), 0, 0) == Fraction(0)
    assert evaluate(sympy.exp(X), 1, 0) == pytest.approx(np.e)


def test_evaluate_pole():
    with pytest.raises(PoleError):
        evaluate(1 / X, 0, 1)


def test_precise_value_at_exact_points():
    assert abs(precise_value(X / 3, 1, 0) - sympy.Rational(1, 3)) < sympy.Float("1e-45")
    assert float(precise_value(X**2 * Y, sympy.sqrt(2), sympy.sin(1))) == pytest.approx(2 * np.sin(1), rel=1e-15)
    with pytest.raises(PoleError):
        precise_value(1 / X, 0, 1)


def test_evaluate_unbound_opaque_symbol():
    b = opaque("B")
    with pytest.raises(UnboundSymbolError):
        evaluate(b + X, 1, 1)
    assert evaluate(b + X, 1, 1, bindings={"B": 2}) == Fraction(3)


def test_numeric_values_marks_poles_as_non_finite():
    values = numeric_values(1 / X, np.array([0.0, 2.0]), np.array([0.0, 0.0]))
    assert not np.isfinite(values[0])
    assert values[1] == pytest.approx(0.5)


def test_equal_exact_for_rational_expressions():
    verdict = equal((X + Y) ** 2, X**2 + 2 * X * Y + Y**2)
    assert verdict.holds and verdict.exact
    assert not equal(X, Y)


def test_equal_records_denominator_caveat():
    verdict = equal(parse("x/x"), 1)
    assert verdict.holds
    assert verdict.caveat == "holds where denominators are nonzero"


def test_equal_falls_back_to_numeric_for_transcendental_identities():
    verdict = equal(sympy.sin(X) ** 2 + sympy.cos(X) ** 2, 1)
    assert verdict.holds
    assert not verdict.exact


def test_canonical_rejects_division_by_zero():
    with pytest.raises(DegenerateDivisionError):
        canonical(X / (Y - Y))


def test_solve_linear_for():
    s = opaque("s")
    assert solve_linear_for(2 * s - 4 * X, 0, s) == 2 * X
    with pytest.raises(LinearSolveError):
        solve_linear_for(X, 0, s)
    with pytest.raises(LinearSolveError):
        solve_linear_for(s**2 - 1, 0, s)


def test_probe_points_are_seeded_and_bounded():
    assert probe_points(3, 5) == probe_points(3, 5)
    assert all(x.denominator <= 97 and abs(x.numerator) <= 97 for x, _ in probe_points(1, 50))


@pytest.mark.parametrize(
    "text",
    ["x^2*y + 1", "1/(x - y)", "sin(x)*exp(y)", "ln(x^2 + 1)", "-x^-2", "B_{1.0}*F^3"],
)
def test_to_text_reparses(text):
    e = parse(text)
    assert is_zero(parse(to_text(e)) - e)
