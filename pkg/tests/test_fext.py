from fractions import Fraction

import numpy as np
import pytest
import sympy

from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.expr import is_zero
from cubic_ode_invariants.core.fext import FExt
from cubic_ode_invariants.core.fext import FExtError
from cubic_ode_invariants.core.fext import ModulusMismatchError
from cubic_ode_invariants.core.fext import NonMonomialInverseError
from cubic_ode_invariants.core.fext import as_text
from cubic_ode_invariants.core.fext import derivative
from cubic_ode_invariants.core.fext import vanishes

M = 64 * X**5 - 24


@pytest.fixture
def f() -> FExt:
    return FExt.generator(M)


def test_fifth_power_reduces_to_modulus(f):
    fifth = f**5
    assert fifth.is_rational
    assert is_zero(fifth.coefficients[0] - M)


def test_product_wraps_around(f):
    product = (f**3) * (f**4)
    assert product.support == [2]
    assert is_zero(product.coefficients[2] - M)


def test_monomial_inverse(f):
    inverse = (3 * f**2).inverse()
    assert (inverse * 3 * f**2).equals(1)
    assert (f / f).equals(1)
    assert (1 / f).equals(f**4 / M)


def test_negative_power(f):
    assert (f**-2 * f**2).equals(1)


def test_non_monomial_inverse_is_refused(f):
    with pytest.raises(NonMonomialInverseError):
        (1 + f).inverse()


def test_zero_has_no_inverse(f):
    with pytest.raises(FExtError):
        (f - f).inverse()


def test_mixed_moduli_are_refused(f):
    with pytest.raises(ModulusMismatchError):
        f + FExt.generator(X)


def test_sympy_operands_defer_to_fext(f):
    left = X * f
    right = f * X
    assert isinstance(left, FExt)
    assert left.equals(right)
    assert isinstance(sympy.Integer(2) + f, FExt)


def test_derivative_of_generator(f):
    df = f.derivative(1, 0)
    expected = f * sympy.diff(M, X) / (5 * M)
    assert df.equals(expected)
    assert derivative(f, 0, 1).is_zero()


def test_derivative_of_fifth_power_matches_modulus(f):
    assert (f**5).derivative(1, 0).equals(FExt.constant(sympy.diff(M, X), M))


def test_derivative_of_plain_expression():
    assert derivative(X**2 * Y, 1, 0) == 2 * X * Y


def test_value_at_exact_when_root_cancels(f):
    assert (f**5 + 1).value_at(0, 0) == Fraction(-23)


def test_value_at_uses_real_fifth_root(f):
    assert f.value_at(0, 0) == pytest.approx(-(24 ** 0.2))
    assert (f**2).value_at(1, 0) == pytest.approx(40 ** 0.4)


def test_numeric_values_match_pointwise(f):
    element = X * f + f**3
    xs, ys = np.array([0.0, 1.0, 2.0]), np.array([0.0, 0.5, -1.0])
    values = element.numeric_values(xs, ys)
    for x, y, value in zip(xs, ys, values, strict=True):
        assert value == pytest.approx(element.value_at(Fraction(x), Fraction(y)))


def test_precise_value_survives_cancellation():
    g = FExt.generator(X)
    element = 10**12 * g - 2 * 10**12 + sympy.Rational(1, 3)
    assert abs(element.precise_value(32, 0) - sympy.Rational(1, 3)) < sympy.Float("1e-30")
    assert abs(g.precise_value(-32, 0) + 2) < sympy.Float("1e-45")


def test_vanishes_and_text(f):
    assert vanishes(f - f)
    assert vanishes(X - X)
    assert not vanishes(f)
    assert as_text(2 * f) == "(2)*f^1"
    assert as_text((X + 1) / (X + 1)) == "1"


def test_too_many_coefficients():
    with pytest.raises(FExtError):
        FExt([1, 2, 3, 4, 5, 6], X)
