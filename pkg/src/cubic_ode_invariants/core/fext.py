"""
Degree-5 extension ring over rational expressions.

An element is c0 + c1 f + c2 f^2 + c3 f^3 + c4 f^4 where f is a formal root of
f^5 = M and M is a rational expression (the value of F^5).  Every quantity that
carries an odd power of F lives here, so no fractional power ever enters an
expression tree.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction

import numpy as np
import sympy

from cubic_ode_invariants.core.expr import PLANE
from cubic_ode_invariants.core.expr import PRECISE_DIGITS
from cubic_ode_invariants.core.expr import Calculus
from cubic_ode_invariants.core.expr import Expr
from cubic_ode_invariants.core.expr import canonical
from cubic_ode_invariants.core.expr import evaluate
from cubic_ode_invariants.core.expr import finish_precise
from cubic_ode_invariants.core.expr import is_zero
from cubic_ode_invariants.core.expr import numeric_values
from cubic_ode_invariants.core.expr import point_value
from cubic_ode_invariants.core.expr import precise_value
from cubic_ode_invariants.core.expr import to_text

logger = logging.getLogger(__name__)

DEGREE = 5


class FExtError(Exception):
    """Base class for failures of extension-ring arithmetic."""

    pass


class ModulusMismatchError(FExtError):
    """Raised when combining elements of rings with different F^5."""

    pass


class NonMonomialInverseError(FExtError):
    """Raised when inverting an element that is not a single power of f."""

    pass


def _same_modulus(a: Expr, b: Expr) -> bool:
    return a is b or a == b or is_zero(a - b)


def real_fifth_root(value: float) -> float:
    """The unique real fifth root, sign(v)*|v|^(1/5)."""
    return float(np.sign(value) * abs(value) ** 0.2)


class FExt:
    """
    Element of Q(atoms)[f]/(f^5 - M).

    Args:
        coefficients: Up to five coefficients, lowest power of f first
        modulus: The expression M with f^5 = M

    Example:
        >>> f = FExt.generator(64 * X**5 - 24)
        >>> (f**5).coefficients[0]
        64*x**5 - 24
    """

    __slots__ = ("coefficients", "modulus")

    # sympy hands binary operations to the operand with the higher priority
    _op_priority = 20.0

    def __init__(self, coefficients: Sequence, modulus: Expr):
        if len(coefficients) > DEGREE:
            raise FExtError(f"at most {DEGREE} coefficients, got {len(coefficients)}")
        padded = [sympy.sympify(c) for c in coefficients] + [sympy.Integer(0)] * (DEGREE - len(coefficients))
        self.coefficients: tuple[Expr, ...] = tuple(padded)
        self.modulus: Expr = sympy.sympify(modulus)

    @classmethod
    def generator(cls, modulus: Expr) -> FExt:
        """The formal root f itself."""
        return cls([0, 1], modulus)

    @classmethod
    def constant(cls, value: Expr, modulus: Expr) -> FExt:
        return cls([value], modulus)

    # ------------------------------------------------------------------
    # structure
    # ------------------------------------------------------------------

    def _coerce(self, other) -> FExt:
        if isinstance(other, FExt):
            if not _same_modulus(self.modulus, other.modulus):
                raise ModulusMismatchError(f"f^5 = {self.modulus} and f^5 = {other.modulus} cannot be mixed")
            return other
        return FExt.constant(other, self.modulus)

    def _like(self, coefficients: Sequence) -> FExt:
        return FExt(coefficients, self.modulus)

    @property
    def support(self) -> list[int]:
        """Powers of f with a coefficient that is not structurally zero."""
        return [k for k, c in enumerate(self.coefficients) if c != 0]

    @property
    def is_monomial(self) -> bool:
        return len(self.support) <= 1

    @property
    def is_rational(self) -> bool:
        """True when only the f^0 coefficient is present."""
        return all(c == 0 for c in self.coefficients[1:])

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.coefficients)

    def equals(self, other) -> bool:
        return (self - other).is_zero()

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------

    def __add__(self, other) -> FExt:
        other = self._coerce(other)
        return self._like([a + b for a, b in zip(self.coefficients, other.coefficients, strict=True)])

    __radd__ = __add__

    def __neg__(self) -> FExt:
        return self._like([-c for c in self.coefficients])

    def __sub__(self, other) -> FExt:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> FExt:
        return self._coerce(other) - self

    def __mul__(self, other) -> FExt:
        if not isinstance(other, FExt):
            value = sympy.sympify(other)
            return self._like([c * value for c in self.coefficients])
        other = self._coerce(other)
        product = [sympy.Integer(0)] * DEGREE
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                if b == 0:
                    continue
                k = i + j
                if k >= DEGREE:
                    product[k - DEGREE] += self.modulus * a * b
                else:
                    product[k] += a * b
        return self._like(product)

    __rmul__ = __mul__

    def inverse(self) -> FExt:
        """
        Inverse of a monomial c*f^k, computed as c^-1 * f^(5-k) / M.

        Raises:
            NonMonomialInverseError: If more than one power of f is present
            FExtError: If the element is zero
        """
        support = self.support
        if not support:
            raise FExtError("division by the zero element")
        if len(support) > 1:
            raise NonMonomialInverseError(f"cannot invert an element with f-powers {support}")
        (k,) = support
        return self._monomial(1 / self.coefficients[k], -k)

    def _monomial(self, coefficient: Expr, power: int) -> FExt:
        coefficients: list = [0] * DEGREE
        coefficients[power % DEGREE] = coefficient * self.modulus ** (power // DEGREE)
        return self._like(coefficients)

    def __truediv__(self, other) -> FExt:
        if isinstance(other, FExt):
            return self * self._coerce(other).inverse()
        return self._like([c / sympy.sympify(other) for c in self.coefficients])

    def __rtruediv__(self, other) -> FExt:
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> FExt:
        if not isinstance(exponent, int):
            raise FExtError(f"only integer powers are defined, got {exponent!r}")
        if self.is_monomial and self.support:
            (k,) = self.support
            return self._monomial(self.coefficients[k] ** exponent, k * exponent)
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FExt.constant(1, self.modulus)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ------------------------------------------------------------------
    # calculus
    # ------------------------------------------------------------------

    def _step(self, p: int, q: int, calculus: Calculus) -> FExt:
        log_derivative = calculus.partial(self.modulus, p, q) / (DEGREE * self.modulus)
        return self._like(
            [calculus.partial(c, p, q) + k * c * log_derivative for k, c in enumerate(self.coefficients)]
        )

    def derivative(self, p: int, q: int, calculus: Calculus = PLANE) -> FExt:
        """
        Partial derivative using d f = f * dM / (5 M).

        The result is simplified componentwise by the calculus after every step.
        """
        result = self
        for step, count in (((1, 0), p), ((0, 1), q)):
            for _ in range(count):
                result = result._step(*step, calculus).simplify(calculus)
        return result

    def simplify(self, calculus: Calculus = PLANE) -> FExt:
        return self._like([calculus.simplify(c) for c in self.coefficients])

    def xreplace(self, rule: dict) -> FExt:
        return FExt([c.xreplace(rule) for c in self.coefficients], self.modulus.xreplace(rule))

    # ------------------------------------------------------------------
    # evaluation and printing
    # ------------------------------------------------------------------

    def value_at(self, x, y, bindings: dict | None = None) -> Fraction | float:
        """
        Value at a point with f taken as the real fifth root of M.

        Returns an exact Fraction when every f-carrying coefficient vanishes
        exactly at the point and the f^0 coefficient is rational there.
        """
        parts = [evaluate(c, x, y, bindings) if c != 0 else Fraction(0) for c in self.coefficients]
        if all(isinstance(v, Fraction) and v == 0 for v in parts[1:]):
            return parts[0]
        root = real_fifth_root(float(evaluate(self.modulus, x, y, bindings)))
        return float(sum(float(v) * root**k for k, v in enumerate(parts)))

    def numeric_values(self, xs: np.ndarray, ys: np.ndarray, bindings: dict | None = None) -> np.ndarray:
        modulus = numeric_values(self.modulus, xs, ys, bindings)
        root = np.sign(modulus) * np.abs(modulus) ** 0.2
        total = np.zeros_like(root)
        for k, c in enumerate(self.coefficients):
            if c != 0:
                total = total + numeric_values(c, xs, ys, bindings) * root**k
        return total

    def precise_value(self, x, y, digits: int = PRECISE_DIGITS) -> sympy.Float:
        """
        Value at a point to ``digits`` significant digits, f being the real fifth root of M.

        Coefficients enter exactly; only the root is rounded, at ``digits + 10`` digits.
        """
        modulus = precise_value(self.modulus, x, y, digits + 10)
        root = sympy.sign(modulus) * abs(modulus) ** sympy.Rational(1, DEGREE)
        total = sum(
            (point_value(c, x, y) * root**k for k, c in enumerate(self.coefficients) if c != 0), sympy.Integer(0)
        )
        return finish_precise(total, digits)

    def to_text(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            text = to_text(c)
            terms.append(text if k == 0 else f"({text})*f^{k}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"FExt({self.to_text()}; f^5 = {to_text(self.modulus)})"


Scalar = FExt | Expr


def derivative(value: Scalar, p: int, q: int, calculus: Calculus = PLANE) -> Scalar:
    """Partial derivative of either an FExt element or a plain expression."""
    if isinstance(value, FExt):
        return value.derivative(p, q, calculus)
    return calculus.simplify(calculus.partial(value, p, q))


def simplify(value: Scalar, calculus: Calculus = PLANE) -> Scalar:
    if isinstance(value, FExt):
        return value.simplify(calculus)
    return calculus.simplify(value)


def vanishes(value: Scalar) -> bool:
    """Exact zero test shared by both representations."""
    if isinstance(value, FExt):
        return value.is_zero()
    return is_zero(value)


def as_text(value: Scalar) -> str:
    if isinstance(value, FExt):
        return value.to_text()
    return to_text(canonical(value))
