"""
Expression kernel.

Expressions are immutable sympy trees over the two plane variables ``x`` and ``y``,
exact rationals, the elementary functions sin, cos, exp, ln and opaque function
symbols carrying a formal derivative index.  An opaque symbol ``B`` with index
``(p, q)`` stands for the partial derivative B_{p.q} and is a plain sympy Symbol
named ``"B_{p.q}"`` (or just ``"B"`` for the index ``(0, 0)``), so mixed partials
commute by construction and polynomial gcd machinery treats it as an ordinary atom.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Protocol

import numpy as np
import sympy
from sympy.printing.precedence import PRECEDENCE
from sympy.printing.str import StrPrinter

logger = logging.getLogger(__name__)

Expr = sympy.Expr

X = sympy.Symbol("x")
Y = sympy.Symbol("y")

ELEMENTARY_FUNCTIONS = (sympy.sin, sympy.cos, sympy.exp, sympy.log)
RESERVED_NAMES = frozenset({"x", "y", "sin", "cos", "exp", "ln"})
PROBE_BOUND = 97
PRECISE_DIGITS = 50

_OPAQUE_NAME = re.compile(r"^(?P<name>[A-Za-z][A-Za-z0-9]*)(?:_\{(?P<p>\d+)\.(?P<q>\d+)\})?$")
_NOT_FINITE = (sympy.zoo, sympy.nan, sympy.oo, -sympy.oo)


class ExpressionError(Exception):
    """Base class for failures of the expression kernel."""

    pass


class EvaluationError(ExpressionError):
    """Raised when an expression cannot be evaluated to a real number."""

    pass


class PoleError(EvaluationError):
    """Raised when evaluation hits a division by zero."""

    pass


class UnboundSymbolError(EvaluationError):
    """Raised when an opaque symbol has no numeric binding."""

    pass


class DegenerateDivisionError(ExpressionError):
    """Raised when an expression divides by something identically zero."""

    pass


class LinearSolveError(ExpressionError):
    """Raised when an equation is not linear in the requested atom."""

    pass


# ---------------------------------------------------------------------------
# Opaque symbols
# ---------------------------------------------------------------------------


def opaque(name: str, p: int = 0, q: int = 0) -> sympy.Symbol:
    """
    Build the opaque symbol ``name_{p.q}``.

    Args:
        name: Symbol name, a letter followed by letters or digits
        p: Number of x-derivatives
        q: Number of y-derivatives

    Returns:
        sympy Symbol standing for the formal partial derivative

    Raises:
        ValueError: If the name is reserved or malformed, or an index is negative

    Example:
        >>> opaque("B", 1, 0)
        B_{1.0}
    """
    if name in RESERVED_NAMES or not _OPAQUE_NAME.match(name) or "_" in name:
        raise ValueError(f"'{name}' cannot be used as an opaque symbol name")
    if p < 0 or q < 0:
        raise ValueError(f"derivative index ({p}, {q}) must be non-negative")
    if p == 0 and q == 0:
        return sympy.Symbol(name)
    return sympy.Symbol(f"{name}_{{{p}.{q}}}")


def opaque_parts(symbol: sympy.Basic) -> tuple[str, int, int] | None:
    """Split an opaque symbol into (name, p, q); None for anything else."""
    if not isinstance(symbol, sympy.Symbol) or isinstance(symbol, sympy.Dummy) or symbol in (X, Y):
        return None
    match = _OPAQUE_NAME.match(symbol.name)
    if match is None:
        return None
    p = int(match.group("p") or 0)
    q = int(match.group("q") or 0)
    return match.group("name"), p, q


def is_opaque(symbol: sympy.Basic) -> bool:
    return opaque_parts(symbol) is not None


def shift(symbol: sympy.Symbol, p: int, q: int) -> sympy.Symbol:
    """Raise the derivative index of an opaque symbol by (p, q)."""
    parts = opaque_parts(symbol)
    if parts is None:
        raise ValueError(f"{symbol} is not an opaque symbol")
    name, a, b = parts
    return opaque(name, a + p, b + q)


def opaque_atoms(e: Expr) -> set[sympy.Symbol]:
    return {s for s in sympy.sympify(e).free_symbols if is_opaque(s)}


def atom_key(atom: sympy.Basic) -> tuple:
    """Ordering key: x < y < opaque symbols by (name, index) < function applications."""
    if atom == X:
        return (0, "", 0, 0)
    if atom == Y:
        return (1, "", 0, 0)
    parts = opaque_parts(atom)
    if parts is not None:
        return (2, *parts)
    return (3, sympy.srepr(atom), 0, 0)


def has_elementary(e: Expr) -> bool:
    """True when the expression contains sin, cos, exp or ln applications."""
    return bool(sympy.sympify(e).atoms(*ELEMENTARY_FUNCTIONS))


# ---------------------------------------------------------------------------
# Differentiation
# ---------------------------------------------------------------------------


@lru_cache(maxsize=16384)
def _derive(e: Expr, axis: int) -> Expr:
    variable, step = (X, (1, 0)) if axis == 0 else (Y, (0, 1))
    result = sympy.diff(e, variable)
    for symbol in sorted(opaque_atoms(e), key=atom_key):
        coefficient = sympy.diff(e, symbol)
        if coefficient != 0:
            result += coefficient * shift(symbol, *step)
    return result


def partial(e: Expr, p: int, q: int) -> Expr:
    """
    Total partial derivative d^{p+q} e / dx^p dy^q.

    Opaque symbols are treated as functions of (x, y): B_{a.b} differentiates
    to B_{a+1.b} in x and to B_{a.b+1} in y.

    Args:
        e: Expression to differentiate
        p: Order in x
        q: Order in y

    Returns:
        The derivative (not simplified)

    Example:
        >>> partial(X**2 * Y, 1, 1)
        2*x
    """
    if p < 0 or q < 0:
        raise ValueError(f"derivative order ({p}, {q}) must be non-negative")
    result = sympy.sympify(e)
    for _ in range(p):
        result = _derive(result, 0)
    for _ in range(q):
        result = _derive(result, 1)
    return result


class Calculus(Protocol):
    """
    Differentiation plus simplification.

    The plane calculus below differentiates freely; the special-coordinates
    frame supplies one that also applies its rewrite rules.
    """

    def partial(self, e: Expr, p: int, q: int) -> Expr: ...

    def simplify(self, e: Expr) -> Expr: ...


class PlaneCalculus:
    """Unconstrained differentiation in the (x, y) plane."""

    def partial(self, e: Expr, p: int, q: int) -> Expr:
        return partial(e, p, q)

    def simplify(self, e: Expr) -> Expr:
        return canonical(e)

    def __repr__(self) -> str:
        return "PlaneCalculus()"


PLANE = PlaneCalculus()


# ---------------------------------------------------------------------------
# Normal forms and equality
# ---------------------------------------------------------------------------


def canonical(e: Expr) -> Expr:
    """Reduce to a single fraction with coprime expanded numerator and denominator."""
    e = sympy.sympify(e)
    if e.has(*_NOT_FINITE):
        raise DegenerateDivisionError(f"division by an identically zero expression in {e}")
    try:
        result = sympy.cancel(e)
    except ZeroDivisionError as err:
        raise DegenerateDivisionError(f"division by an identically zero expression in {e}") from err
    if result.has(*_NOT_FINITE):
        raise DegenerateDivisionError(f"division by an identically zero expression in {e}")
    return result


def is_zero(e: Expr) -> bool:
    """Exact decision for rational expressions; False when transcendental atoms block the decision."""
    return canonical(e) == 0


@dataclass(frozen=True)
class NormalForm:
    """
    Canonical numerator/denominator pair over the ordered atom set.

    Numerator and denominator are coprime and the denominator's leading
    coefficient (lexicographic in the atom order) is 1.
    """

    numerator: sympy.Poly
    denominator: sympy.Poly

    @property
    def gens(self) -> tuple:
        return tuple(self.numerator.gens)

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def as_expr(self) -> Expr:
        return self.numerator.as_expr() / self.denominator.as_expr()


def _generators(e: Expr) -> set:
    e = sympy.sympify(e)
    found = {s for s in e.free_symbols if s in (X, Y) or is_opaque(s)}
    found |= e.atoms(*ELEMENTARY_FUNCTIONS)
    return found


def normalize(e: Expr) -> NormalForm:
    """
    Normal form of an expression as a rational function of its atoms.

    Raises:
        DegenerateDivisionError: If the expression divides by an identically zero expression
    """
    reduced = canonical(e)
    numerator, denominator = sympy.fraction(reduced)
    gens = sorted(_generators(numerator) | _generators(denominator), key=atom_key) or [X]
    try:
        num_poly = sympy.Poly(numerator, *gens, domain=sympy.QQ)
        den_poly = sympy.Poly(denominator, *gens, domain=sympy.QQ)
    except sympy.PolynomialError:
        (num_poly, den_poly), _ = sympy.parallel_poly_from_expr([numerator, denominator], domain=sympy.QQ)
    if den_poly.is_zero:
        raise DegenerateDivisionError(f"zero denominator in {e}")
    leading = den_poly.LC()
    return NormalForm(num_poly.quo_ground(leading), den_poly.quo_ground(leading))


@dataclass(frozen=True)
class Equality:
    """
    Verdict of :func:`equal`.

    Attributes:
        holds: Whether the two sides agree
        exact: False when the verdict came from numeric probing only
        caveat: Note about the domain of validity or the probabilistic nature
    """

    holds: bool
    exact: bool = True
    caveat: str | None = None

    def __bool__(self) -> bool:
        return self.holds


def _has_symbolic_denominator(e: Expr) -> bool:
    for node in sympy.preorder_traversal(sympy.sympify(e)):
        if isinstance(node, sympy.Pow) and node.exp.is_negative and not node.base.is_number:
            return True
    return False


def equal(a: Expr, b: Expr, seed: int = 0, trials: int = 20, tolerance: float = 1e-9) -> Equality:
    """
    Decide whether two expressions are equal as functions.

    Rational expressions are decided exactly through their normal forms.  When
    transcendental atoms block the decision, both sides are compared at
    ``trials`` random rational points and a probable (inexact) verdict is returned.

    Example:
        >>> bool(equal((X + Y) ** 2, X**2 + 2 * X * Y + Y**2))
        True
    """
    a, b = sympy.sympify(a), sympy.sympify(b)
    guarded = _has_symbolic_denominator(a) or _has_symbolic_denominator(b)
    caveat = "holds where denominators are nonzero" if guarded else None
    difference = a - b
    if is_zero(difference):
        return Equality(True, True, caveat)
    if not has_elementary(difference):
        return Equality(False, True, caveat)
    holds = numerically_equal(a, b, seed=seed, trials=trials, tolerance=tolerance)
    return Equality(holds, False, f"probable: numeric agreement at {trials} random points")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def as_number(value) -> sympy.Expr:
    if isinstance(value, sympy.Basic):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return sympy.Integer(value)
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, float):
        return sympy.Float(value)
    return sympy.Rational(str(value))


def _binding_map(bindings) -> dict:
    result = {}
    for key, value in (bindings or {}).items():
        symbol = sympy.Symbol(key) if isinstance(key, str) else key
        result[symbol] = as_number(value)
    return result


def evaluate(e: Expr, x, y, bindings: dict | None = None) -> Fraction | float:
    """
    Evaluate an expression at a point.

    Args:
        e: Expression
        x: Value of x (int, Fraction, float or sympy number)
        y: Value of y
        bindings: Values of the opaque symbols, keyed by symbol or name

    Returns:
        Fraction when every input is rational and no elementary function occurs, float otherwise

    Raises:
        UnboundSymbolError: If an opaque symbol has no binding
        PoleError: If the point is a pole
        EvaluationError: If the value is not real

    Example:
        >>> evaluate(64 * X**5 - 24, 0, 0)
        Fraction(-24, 1)
    """
    e = sympy.sympify(e)
    bound = _binding_map(bindings)
    substitution = {X: as_number(x), Y: as_number(y)}
    for symbol in opaque_atoms(e):
        if symbol not in bound:
            raise UnboundSymbolError(f"no value bound for {symbol}")
        substitution[symbol] = bound[symbol]
    value = e.xreplace(substitution)
    if value.has(*_NOT_FINITE):
        raise PoleError(f"{e} has a pole at ({x}, {y})")
    if value.free_symbols:
        raise UnboundSymbolError(f"free symbols {sorted(map(str, value.free_symbols))} remain in {e}")
    if value.is_Rational:
        return Fraction(int(value.p), int(value.q))
    numeric = value.evalf()
    if numeric.has(*_NOT_FINITE):
        raise PoleError(f"{e} has a pole at ({x}, {y})")
    real, imaginary = numeric.as_real_imag()
    if imaginary != 0:
        raise EvaluationError(f"{e} is not real at ({x}, {y})")
    return float(real)


def point_value(e: Expr, x, y) -> Expr:
    """
    Exact value of an expression free of opaque symbols at a point.

    The coordinates may be any exact sympy numbers, including values such as ``sin(1/3)``
    produced by mapping a rational point through a transcendental map.

    Raises:
        UnboundSymbolError: If an opaque symbol occurs
        PoleError: If the point is a pole
    """
    e = sympy.sympify(e)
    if opaque_atoms(e):
        raise UnboundSymbolError(f"no value bound for {min(opaque_atoms(e), key=atom_key)}")
    value = e.xreplace({X: as_number(x), Y: as_number(y)})
    if value.has(*_NOT_FINITE):
        raise PoleError(f"{e} has a pole at ({x}, {y})")
    return value


def finish_precise(value: Expr, digits: int = PRECISE_DIGITS) -> sympy.Float:
    """
    Evaluate an exact constant to ``digits`` significant digits.

    Raises:
        PoleError: If the value is not finite
        EvaluationError: If the value is not real
    """
    numeric = sympy.sympify(value).evalf(digits)
    if numeric.has(*_NOT_FINITE):
        raise PoleError(f"{value} is not finite")
    real, imaginary = numeric.as_real_imag()
    if imaginary != 0:
        raise EvaluationError(f"{value} is not real")
    return sympy.Float(real, digits)


def precise_value(e: Expr, x, y, digits: int = PRECISE_DIGITS) -> sympy.Float:
    """
    Value at a point, carried to ``digits`` significant digits.

    Example:
        >>> precise_value(X / 3, 1, 0, digits=20)
        0.33333333333333333333
    """
    return finish_precise(point_value(e, x, y), digits)


@lru_cache(maxsize=1024)
def _vectorized(e: Expr, symbols: tuple):
    return sympy.lambdify(symbols, e, modules="numpy")


def numeric_values(e: Expr, xs: np.ndarray, ys: np.ndarray, bindings: dict | None = None) -> np.ndarray:
    """
    Floating-point values of an expression at many points at once.

    Poles and non-real values come back as non-finite entries.
    """
    e = sympy.sympify(e)
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    bound = _binding_map(bindings)
    extra = tuple(sorted(opaque_atoms(e), key=atom_key))
    missing = [s for s in extra if s not in bound]
    if missing:
        raise UnboundSymbolError(f"no value bound for {missing[0]}")
    function = _vectorized(e, (X, Y, *extra))
    with np.errstate(all="ignore"):
        values = function(xs, ys, *(float(bound[s]) for s in extra))
        values = np.asarray(values, dtype=complex)
    values = np.broadcast_to(values, xs.shape)
    return np.where(np.abs(values.imag) > 0, np.nan, values.real)


def probe_points(seed: int, count: int) -> list[tuple[Fraction, Fraction]]:
    """
    Seeded rational probe points with numerators in [-97, 97] and denominators in [1, 97].

    The same seed and count always yield the same points.
    """
    rng = np.random.default_rng(seed)
    numerators = rng.integers(-PROBE_BOUND, PROBE_BOUND + 1, size=(count, 2))
    denominators = rng.integers(1, PROBE_BOUND + 1, size=(count, 2))
    return [
        (Fraction(int(n[0]), int(d[0])), Fraction(int(n[1]), int(d[1])))
        for n, d in zip(numerators, denominators, strict=True)
    ]


def relative_close(a: float, b: float, tolerance: float) -> bool:
    return abs(a - b) <= tolerance * max(1.0, abs(a), abs(b))


def numerically_equal(a: Expr, b: Expr, seed: int = 0, trials: int = 20, tolerance: float = 1e-9) -> bool:
    """
    Compare two expressions at ``trials`` random points where both are finite.

    Points where either side has a pole are skipped; too few usable points count as disagreement.
    """
    points = np.array([[float(px), float(py)] for px, py in probe_points(seed, 4 * trials)])
    left = numeric_values(a, points[:, 0], points[:, 1])
    right = numeric_values(b, points[:, 0], points[:, 1])
    usable = np.isfinite(left) & np.isfinite(right)
    if usable.sum() < trials:
        logger.debug("only %d usable probe points out of %d", usable.sum(), len(points))
        return False
    left, right = left[usable][:trials], right[usable][:trials]
    scale = np.maximum(1.0, np.maximum(np.abs(left), np.abs(right)))
    return bool(np.all(np.abs(left - right) <= tolerance * scale))


# ---------------------------------------------------------------------------
# Linear solving
# ---------------------------------------------------------------------------


def solve_linear_for(lhs: Expr, rhs: Expr, symbol: sympy.Symbol) -> Expr:
    """
    Solve ``lhs = rhs`` for an atom that occurs linearly.

    Raises:
        LinearSolveError: If the atom is absent, occurs nonlinearly, or has a vanishing coefficient

    Example:
        >>> s = opaque("s")
        >>> solve_linear_for(2 * s - 4 * X, 0, s)
        2*x
    """
    equation = sympy.sympify(lhs) - sympy.sympify(rhs)
    if symbol not in equation.free_symbols:
        raise LinearSolveError(f"{symbol} does not occur in the equation")
    coefficient = canonical(sympy.diff(equation, symbol))
    if coefficient == 0:
        raise LinearSolveError(f"coefficient of {symbol} vanishes identically")
    if symbol in coefficient.free_symbols:
        raise LinearSolveError(f"equation is not linear in {symbol}")
    remainder = equation.xreplace({symbol: sympy.Integer(0)})
    return canonical(-remainder / coefficient)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


class _GrammarPrinter(StrPrinter):
    """StrPrinter variant whose output re-parses with :func:`parse`."""

    def _print_Pow(self, expr, rational=False):
        base, exponent = expr.args
        if not exponent.is_Integer:
            raise ExpressionError(f"non-integer power {expr} has no textual form")
        if exponent < 0:
            positive = sympy.Pow(base, -exponent)
            return f"1/{self.parenthesize(positive, PRECEDENCE['Mul'], strict=True)}"
        return f"{self.parenthesize(base, PRECEDENCE['Pow'], strict=True)}^{exponent}"

    def _print_log(self, expr):
        return f"ln({self._print(expr.args[0])})"

    def _print_Exp1(self, expr):
        return "exp(1)"


def to_text(e: Expr) -> str:
    """Render an expression in the input grammar (``^`` powers, ``ln``)."""
    return _GrammarPrinter().doprint(sympy.sympify(e))
