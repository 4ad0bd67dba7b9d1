"""
The ODE y'' = P + 3 Q y' + 3 R y'^2 + S y'^3 and point transformations acting on it.

Coordinates are always represented by the two symbols ``x`` and ``y``: an expression
"in the tilde coordinates" uses the same symbols, and moving between the two charts
is an explicit substitution of the forward or inverse map.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from dataclasses import field

import numpy as np
import sympy

from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.expr import Expr
from cubic_ode_invariants.core.expr import ExpressionError
from cubic_ode_invariants.core.expr import as_number
from cubic_ode_invariants.core.expr import canonical
from cubic_ode_invariants.core.expr import has_elementary
from cubic_ode_invariants.core.expr import opaque_atoms
from cubic_ode_invariants.core.expr import partial
from cubic_ode_invariants.core.expr import point_value
from cubic_ode_invariants.core.expr import probe_points
from cubic_ode_invariants.core.expr import relative_close
from cubic_ode_invariants.core.expr import to_text
from cubic_ode_invariants.core.fext import Scalar
from cubic_ode_invariants.core.fext import simplify

logger = logging.getLogger(__name__)

COEFFICIENT_NAMES = ("P", "Q", "R", "S")


class TransformationError(Exception):
    """Raised when a point transformation is not a valid local diffeomorphism."""

    pass


class PullbackError(TransformationError):
    """Raised when the transformed equation is not cubic in the slope."""

    pass


class ValenceError(Exception):
    """Raised when a pseudotensor operation gets a field of the wrong type."""

    pass


def compose(outer: Expr, inner: tuple[Expr, Expr]) -> Expr:
    """Substitute the pair ``inner`` for (x, y) in ``outer`` simultaneously."""
    return sympy.sympify(outer).xreplace({X: inner[0], Y: inner[1]})


@dataclass(frozen=True)
class OdeCoefficients:
    """
    Coefficients of y'' = P + 3 Q y' + 3 R y'^2 + S y'^3.

    Attributes:
        P: Free term
        Q: One third of the y' coefficient
        R: One third of the y'^2 coefficient
        S: Coefficient of y'^3
        name: Optional label carried into reports
    """

    P: Expr
    Q: Expr
    R: Expr
    S: Expr
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        for key in COEFFICIENT_NAMES:
            object.__setattr__(self, key, sympy.sympify(getattr(self, key)))

    @classmethod
    def zero(cls) -> OdeCoefficients:
        return cls(0, 0, 0, 0, name="y'' = 0")

    @classmethod
    def from_mapping(cls, values: dict, name: str | None = None) -> OdeCoefficients:
        return cls(*(values[key] for key in COEFFICIENT_NAMES), name=name)

    def as_tuple(self) -> tuple[Expr, Expr, Expr, Expr]:
        return (self.P, self.Q, self.R, self.S)

    def as_dict(self) -> dict[str, Expr]:
        return dict(zip(COEFFICIENT_NAMES, self.as_tuple(), strict=True))

    def to_text(self) -> dict[str, str]:
        return {key: to_text(value) for key, value in self.as_dict().items()}

    def simplified(self) -> OdeCoefficients:
        return OdeCoefficients(*(canonical(c) for c in self.as_tuple()), name=self.name)

    def xreplace(self, rule: dict) -> OdeCoefficients:
        return OdeCoefficients(*(c.xreplace(rule) for c in self.as_tuple()), name=self.name)

    @property
    def is_concrete(self) -> bool:
        """True when the coefficients contain no opaque function symbols."""
        return not any(opaque_atoms(c) for c in self.as_tuple())

    @property
    def has_elementary(self) -> bool:
        return any(has_elementary(c) for c in self.as_tuple())

    def right_hand_side(self, slope: Expr) -> Expr:
        return self.P + 3 * self.Q * slope + 3 * self.R * slope**2 + self.S * slope**3

    def equals(self, other: OdeCoefficients) -> bool:
        return all(canonical(a - b) == 0 for a, b in zip(self.as_tuple(), other.as_tuple(), strict=True))


@dataclass(frozen=True)
class PointTransformation:
    """
    A point transformation given in both directions.

    Attributes:
        forward: (x~, y~) as expressions in x, y
        inverse: (x, y) as expressions in the tilde coordinates (written with the symbols x, y)

    Example:
        >>> t = PointTransformation(forward=(X, 2 * Y), inverse=(X, Y / 2))
        >>> jacobians(t).detT
        2
    """

    forward: tuple[Expr, Expr]
    inverse: tuple[Expr, Expr]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "forward", tuple(sympy.sympify(e) for e in self.forward))
        object.__setattr__(self, "inverse", tuple(sympy.sympify(e) for e in self.inverse))
        if len(self.forward) != 2 or len(self.inverse) != 2:
            raise TransformationError("a point transformation needs exactly two component maps each way")
        for e in (*self.forward, *self.inverse):
            if opaque_atoms(e):
                raise TransformationError(f"map component {e} contains opaque symbols")

    @classmethod
    def identity(cls) -> PointTransformation:
        return cls((X, Y), (X, Y), name="identity")

    @classmethod
    def swap(cls) -> PointTransformation:
        return cls((Y, X), (Y, X), name="swap")

    @classmethod
    def affine(cls, matrix: Sequence[Sequence], shift: Sequence = (0, 0)) -> PointTransformation:
        """
        Affine map (x~, y~) = M (x, y) + b with its exact inverse.

        Raises:
            TransformationError: If M is singular
        """
        m = sympy.Matrix([[sympy.Rational(v) for v in row] for row in matrix])
        b = sympy.Matrix([sympy.Rational(v) for v in shift])
        if m.shape != (2, 2) or m.det() == 0:
            raise TransformationError(f"affine matrix {m.tolist()} is not invertible")
        source = sympy.Matrix([X, Y])
        forward = m * source + b
        inverse = m.inv() * (source - b)
        return cls(tuple(forward), tuple(inverse), name=f"affine {m.tolist()} + {list(b)}")

    def inverted(self) -> PointTransformation:
        return PointTransformation(self.inverse, self.forward, name=f"inverse of {self.name}" if self.name else None)

    def then(self, other: PointTransformation) -> PointTransformation:
        """The composite map: first ``self``, then ``other``."""
        forward = tuple(compose(e, self.forward) for e in other.forward)
        inverse = tuple(compose(e, other.inverse) for e in self.inverse)
        return PointTransformation(forward, inverse)

    def apply(self, x, y) -> tuple[float, float]:
        return _map_point(self.forward, x, y)

    def apply_inverse(self, x, y) -> tuple[float, float]:
        return _map_point(self.inverse, x, y)

    def apply_exact(self, x, y) -> tuple[Expr, Expr]:
        """Image of a point under the forward map, kept exact."""
        return point_value(self.forward[0], x, y), point_value(self.forward[1], x, y)

    def validate(self, points: int = 20, seed: int = 0, tolerance: float = 1e-9) -> None:
        """
        Check the round trip forward(inverse(p)) = p and det T != 0 at random points.

        Raises:
            TransformationError: On a round-trip mismatch, a vanishing Jacobian, or too few usable points
        """
        matrices = jacobians(self)
        usable = 0
        for xt, yt in probe_points(seed, 4 * points):
            try:
                x, y = self.apply_inverse(xt, yt)
                back = self.apply(x, y)
                det_t = _number_at(matrices.detT, x, y)
            except (ExpressionError, ZeroDivisionError, OverflowError, TypeError):
                continue
            if not all(math.isfinite(v) for v in (x, y, *back, det_t)):
                continue
            if not (relative_close(back[0], float(xt), tolerance) and relative_close(back[1], float(yt), tolerance)):
                raise TransformationError(f"forward(inverse({xt}, {yt})) = {back} is not a round trip")
            if det_t == 0:
                raise TransformationError(f"det T vanishes at ({x}, {y})")
            usable += 1
            if usable == points:
                return
        raise TransformationError(f"only {usable} of {points} probe points are usable for validation")


def _number_at(e: Expr, x, y) -> float:
    value = sympy.sympify(e).xreplace({X: as_number(x), Y: as_number(y)})
    number = complex(value.evalf())
    if number.imag != 0:
        return math.nan
    return number.real


def _map_point(pair: tuple[Expr, Expr], x, y) -> tuple[float, float]:
    return (_number_at(pair[0], x, y), _number_at(pair[1], x, y))


@dataclass(frozen=True)
class TransitionMatrices:
    """
    Direct and inverse transition matrices of a point transformation.

    ``Tmat`` holds the partials of the forward map and is a function of (x, y);
    ``Smat`` holds the partials of the inverse map and is a function of the tilde coordinates.
    """

    Smat: sympy.ImmutableMatrix
    Tmat: sympy.ImmutableMatrix
    detS: Expr
    detT: Expr
    forward: tuple[Expr, Expr]

    @property
    def Smat_at_source(self) -> sympy.ImmutableMatrix:  # noqa: N802
        """Smat with the forward map substituted, i.e. as a function of (x, y)."""
        return self.Smat.applyfunc(lambda e: compose(e, self.forward))

    def product_at_source(self) -> sympy.ImmutableMatrix:
        """Smat * Tmat at the composition point; the identity for a valid transformation."""
        return (self.Smat_at_source * self.Tmat).applyfunc(canonical)

    def at(self, x, y) -> tuple[np.ndarray, np.ndarray]:
        """Numeric (Smat, Tmat) at the source point (x, y)."""
        smat = self.Smat_at_source
        return (
            np.array([[_number_at(smat[i, j], x, y) for j in range(2)] for i in range(2)]),
            np.array([[_number_at(self.Tmat[i, j], x, y) for j in range(2)] for i in range(2)]),
        )


def jacobians(t: PointTransformation) -> TransitionMatrices:
    """
    Transition matrices laid out as S = [[x_1.0, x_0.1], [y_1.0, y_0.1]] and T likewise for the forward map.

    Example:
        >>> m = jacobians(PointTransformation((X, Y + X**2), (X, Y - X**2)))
        >>> m.Tmat
        Matrix([
        [  1, 0],
        [2*x, 1]])
    """
    tmat = sympy.ImmutableMatrix([[partial(e, 1, 0), partial(e, 0, 1)] for e in t.forward])
    smat = sympy.ImmutableMatrix([[partial(e, 1, 0), partial(e, 0, 1)] for e in t.inverse])
    return TransitionMatrices(
        Smat=smat, Tmat=tmat, detS=canonical(smat.det()), detT=canonical(tmat.det()), forward=t.forward
    )


def pullback(ode: OdeCoefficients, t: PointTransformation) -> OdeCoefficients:
    """
    Coefficients of the equation in the tilde coordinates.

    Substitutes the inverse map into the equation, writes y' and y'' through the
    tilde slope, solves for y~'' and reads off P~, 3Q~, 3R~, S~ from the cubic.

    Raises:
        PullbackError: If the coefficients are symbolic or the result is not cubic in the slope
    """
    if not ode.is_concrete:
        raise PullbackError("pullback needs concrete coefficients in x and y")
    slope = sympy.Dummy("slope")
    (x, y) = t.inverse
    x10, x01, y10, y01 = partial(x, 1, 0), partial(x, 0, 1), partial(y, 1, 0), partial(y, 0, 1)
    numerator = y10 + y01 * slope
    denominator = x10 + x01 * slope
    numerator_prime = partial(y, 2, 0) + 2 * partial(y, 1, 1) * slope + partial(y, 0, 2) * slope**2
    denominator_prime = partial(x, 2, 0) + 2 * partial(x, 1, 1) * slope + partial(x, 0, 2) * slope**2
    det_s = canonical(x10 * y01 - x01 * y10)
    if det_s == 0:
        raise TransformationError("the inverse map has an identically vanishing Jacobian")
    P, Q, R, S = (compose(c, t.inverse) for c in ode.as_tuple())
    rhs = (
        P * denominator**3
        + 3 * Q * numerator * denominator**2
        + 3 * R * numerator**2 * denominator
        + S * numerator**3
        - (numerator_prime * denominator - numerator * denominator_prime)
    )
    poly = sympy.Poly(sympy.expand(rhs), slope)
    coefficients = [canonical(poly.coeff_monomial(slope**k)) for k in range(max(poly.degree(), 3) + 1)]
    residue = [k for k, c in enumerate(coefficients) if k > 3 and c != 0]
    if residue:
        raise PullbackError(f"transformed equation has nonzero slope powers {residue}")
    c0, c1, c2, c3 = coefficients[:4]
    result = OdeCoefficients(
        canonical(c0 / det_s),
        canonical(c1 / (3 * det_s)),
        canonical(c2 / (3 * det_s)),
        canonical(c3 / det_s),
        name=f"{ode.name or 'ode'} pulled back" if ode.name or t.name else None,
    )
    logger.debug("pullback of %s under %s computed", ode.name, t.name)
    return result


def transport_initial_data(t: PointTransformation, x, y, slope) -> tuple[float, float, float]:
    """Image of a point and a slope y' under the forward map."""
    matrices = jacobians(t)
    _, tmat = matrices.at(x, y)
    xt, yt = t.apply(x, y)
    return xt, yt, (tmat[1, 0] + tmat[1, 1] * slope) / (tmat[0, 0] + tmat[0, 1] * slope)


def transport_trajectory(t: PointTransformation, trajectory: np.ndarray) -> np.ndarray:
    """
    Rows (x, y, y') of a solution mapped through the forward map.

    The image of a solution of an equation solves its pullback under ``t``: integrating the
    pulled-back equation from the first transported row reproduces the remaining rows.
    """
    return np.array([transport_initial_data(t, *row) for row in trajectory])


def integrate_trajectory(ode: OdeCoefficients, start: tuple, slope: float, stop: float, steps: int = 200) -> np.ndarray:
    """
    Integrate the equation with the classical fourth-order Runge-Kutta scheme.

    Args:
        ode: Concrete coefficients
        start: Initial point (x0, y0)
        slope: Initial y'(x0)
        stop: Final abscissa
        steps: Number of equal steps

    Returns:
        Array of shape (steps + 1, 3) with rows (x, y, y')
    """
    if not ode.is_concrete:
        raise ValueError("integration needs concrete coefficients")
    p = sympy.Symbol("p")
    rhs = sympy.lambdify((X, Y, p), ode.right_hand_side(p), modules="numpy")
    x0, y0 = float(start[0]), float(start[1])
    h = (float(stop) - x0) / steps
    trajectory = np.empty((steps + 1, 3))
    state = np.array([y0, float(slope)])

    def velocity(x: float, s: np.ndarray) -> np.ndarray:
        return np.array([s[1], float(rhs(x, s[0], s[1]))])

    x = x0
    trajectory[0] = (x, *state)
    for i in range(1, steps + 1):
        k1 = velocity(x, state)
        k2 = velocity(x + h / 2, state + h / 2 * k1)
        k3 = velocity(x + h / 2, state + h / 2 * k2)
        k4 = velocity(x + h, state + h * k3)
        state = state + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        x = x0 + i * h
        trajectory[i] = (x, *state)
    return trajectory


# ---------------------------------------------------------------------------
# Pseudotensorial fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PseudoField:
    """
    Components of a pseudotensorial field of type (r, s) and weight m.

    Components are stored flat in row-major order over the index tuple
    (upper indices first, then lower indices), each index being 0 or 1.
    """

    components: tuple
    valence: tuple[int, int]
    weight: int

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        expected = 2 ** sum(self.valence)
        if len(self.components) != expected:
            raise ValenceError(f"type {self.valence} needs {expected} components, got {len(self.components)}")

    @classmethod
    def scalar(cls, value: Scalar, weight: int = 0) -> PseudoField:
        return cls((value,), (0, 0), weight)

    @classmethod
    def covector(cls, first: Scalar, second: Scalar, weight: int) -> PseudoField:
        return cls((first, second), (0, 1), weight)

    @classmethod
    def vector(cls, first: Scalar, second: Scalar, weight: int) -> PseudoField:
        return cls((first, second), (1, 0), weight)

    def component(self, *indices: int) -> Scalar:
        if len(indices) != sum(self.valence):
            raise ValenceError(f"type {self.valence} field takes {sum(self.valence)} indices")
        flat = 0
        for index in indices:
            flat = 2 * flat + index
        return self.components[flat]

    def simplified(self) -> PseudoField:
        return PseudoField(tuple(simplify(c) for c in self.components), self.valence, self.weight)


def transform_components(f: PseudoField, t: PointTransformation) -> PseudoField:
    """
    Components in (x, y) of a field whose components are given in the tilde coordinates.

    Each upper index contracts with S, each lower index with T, and the whole
    sum is scaled by (det T)^m.

    Example:
        >>> d = transform_components(d_lower(), PointTransformation((X, Y + X**2), (X, Y - X**2)))
        >>> d.components
        (0, 1, -1, 0)
    """
    r, s = f.valence
    matrices = jacobians(t)
    smat = matrices.Smat_at_source
    tmat = matrices.Tmat
    tilde = [compose(c, t.forward) for c in f.components]
    scale = matrices.detT**f.weight
    out = []
    for indices in itertools.product((0, 1), repeat=r + s):
        upper, lower = indices[:r], indices[r:]
        total = sympy.Integer(0)
        for summed in itertools.product((0, 1), repeat=r + s):
            ps, qs = summed[:r], summed[r:]
            factor = sympy.Integer(1)
            for i, p in zip(upper, ps, strict=True):
                factor *= smat[i, p]
            for j, q in zip(lower, qs, strict=True):
                factor *= tmat[q, j]
            flat = 0
            for index in summed:
                flat = 2 * flat + index
            total += factor * tilde[flat]
        out.append(canonical(scale * total))
    return PseudoField(tuple(out), f.valence, f.weight)


def d_lower() -> PseudoField:
    """The skew field d_ij = [[0, 1], [-1, 0]] of type (0, 2) and weight -1."""
    return PseudoField((0, 1, -1, 0), (0, 2), -1)


def d_upper() -> PseudoField:
    """The skew field d^ij = [[0, 1], [-1, 0]] of type (2, 0) and weight 1."""
    return PseudoField((0, 1, -1, 0), (2, 0), 1)


def raise_index(covector: PseudoField) -> PseudoField:
    """
    alpha^i = sum_k d^ik alpha_k, so (a1, a2) becomes (a2, -a1) with weight raised by one.

    Raises:
        ValenceError: If the field is not of type (0, 1)
    """
    if covector.valence != (0, 1):
        raise ValenceError(f"raise_index needs a (0, 1) field, got {covector.valence}")
    d = d_upper()
    first, second = covector.components
    components = tuple(
        d.component(i, 0) * first + d.component(i, 1) * second for i in (0, 1)
    )
    return PseudoField(components, (1, 0), covector.weight + 1)


def lower_index(vector: PseudoField) -> PseudoField:
    """
    alpha_i = sum_k alpha^k d_ki, the inverse of :func:`raise_index`.

    Raises:
        ValenceError: If the field is not of type (1, 0)
    """
    if vector.valence != (1, 0):
        raise ValenceError(f"lower_index needs a (1, 0) field, got {vector.valence}")
    d = d_lower()
    first, second = vector.components
    components = tuple(first * d.component(0, i) + second * d.component(1, i) for i in (0, 1))
    return PseudoField(components, (0, 1), vector.weight - 1)

