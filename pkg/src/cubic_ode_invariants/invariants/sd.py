# ruff: noqa: N802, N803, N806, N815
"""
Covariant invariants built from the pseudocovector fields alpha = (A, B) and beta = (-H, G).

The chain runs A, B -> G, H -> F^5 -> frame X, Y and connection -> scalar invariants
I1..I8, L, K.  Every formula is written once against an :class:`SdJet`, so the same
code evaluates on a concrete equation (F as the formal fifth root in :class:`FExt`)
and on the special-coordinates frame (F as an opaque symbol with rewrite rules).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import sympy

from cubic_ode_invariants.core.expr import PLANE
from cubic_ode_invariants.core.expr import Calculus
from cubic_ode_invariants.core.expr import Expr
from cubic_ode_invariants.core.expr import is_zero
from cubic_ode_invariants.core.fext import FExt
from cubic_ode_invariants.core.fext import Scalar
from cubic_ode_invariants.core.fext import derivative
from cubic_ode_invariants.core.fext import simplify
from cubic_ode_invariants.core.fext import vanishes
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.core.ode import PseudoField

logger = logging.getLogger(__name__)

Vector = tuple[Scalar, Scalar]


class NotGeneralPositionError(Exception):
    """Raised when F^5 (equivalently J0) vanishes identically."""

    pass


class SingularFrameError(Exception):
    """Raised when the frame X, Y is degenerate and cannot be solved against."""

    pass


def covector_alpha(ode: OdeCoefficients, calculus: Calculus = PLANE) -> tuple[Expr, Expr]:
    """
    Components (A, B) of the weight-1 pseudocovector field alpha.

    Example:
        >>> covector_alpha(OdeCoefficients(1, 0, 0, X**2))
        (4*x, 2)
    """
    P, Q, R, S = ode.as_tuple()

    def d(e, p, q):
        return calculus.partial(e, p, q)

    A = (
        d(P, 0, 2) - 2 * d(Q, 1, 1) + d(R, 2, 0)
        + 2 * P * d(S, 1, 0) + S * d(P, 1, 0)
        - 3 * P * d(R, 0, 1) - 3 * R * d(P, 0, 1)
        - 3 * Q * d(R, 1, 0) + 6 * Q * d(Q, 0, 1)
    )
    B = (
        d(S, 2, 0) - 2 * d(R, 1, 1) + d(Q, 0, 2)
        - 2 * S * d(P, 0, 1) - P * d(S, 0, 1)
        + 3 * S * d(Q, 1, 0) + 3 * Q * d(S, 1, 0)
        + 3 * R * d(Q, 0, 1) - 6 * R * d(R, 1, 0)
    )
    return calculus.simplify(A), calculus.simplify(B)


def covector_beta(
    ode: OdeCoefficients, alpha: tuple[Expr, Expr] | None = None, calculus: Calculus = PLANE
) -> tuple[Expr, Expr]:
    """
    Components (G, H) of the weight-3 field beta; beta_1 = -H and beta_2 = G.

    Example:
        >>> covector_beta(OdeCoefficients(1, 0, 0, X**2))
        (48*x**4, -36)
    """
    P, Q, R, S = ode.as_tuple()
    A, B = alpha if alpha is not None else covector_alpha(ode, calculus)

    def d(e, p, q):
        return calculus.partial(e, p, q)

    G = -B * d(B, 1, 0) - 3 * A * d(B, 0, 1) + 4 * B * d(A, 0, 1) + 3 * S * A**2 - 6 * R * B * A + 3 * Q * B**2
    H = -A * d(A, 0, 1) - 3 * B * d(A, 1, 0) + 4 * A * d(B, 1, 0) - 3 * P * B**2 + 6 * Q * A * B - 3 * R * A**2
    return calculus.simplify(G), calculus.simplify(H)


def pseudoscalar_f5(
    ode: OdeCoefficients, alpha: tuple[Expr, Expr] | None = None, calculus: Calculus = PLANE
) -> Expr:
    """
    The weight-5 pseudoscalar F^5.

    Example:
        >>> pseudoscalar_f5(OdeCoefficients(1, 0, 0, X**2))
        64*x**5 - 24
    """
    P, Q, R, S = ode.as_tuple()
    A, B = alpha if alpha is not None else covector_alpha(ode, calculus)

    def d(e, p, q):
        return calculus.partial(e, p, q)

    F5 = (
        A * B * d(A, 0, 1) + B * A * d(B, 1, 0) - A**2 * d(B, 0, 1) - B**2 * d(A, 1, 0)
        - P * B**3 + 3 * Q * A * B**2 - 3 * R * A**2 * B + S * A**3
    )
    return calculus.simplify(F5)


def apply_vector(vector: Vector, value: Scalar, calculus: Calculus = PLANE) -> Scalar:
    """Directional derivative of a scalar along a vector field."""
    along_x = vector[0] * derivative(value, 1, 0, calculus)
    along_y = vector[1] * derivative(value, 0, 1, calculus)
    return simplify(along_x + along_y, calculus)


@dataclass(frozen=True)
class SdJet:
    """
    Everything the scalar formulas read: coefficients, A, B, G, H, the pseudoscalar F and the calculus.

    ``F`` is either an :class:`FExt` generator (concrete equations) or a plain
    expression such as an opaque symbol (special coordinates).
    """

    ode: OdeCoefficients
    A: Expr
    B: Expr
    G: Expr
    H: Expr
    F5: Expr
    F: Scalar
    calculus: Calculus = PLANE

    @classmethod
    def from_ode(cls, ode: OdeCoefficients, calculus: Calculus = PLANE) -> SdJet:
        """
        Build the jet of a concrete equation, adjoining f with f^5 = F^5.

        Raises:
            NotGeneralPositionError: If F^5 vanishes identically
        """
        A, B = covector_alpha(ode, calculus)
        G, H = covector_beta(ode, (A, B), calculus)
        F5 = pseudoscalar_f5(ode, (A, B), calculus)
        if is_zero(F5):
            raise NotGeneralPositionError(f"F^5 vanishes identically for {ode.name or 'this equation'}")
        return cls(ode, A, B, G, H, F5, FExt.generator(F5), calculus)

    def d(self, value: Scalar, p: int, q: int) -> Scalar:
        return derivative(value, p, q, self.calculus)

    def apply(self, vector: Vector, value: Scalar) -> Scalar:
        return apply_vector(vector, value, self.calculus)

    @property
    def log_derivatives(self) -> tuple[Scalar, Scalar]:
        """(F_1.0 / F, F_0.1 / F)."""
        return (
            simplify(self.d(self.F, 1, 0) / self.F, self.calculus),
            simplify(self.d(self.F, 0, 1) / self.F, self.calculus),
        )


@dataclass(frozen=True)
class Connection:
    """
    Components Gamma^k_ij of the affine connection, symmetric in i, j; indices are 1-based.
    """

    g111: Scalar
    g211: Scalar
    g112: Scalar
    g212: Scalar
    g122: Scalar
    g222: Scalar

    def component(self, k: int, i: int, j: int) -> Scalar:
        i, j = sorted((i, j))
        return getattr(self, f"g{k}{i}{j}")

    def covariant(self, jet: SdJet, along: Vector, field: Vector) -> Vector:
        """(nabla_U V)^k = U(V^k) + sum_ij Gamma^k_ij U^i V^j."""
        out = []
        for k in (1, 2):
            total = jet.apply(along, field[k - 1])
            for i in (1, 2):
                for j in (1, 2):
                    total = total + self.component(k, i, j) * along[i - 1] * field[j - 1]
            out.append(simplify(total, jet.calculus))
        return tuple(out)


def connection(jet: SdJet) -> Connection:
    P, Q, R, S = jet.ode.as_tuple()
    phi_x, phi_y = jet.log_derivatives
    third = sympy.Rational(1, 3)
    return Connection(
        g111=Q + 2 * third * phi_x,
        g211=-P,
        g112=R + third * phi_y,
        g212=-Q + third * phi_x,
        g122=S,
        g222=-R + 2 * third * phi_y,
    )


@dataclass(frozen=True)
class SdCore:
    """
    Relative invariants and the invariant frame of one equation.

    Attributes:
        A, B: Components of the weight-1 pseudocovector alpha
        G, H: Components entering the weight-3 pseudocovector beta = (-H, G)
        F5: The weight-5 pseudoscalar
        connection: The six connection components
        X, Y: The frame (B/F^2, -A/F^2) and (G/F^4, H/F^4)
    """

    jet: SdJet
    connection: Connection
    X: Vector
    Y: Vector

    @property
    def A(self) -> Expr:
        return self.jet.A

    @property
    def B(self) -> Expr:
        return self.jet.B

    @property
    def G(self) -> Expr:
        return self.jet.G

    @property
    def H(self) -> Expr:
        return self.jet.H

    @property
    def F5(self) -> Expr:
        return self.jet.F5

    def alpha_field(self) -> PseudoField:
        return PseudoField.covector(self.A, self.B, weight=1)

    def beta_field(self) -> PseudoField:
        return PseudoField.covector(-self.H, self.G, weight=3)

    def f5_field(self) -> PseudoField:
        return PseudoField.scalar(self.F5, weight=5)

    def five_identity_residual(self) -> Expr:
        """3 F^5 - (B H + A G); zero for every equation."""
        return self.jet.calculus.simplify(3 * self.F5 - (self.B * self.H + self.A * self.G))


def frame(jet: SdJet) -> tuple[Vector, Vector]:
    F, calculus = jet.F, jet.calculus
    X = (simplify(jet.B * F**-2, calculus), simplify(-jet.A * F**-2, calculus))
    Y = (simplify(jet.G * F**-4, calculus), simplify(jet.H * F**-4, calculus))
    return X, Y


def frame_and_connection(ode_or_jet: OdeCoefficients | SdJet) -> SdCore:
    """
    Frame X, Y and connection of an equation in general position.

    Raises:
        NotGeneralPositionError: If F^5 vanishes identically
    """
    jet = ode_or_jet if isinstance(ode_or_jet, SdJet) else SdJet.from_ode(ode_or_jet)
    X, Y = frame(jet)
    return SdCore(jet, connection(jet), X, Y)


@dataclass(frozen=True)
class SdScalars:
    """
    The ten scalar invariants, with the second formula for I6 kept alongside.

    Attributes:
        route: "explicit" or "connection"
        I6_alternate: I6 from the short formula (explicit route only)
    """

    I1: Scalar
    I2: Scalar
    I3: Scalar
    I4: Scalar
    I5: Scalar
    I6: Scalar
    I7: Scalar
    I8: Scalar
    L: Scalar
    K: Scalar
    route: str
    I6_alternate: Scalar | None = None

    NAMES = ("I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8", "L", "K")

    def as_dict(self) -> dict[str, Scalar]:
        return {name: getattr(self, name) for name in self.NAMES}

    @property
    def I6_difference(self) -> Scalar | None:
        if self.I6_alternate is None:
            return None
        return self.I6 - self.I6_alternate


def scalars_explicit(ode_or_jet: OdeCoefficients | SdJet) -> SdScalars:
    """
    I3, I6 (both formulas), I7 and I8 from their closed forms; the rest from the linear relations.

    Raises:
        NotGeneralPositionError: If F^5 vanishes identically
    """
    jet = ode_or_jet if isinstance(ode_or_jet, SdJet) else SdJet.from_ode(ode_or_jet)
    P, Q, R, S = jet.ode.as_tuple()
    A, B, G, H, F = jet.A, jet.B, jet.G, jet.H, jet.F
    c = jet.calculus

    def d(e, p, q):
        return c.partial(e, p, q)

    A10, A01, B10, B01 = d(A, 1, 0), d(A, 0, 1), d(B, 1, 0), d(B, 0, 1)
    G10, G01, H10, H01 = d(G, 1, 0), d(G, 0, 1), d(H, 1, 0), d(H, 0, 1)
    F10, F01 = jet.d(F, 1, 0), jet.d(F, 0, 1)

    n9 = (
        B * (H * G10 - G * H10) - A * (H * G01 - G * H01)
        + B * G**2 * P - (A * G**2 - 2 * H * B * G) * Q + (B * H**2 - 2 * H * A * G) * R - A * H**2 * S
    )
    I3 = c.simplify(n9) / 3 * F**-9 + (H * F01 + G * F10) * F**-5 / 3

    n7 = (
        A * (G * A01 + H * B01) - B * (G * A10 + H * B10)
        - G * B**2 * P - (H * B**2 - 2 * G * B * A) * Q - (G * A**2 - 2 * H * B * A) * R - H * A**2 * S
    )
    I6 = c.simplify(n7) / 12 * F**-7 - 4 * (A * F01 - B * F10) * F**-3 / 12
    I6_short = c.simplify(A01 - B10) / 3 * F**-2 - (A * F01 - B * F10) * F**-3 / 3

    n11 = (
        G * H * G10 - G**2 * H10 + H**2 * G01 - H * G * H01
        + G**3 * P + 3 * G**2 * H * Q + 3 * G * H**2 * R + H**3 * S
    )
    I7 = c.simplify(n11) / 3 * F**-11

    n9_prime = (
        G * (A * G10 + B * H10) + H * (A * G01 + B * H01)
        - B * G**2 * P + (A * G**2 - 2 * H * B * G) * Q - (B * H**2 - 2 * H * A * G) * R + A * H**2 * S
    )
    I8 = c.simplify(n9_prime) / 3 * F**-9 - 10 * (H * F01 + G * F10) * F**-5 / 3

    I3, I6, I6_short, I7, I8 = (simplify(v, c) for v in (I3, I6, I6_short, I7, I8))
    return _with_relations(I3, I6, I7, I8, route="explicit", I6_alternate=I6_short, calculus=c)


def _with_relations(I3, I6, I7, I8, route: str, calculus: Calculus, I6_alternate=None) -> SdScalars:
    return SdScalars(
        I1=simplify(-4 * I6, calculus),
        I2=sympy.Rational(1, 3),
        I3=I3,
        I4=simplify(4 * I6, calculus),
        I5=simplify(-I8, calculus),
        I6=I6,
        I7=I7,
        I8=I8,
        L=simplify(I3 + I8, calculus),
        K=simplify(-3 * I6, calculus),
        route=route,
        I6_alternate=I6_alternate,
    )


def solve_in_frame(X: Vector, Y: Vector, w: Vector, calculus: Calculus = PLANE) -> tuple[Scalar, Scalar]:
    """
    Coefficients (a, b) with w = a X + b Y.

    Raises:
        SingularFrameError: If the frame determinant vanishes identically
    """
    c = calculus
    det = simplify(X[0] * Y[1] - X[1] * Y[0], c)
    if vanishes(det):
        raise SingularFrameError("the frame X, Y is degenerate")
    inverse = det.inverse() if isinstance(det, FExt) else 1 / det
    a = simplify((w[0] * Y[1] - w[1] * Y[0]) * inverse, c)
    b = simplify((X[0] * w[1] - X[1] * w[0]) * inverse, c)
    return a, b


def commutator(U: Vector, V: Vector, calculus: Calculus = PLANE) -> Vector:
    """Lie bracket [U, V]^k = U(V^k) - V(U^k)."""
    return tuple(
        simplify(apply_vector(U, V[k], calculus) - apply_vector(V, U[k], calculus), calculus) for k in (0, 1)
    )


def scalars_via_connection(ode_or_core: OdeCoefficients | SdJet | SdCore) -> SdScalars:
    """
    I1..I8 by expanding the covariant derivatives of the frame in the frame, and L, K from [X, Y] = L X - K Y.

    Raises:
        NotGeneralPositionError: If F^5 vanishes identically
        SingularFrameError: If the frame cannot be inverted
    """
    core = ode_or_core if isinstance(ode_or_core, SdCore) else frame_and_connection(ode_or_core)
    jet, nabla, X, Y = core.jet, core.connection, core.X, core.Y
    I1, I2 = solve_in_frame(X, Y, nabla.covariant(jet, X, X), jet.calculus)
    I3, I4 = solve_in_frame(X, Y, nabla.covariant(jet, X, Y), jet.calculus)
    I5, I6 = solve_in_frame(X, Y, nabla.covariant(jet, Y, X), jet.calculus)
    I7, I8 = solve_in_frame(X, Y, nabla.covariant(jet, Y, Y), jet.calculus)
    L, minus_K = solve_in_frame(X, Y, commutator(X, Y, jet.calculus), jet.calculus)
    logger.debug("scalar invariants solved from the connection")
    return SdScalars(
        I1=I1, I2=I2, I3=I3, I4=I4, I5=I5, I6=I6, I7=I7, I8=I8, L=L, K=simplify(-minus_K, jet.calculus),
        route="connection",
    )
