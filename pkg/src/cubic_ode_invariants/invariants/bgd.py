# ruff: noqa: N802, N803, N806, N815
"""
The second invariant chain: alpha, beta, gamma, delta (and optionally epsilon, lambda) quantities,
the J block, the operators D1, D2 and the weight-0 scalars IB1..IB4 with the commutator
coefficients Omega1, Omega2.

Fractional powers of J0 never appear: (J0)^(1/5) is taken to be mu1 = -F, where F is either the
formal root of an :class:`FExt` ring or an opaque symbol supplied by the caller.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import fields

import sympy

from cubic_ode_invariants.core.expr import PLANE
from cubic_ode_invariants.core.expr import Calculus
from cubic_ode_invariants.core.expr import Expr
from cubic_ode_invariants.core.expr import is_zero
from cubic_ode_invariants.core.fext import FExt
from cubic_ode_invariants.core.fext import Scalar
from cubic_ode_invariants.core.fext import simplify
from cubic_ode_invariants.core.fext import vanishes
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.invariants.sd import NotGeneralPositionError
from cubic_ode_invariants.invariants.sd import Vector
from cubic_ode_invariants.invariants.sd import apply_vector
from cubic_ode_invariants.invariants.sd import commutator
from cubic_ode_invariants.invariants.sd import solve_in_frame

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BgdChain:
    """
    Every quantity of the chain for one equation.

    ``eps10``, ``eps20``, ``eps11`` and ``lambda10`` are only filled when the chain is built with
    ``higher=True``; nothing downstream of the general-position case reads them.
    """

    ode: OdeCoefficients
    alpha0: Expr
    alpha1: Expr
    alpha2: Expr
    beta1: Expr
    beta2: Expr
    gamma10: Expr
    gamma11: Expr
    gamma20: Expr
    gamma21: Expr
    delta10: Expr
    delta20: Expr
    delta30: Expr
    delta11: Expr
    delta21: Expr
    delta31: Expr
    Gamma0: Expr
    Gamma1: Expr
    J0: Expr
    J1: Expr
    J2: Expr
    J3: Expr
    J4: Expr
    eps10: Expr | None = None
    eps20: Expr | None = None
    eps11: Expr | None = None
    lambda10: Expr | None = None
    calculus: Calculus = PLANE

    def as_dict(self) -> dict[str, Expr]:
        """Named chain quantities, skipping the higher-order ones that were not computed."""
        skip = {"ode", "calculus"}
        values = {f.name: getattr(self, f.name) for f in fields(self) if f.name not in skip}
        return {name: value for name, value in values.items() if value is not None}

    @property
    def is_maximally_degenerate(self) -> bool:
        return is_zero(self.beta1) and is_zero(self.beta2)

    def three_j0_residual(self) -> Expr:
        """3 J0 - (beta2 Gamma0 - beta1 Gamma1)."""
        return self.calculus.simplify(3 * self.J0 - (self.beta2 * self.Gamma0 - self.beta1 * self.Gamma1))


def chain(ode: OdeCoefficients, calculus: Calculus = PLANE, higher: bool = False) -> BgdChain:
    """
    Compute the chain in dependency order.

    Args:
        ode: Coefficients of the equation
        calculus: Differentiation and simplification rules; the plain plane calculus by default
        higher: Also compute the epsilon and lambda quantities

    Returns:
        BgdChain with every quantity simplified by the calculus

    Example:
        >>> c = chain(OdeCoefficients(1, 0, 0, X**2))
        >>> (c.beta1, c.beta2)
        (4*x, 2)
    """
    P, Q, R, S = ode.as_tuple()
    s = calculus.simplify

    def dx(e):
        return calculus.partial(e, 1, 0)

    def dy(e):
        return calculus.partial(e, 0, 1)

    a0 = s(dx(Q) - dy(P) + 2 * P * R - 2 * Q**2)
    a1 = s(dx(R) - dy(Q) + P * S - Q * R)
    a2 = s(dx(S) - dy(R) + 2 * Q * S - 2 * R**2)

    b1 = s(dx(a1) - dy(a0) + R * a0 - 2 * Q * a1 + P * a2)
    b2 = s(dx(a2) - dy(a1) + S * a0 - 2 * R * a1 + Q * a2)

    g10 = s(dx(b1) - Q * b1 + P * b2)
    g11 = s(dx(b2) - R * b1 + Q * b2)
    g20 = s(dy(b1) - R * b1 + Q * b2)
    g21 = s(dy(b2) - S * b1 + R * b2)

    d10 = s(dx(g10) - 2 * Q * g10 + P * (g20 + g11) - 5 * a0 * b1)
    d20 = s(dx(g20) - R * g10 + P * g21 - 4 * a1 * b1 - a0 * b2)
    d30 = s(dy(g20) - S * g10 + Q * g21 - 4 * a2 * b1 - a1 * b2)
    d11 = s(dx(g11) - R * g10 + P * g21 - a1 * b1 - 4 * a0 * b2)
    d21 = s(dx(g21) - R * (g20 + g11) + 2 * Q * g21 - 5 * a1 * b2)
    d31 = s(dy(g21) - S * (g20 + g11) + 2 * R * g21 - 5 * a2 * b2)

    Gamma0 = s(3 * b2 * g10 + b1 * (g20 - 4 * g11))
    Gamma1 = s(b2 * (4 * g20 - g11) - 3 * b1 * g21)

    r = sympy.Rational
    split = g20 - g11
    cross = g10 * g21 - g20 * g11
    J0 = s(b2**2 * g10 - b1 * b2 * (g20 + g11) + b1**2 * g21)
    J1 = s(b2 * (d20 - d11) + b1 * (d21 - d30) + r(7, 5) * split**2 - r(3, 5) * cross)
    J2 = s(Gamma1 * (d20 - d11) + Gamma0 * (d21 - d30) + 3 * split * cross + r(4, 3) * split**3)
    J3 = s(
        b2**3 * d10 - b1 * b2**2 * (2 * d20 + d11) + b1**2 * b2 * (d30 + 2 * d21) - b1**3 * d31
        + 4 * split * J0
    )
    J4 = s(
        -b2 * (b2 * Gamma0 + 2 * b1 * Gamma1) * (2 * d20 + d11)
        + b1 * (2 * b2 * Gamma0 + b1 * Gamma1) * (d30 + 2 * d21)
        + 3 * b2**2 * Gamma1 * d10 - 3 * b1**2 * Gamma0 * d31
        + r(66, 5) * split**2 * J0 + r(36, 5) * cross * J0
    )

    higher_terms: dict[str, Expr] = {}
    if higher:
        e10 = s(dx(d10) - 3 * Q * d10 + P * (2 * d20 + d11) - 12 * a0 * g10)
        e20 = s(dy(d10) - 3 * R * d10 + Q * (2 * d20 + d11) - 12 * a1 * g10)
        e11 = s(dx(d11) - R * d10 - Q * d11 + 2 * P * d21 - 2 * a1 * g10 - 10 * a0 * g11 - 10 * b1**2)
        l10 = s(dx(e10) - 4 * Q * e10 + P * (3 * e20 + e11) - 21 * a0 * d10)
        higher_terms = {"eps10": e10, "eps20": e20, "eps11": e11, "lambda10": l10}

    logger.debug("chain computed for %s (higher=%s)", ode.name or "equation", higher)
    return BgdChain(
        ode=ode,
        alpha0=a0, alpha1=a1, alpha2=a2,
        beta1=b1, beta2=b2,
        gamma10=g10, gamma11=g11, gamma20=g20, gamma21=g21,
        delta10=d10, delta20=d20, delta30=d30, delta11=d11, delta21=d21, delta31=d31,
        Gamma0=Gamma0, Gamma1=Gamma1,
        J0=J0, J1=J1, J2=J2, J3=J3, J4=J4,
        calculus=calculus,
        **higher_terms,
    )


@dataclass(frozen=True)
class BgdOperators:
    """
    mu1 = (J0)^(1/5) and the invariant differentiations D1, D2.

    Attributes:
        mu2: Only present when beta1 does not vanish identically
        D2_via_mu2: D2 rebuilt from mu2; must agree with D2 componentwise
    """

    mu1: Scalar
    D1: Vector
    D2: Vector
    mu2: Scalar | None = None
    D2_via_mu2: Vector | None = None
    calculus: Calculus = PLANE

    def d1(self, value: Scalar) -> Scalar:
        return apply_vector(self.D1, value, self.calculus)

    def d2(self, value: Scalar) -> Scalar:
        return apply_vector(self.D2, value, self.calculus)

    def d2_route_residuals(self) -> Vector | None:
        if self.D2_via_mu2 is None:
            return None
        return tuple(simplify(a - b, self.calculus) for a, b in zip(self.D2, self.D2_via_mu2, strict=True))


def mu_and_operators(bgd: BgdChain, F: Scalar | None = None) -> BgdOperators:
    """
    Build mu1 and the operators D1, D2 of an equation in general position.

    Args:
        bgd: The chain of the equation
        F: The pseudoscalar F; defaults to the formal root of f^5 = -J0

    Raises:
        NotGeneralPositionError: If J0 vanishes identically
    """
    c = bgd.calculus
    if F is None:
        if is_zero(bgd.J0):
            raise NotGeneralPositionError(f"J0 vanishes identically for {bgd.ode.name or 'this equation'}")
        F = FExt.generator(-bgd.J0)
    mu1 = -F
    b1, b2 = bgd.beta1, bgd.beta2
    D1 = (simplify(b2 * mu1**-2, c), simplify(-b1 * mu1**-2, c))
    D2 = (simplify(bgd.Gamma1 * mu1**-4, c), simplify(-bgd.Gamma0 * mu1**-4, c))

    if is_zero(b1):
        return BgdOperators(mu1, D1, D2, calculus=c)

    mu2 = simplify(c.simplify(bgd.Gamma0 / b1) * mu1**-4, c)
    D2_via_mu2 = (simplify(mu2 * b2 - 3 * mu1 / b1, c), simplify(-mu2 * b1, c))
    return BgdOperators(mu1, D1, D2, mu2, D2_via_mu2, c)


@dataclass(frozen=True)
class BgdScalars:
    """
    Weight-0 scalars of the second scheme.

    ``Omega1`` and ``Omega2`` come from expanding [D1, D2] in the operator frame; the
    ``*_closed`` values come from the closed forms in IB1, IB3, IB4.
    """

    IB1: Scalar
    IB2: Scalar
    IB3: Scalar
    IB4: Scalar
    Omega1: Scalar
    Omega2: Scalar
    Omega1_closed: Scalar
    Omega2_closed: Scalar
    mu1: Scalar

    NAMES = ("IB1", "IB2", "IB3", "IB4", "Omega1", "Omega2")

    def as_dict(self) -> dict[str, Scalar]:
        return {name: getattr(self, name) for name in self.NAMES}

    def omega_residuals(self) -> tuple[Scalar, Scalar]:
        return self.Omega1 - self.Omega1_closed, self.Omega2 - self.Omega2_closed


def scalars_bgd(bgd: BgdChain, operators: BgdOperators | None = None) -> BgdScalars:
    """
    IB_k = J_k (J0)^(-w_k/5) with w = 4, 6, 7, 9, and Omega by both routes.

    Raises:
        NotGeneralPositionError: If J0 vanishes identically and no operators are given
    """
    ops = operators if operators is not None else mu_and_operators(bgd)
    c, mu1 = bgd.calculus, ops.mu1
    IB1 = simplify(bgd.J1 * mu1**-4, c)
    IB2 = simplify(bgd.J2 * mu1**-6, c)
    IB3 = simplify(bgd.J3 * mu1**-7, c)
    IB4 = simplify(bgd.J4 * mu1**-9, c)
    Omega1, Omega2 = solve_in_frame(ops.D1, ops.D2, commutator(ops.D1, ops.D2, c), c)
    Omega1_closed = simplify((8 * IB1 - IB4) / 5, c)
    Omega2_closed = simplify(IB3 / 5, c)
    if not (vanishes(simplify(Omega1 - Omega1_closed, c)) and vanishes(simplify(Omega2 - Omega2_closed, c))):
        logger.warning("commutator coefficients differ from the closed forms for %s", bgd.ode.name or "equation")
    return BgdScalars(IB1, IB2, IB3, IB4, Omega1, Omega2, Omega1_closed, Omega2_closed, mu1)
