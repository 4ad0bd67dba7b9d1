# ruff: noqa: N806
"""
Classification verdicts and the identity suites tying the two invariant schemes together.

Identity checks never raise on failure: each one produces an :class:`IdentityReport` whose
status records whether the residual normalized to zero exactly, vanished numerically at
probe points (only when transcendental atoms block the exact decision) or failed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from cubic_ode_invariants.config import Settings
from cubic_ode_invariants.core.enums import IdentityStatus
from cubic_ode_invariants.core.enums import VerdictKind
from cubic_ode_invariants.core.expr import PLANE
from cubic_ode_invariants.core.expr import Calculus
from cubic_ode_invariants.core.expr import EvaluationError
from cubic_ode_invariants.core.expr import equal
from cubic_ode_invariants.core.expr import evaluate
from cubic_ode_invariants.core.expr import has_elementary
from cubic_ode_invariants.core.expr import is_zero
from cubic_ode_invariants.core.expr import numeric_values
from cubic_ode_invariants.core.expr import precise_value
from cubic_ode_invariants.core.expr import probe_points
from cubic_ode_invariants.core.expr import to_text
from cubic_ode_invariants.core.fext import FExt
from cubic_ode_invariants.core.fext import Scalar
from cubic_ode_invariants.core.fext import as_text
from cubic_ode_invariants.core.fext import simplify
from cubic_ode_invariants.core.fext import vanishes
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.core.ode import PointTransformation
from cubic_ode_invariants.core.ode import PseudoField
from cubic_ode_invariants.core.ode import pullback
from cubic_ode_invariants.core.ode import transform_components
from cubic_ode_invariants.invariants.bgd import BgdOperators
from cubic_ode_invariants.invariants.bgd import BgdScalars
from cubic_ode_invariants.invariants.bgd import chain
from cubic_ode_invariants.invariants.bgd import mu_and_operators
from cubic_ode_invariants.invariants.bgd import scalars_bgd
from cubic_ode_invariants.invariants.sd import SdCore
from cubic_ode_invariants.invariants.sd import SdJet
from cubic_ode_invariants.invariants.sd import SdScalars
from cubic_ode_invariants.invariants.sd import commutator
from cubic_ode_invariants.invariants.sd import covector_alpha
from cubic_ode_invariants.invariants.sd import covector_beta
from cubic_ode_invariants.invariants.sd import frame_and_connection
from cubic_ode_invariants.invariants.sd import pseudoscalar_f5
from cubic_ode_invariants.invariants.sd import scalars_explicit
from cubic_ode_invariants.invariants.sd import scalars_via_connection

logger = logging.getLogger(__name__)

WEIGHT_ZERO_SCALARS = ("I3", "I6", "I7", "I8", "L", "K")


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of :func:`classify`.

    Attributes:
        kind: Which of the distinguished cases applies
        point: The general-position witness point, when there is one
        f5_value: F^5 at the witness point
        probabilistic: True when a transcendental F^5 vanished at every probe
        note: Free-form explanation for the other cases
    """

    kind: VerdictKind
    point: tuple[Fraction, Fraction] | None = None
    f5_value: Fraction | float | None = None
    probabilistic: bool = False
    note: str | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "point": None if self.point is None else [str(c) for c in self.point],
            "F5": None if self.f5_value is None else str(self.f5_value),
            "probabilistic": self.probabilistic,
            "note": self.note,
        }

    def __str__(self) -> str:
        if self.kind is VerdictKind.generalPosition:
            x, y = self.point
            return f"{self.kind.value}({x}, {y}) with F^5 = {self.f5_value}"
        suffix = " (probabilistic)" if self.probabilistic else ""
        return f"{self.kind.value}{suffix}"


@dataclass(frozen=True)
class IdentityReport:
    """One checked identity: its label, the residual left of the two sides and the status."""

    name: str
    residual: Scalar
    status: IdentityStatus
    detail: str | None = None

    @property
    def passed(self) -> bool:
        return self.status.passed

    @property
    def residual_text(self) -> str:
        if isinstance(self.residual, sympy.Float) or self.residual is sympy.nan:
            return str(self.residual)
        return as_text(self.residual)

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status.value, "residual": self.residual_text}


def _transcendental(value: Scalar) -> bool:
    if isinstance(value, FExt):
        return has_elementary(value.modulus) or any(has_elementary(c) for c in value.coefficients)
    return has_elementary(sympy.sympify(value))


def _values(value: Scalar, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    if isinstance(value, FExt):
        return value.numeric_values(xs, ys)
    return numeric_values(value, xs, ys)


def _probe_arrays(seed: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    points = np.array([[float(x), float(y)] for x, y in probe_points(seed, count)])
    return points[:, 0], points[:, 1]


def _numerically_agree(lhs: Scalar, rhs: Scalar, settings: Settings) -> tuple[bool, str]:
    xs, ys = _probe_arrays(settings.seed, 4 * settings.numeric_points)
    left, right = _values(lhs, xs, ys), _values(rhs, xs, ys)
    usable = np.isfinite(left) & np.isfinite(right)
    if usable.sum() < settings.numeric_points:
        return False, f"only {int(usable.sum())} usable probe points"
    left, right = left[usable][: settings.numeric_points], right[usable][: settings.numeric_points]
    scale = np.maximum(1.0, np.maximum(np.abs(left), np.abs(right)))
    worst = float(np.max(np.abs(left - right) / scale))
    return worst <= settings.tolerance, f"max relative deviation {worst:.3e} at {settings.numeric_points} points"


def check_identity(
    name: str, lhs: Scalar, rhs: Scalar = 0, settings: Settings | None = None, calculus: Calculus = PLANE
) -> IdentityReport:
    """
    Check lhs = rhs, exactly when possible and numerically only for transcendental residuals.

    Args:
        name: Label of the identity
        lhs: Left-hand side
        rhs: Right-hand side
        settings: Seed, tolerance and probe count of the numeric fallback
        calculus: Simplification rules for the residual

    Returns:
        IdentityReport with the simplified residual

    Example:
        >>> check_identity("square", (X + 1) ** 2, X**2 + 2 * X + 1).status
        <IdentityStatus.exactZero: 'exact-zero'>
    """
    settings = settings or Settings()
    residual = simplify(lhs - rhs, calculus)
    if vanishes(residual):
        report = IdentityReport(name, residual, IdentityStatus.exactZero)
    elif _transcendental(residual):
        agrees, detail = _numerically_agree(lhs, rhs, settings)
        status = IdentityStatus.numericZero if agrees else IdentityStatus.failed
        report = IdentityReport(name, residual, status, detail)
    else:
        report = IdentityReport(name, residual, IdentityStatus.failed)
    logger.debug("%s: %s", name, report.status.value)
    return report


def _vector_reports(name: str, lhs, rhs, settings: Settings, calculus: Calculus = PLANE) -> list[IdentityReport]:
    pairs = enumerate(zip(lhs, rhs, strict=True))
    return [check_identity(f"{name} [{k + 1}]", a, b, settings, calculus) for k, (a, b) in pairs]


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def classify(
    ode: OdeCoefficients, point: tuple | None = None, seed: int = 0, probes: int = 100
) -> Verdict:
    """
    Decide maximal degeneration (A = B = 0) or general position (F^5 != 0 at a point).

    Args:
        ode: Coefficients of the equation
        point: Point at which to test general position; searched for when omitted
        seed: Seed of the probe lattice used by the search
        probes: Number of probe points tried

    Returns:
        Verdict

    Raises:
        PoleError: If the requested point is a pole of F^5

    Example:
        >>> classify(OdeCoefficients(1, 0, 0, X**2), point=(0, 0)).f5_value
        Fraction(-24, 1)
    """
    A, B = covector_alpha(ode)
    a_zero, b_zero = equal(A, 0, seed=seed), equal(B, 0, seed=seed)
    if a_zero and b_zero:
        exact = a_zero.exact and b_zero.exact
        logger.info("%s is maximally degenerate", ode.name or "equation")
        return Verdict(VerdictKind.maximalDegeneration, probabilistic=not exact)

    F5 = pseudoscalar_f5(ode, (A, B))
    if point is not None:
        x, y = point
        value = evaluate(F5, x, y)
        if value != 0:
            return Verdict(VerdictKind.generalPosition, (Fraction(x), Fraction(y)), value)
        note = "F^5 vanishes identically" if is_zero(F5) else "F^5 vanishes at the requested point"
        return Verdict(VerdictKind.otherCase, note=note)

    if is_zero(F5):
        return Verdict(VerdictKind.otherCase, note="F^5 vanishes identically")
    for candidate in probe_points(seed, probes):
        try:
            value = evaluate(F5, *candidate)
        except EvaluationError:
            continue
        if value != 0:
            logger.debug("general-position witness %s", candidate)
            return Verdict(VerdictKind.generalPosition, candidate, value)
    logger.info("no general-position witness among %d probes", probes)
    return Verdict(
        VerdictKind.otherCase,
        probabilistic=has_elementary(F5),
        note=f"F^5 = {to_text(F5)} vanished at every probe point",
    )


# ---------------------------------------------------------------------------
# Identity suites
# ---------------------------------------------------------------------------


def crosswalk(
    sd: SdScalars, bgd: BgdScalars, operators: BgdOperators, settings: Settings | None = None
) -> list[IdentityReport]:
    """
    The dictionaries between the two scalar families, in both directions, and the recovery of I7.

    D1 and D2 act as invariant differentiations through ``operators``; residuals are simplified
    with the operators' calculus, so the same suite runs in the special frame.
    """
    settings = settings or Settings()
    c = operators.calculus
    r = sympy.Rational
    d1, d2 = operators.d1, operators.d2
    I2, I3, I6, I7, I8 = sd.I2, sd.I3, sd.I6, sd.I7, sd.I8
    IB1, IB2, IB3, IB4 = bgd.IB1, bgd.IB2, bgd.IB3, bgd.IB4
    checks = [
        ("IB3 = 15 I6", IB3, 15 * I6),
        ("IB1 = I3 + 14/5 I8", IB1, I3 + r(14, 5) * I8),
        ("IB4 = 3 I3 + 87/5 I8", IB4, 3 * I3 + r(87, 5) * I8),
        (
            "IB2 = -I7 - 3 D1(I8) + 15 D2(I6) + (24 I8 + 15 I3) I6",
            IB2,
            -I7 - 3 * d1(I8) + 15 * d2(I6) + (24 * I8 + 15 * I3) * I6,
        ),
        ("I6 = IB3 / 15", I6, IB3 / 15),
        ("I3 = 29/15 IB1 - 14/45 IB4", I3, r(29, 15) * IB1 - r(14, 45) * IB4),
        ("I8 = IB4 / 9 - IB1 / 3", I8, IB4 / 9 - IB1 / 3),
        (
            "I7 = -IB2 - D1(IB4) / 3 + D1(IB1) + D2(IB3) + (21 IB1 - 2 IB4) IB3 / 15",
            I7,
            -IB2 - d1(IB4) / 3 + d1(IB1) + d2(IB3) + (21 * IB1 - 2 * IB4) * IB3 / 15,
        ),
        ("I2 = 1/3", I2, r(1, 3)),
    ]
    return [check_identity(name, lhs, rhs, settings, c) for name, lhs, rhs in checks]


def relation_reports(
    sd: SdScalars, settings: Settings | None = None, calculus: Calculus = PLANE
) -> list[IdentityReport]:
    """The linear dependencies among I1..I8, L and K."""
    settings = settings or Settings()
    checks = [
        ("I2 = 1/3", sd.I2, sympy.Rational(1, 3)),
        ("I1 = -4 I6", sd.I1, -4 * sd.I6),
        ("I4 = 4 I6", sd.I4, 4 * sd.I6),
        ("I5 = -I8", sd.I5, -sd.I8),
        ("I5 = I3 - L", sd.I5, sd.I3 - sd.L),
        ("I6 = -I1 + K", sd.I6, -sd.I1 + sd.K),
        ("L = I3 + I8", sd.L, sd.I3 + sd.I8),
        ("K = -3 I6", sd.K, -3 * sd.I6),
    ]
    return [check_identity(f"{name} ({sd.route})", lhs, rhs, settings, calculus) for name, lhs, rhs in checks]


def general_position_reports(core: SdCore, settings: Settings | None = None) -> list[IdentityReport]:
    """Everything that needs F: both scalar routes, the operators, the Omega coefficients and the crosswalk."""
    settings = settings or Settings()
    jet = core.jet
    c = jet.calculus
    explicit = scalars_explicit(jet)
    solved = scalars_via_connection(core)
    reports = [check_identity("I6 closed forms agree", explicit.I6, explicit.I6_alternate, settings, c)]
    reports += relation_reports(solved, settings, c)
    reports += [
        check_identity(f"{name} explicit = via connection", getattr(explicit, name), getattr(solved, name), settings, c)
        for name in SdScalars.NAMES
    ]
    bracket = commutator(core.X, core.Y, c)
    expected = tuple(explicit.L * core.X[k] - explicit.K * core.Y[k] for k in (0, 1))
    reports += _vector_reports("[X, Y] = L X - K Y", bracket, expected, settings, c)

    bgd_chain = chain(jet.ode, c)
    operators = mu_and_operators(bgd_chain, jet.F)
    reports.append(check_identity("mu1 = -F", operators.mu1, -jet.F, settings, c))
    reports += _vector_reports("D1 = X", operators.D1, core.X, settings, c)
    reports += _vector_reports("D2 = Y", operators.D2, core.Y, settings, c)
    if operators.D2_via_mu2 is not None:
        reports += _vector_reports("D2 from mu2 = D2", operators.D2_via_mu2, operators.D2, settings, c)
    bgd = scalars_bgd(bgd_chain, operators)
    reports += [
        check_identity("Omega1 from [D1, D2] = L", bgd.Omega1, explicit.L, settings, c),
        check_identity("Omega2 from [D1, D2] = -K", bgd.Omega2, -explicit.K, settings, c),
        check_identity("Omega1 = (8 IB1 - IB4) / 5 = L", bgd.Omega1_closed, explicit.L, settings, c),
        check_identity("Omega2 = IB3 / 5 = -K", bgd.Omega2_closed, -explicit.K, settings, c),
    ]
    reports += crosswalk(explicit, bgd, operators, settings)
    return reports


def verify_identities(ode: OdeCoefficients, settings: Settings | None = None) -> list[IdentityReport]:
    """
    The full identity suite for one equation.

    Identities that need F are only run when F^5 does not vanish identically.

    Example:
        >>> all(r.passed for r in verify_identities(OdeCoefficients(1, 0, 0, X**2)))
        True
    """
    settings = settings or Settings()
    bgd_chain = chain(ode)
    A, B = covector_alpha(ode)
    G, H = covector_beta(ode, (A, B))
    F5 = pseudoscalar_f5(ode, (A, B))
    reports = [
        check_identity("beta1 = A", bgd_chain.beta1, A, settings),
        check_identity("beta2 = B", bgd_chain.beta2, B, settings),
        check_identity("J0 = -F^5", bgd_chain.J0, -F5, settings),
        check_identity("Gamma0 = -H", bgd_chain.Gamma0, -H, settings),
        check_identity("Gamma1 = G", bgd_chain.Gamma1, G, settings),
        check_identity("3 J0 = beta2 Gamma0 - beta1 Gamma1", bgd_chain.three_j0_residual(), 0, settings),
        check_identity("3 F^5 = B H + A G", 3 * F5, B * H + A * G, settings),
    ]
    if is_zero(F5):
        logger.info("%s is not in general position; F-dependent identities skipped", ode.name or "equation")
        return reports
    jet = SdJet(ode, A, B, G, H, F5, FExt.generator(F5))
    return reports + general_position_reports(frame_and_connection(jet), settings)


# ---------------------------------------------------------------------------
# Transformation laws
# ---------------------------------------------------------------------------


def _pseudofields(ode: OdeCoefficients) -> dict[str, PseudoField]:
    A, B = covector_alpha(ode)
    G, H = covector_beta(ode, (A, B))
    return {
        "alpha = (A, B)": PseudoField.covector(A, B, weight=1),
        "beta = (-H, G)": PseudoField.covector(-H, G, weight=3),
        "F^5": PseudoField.scalar(pseudoscalar_f5(ode, (A, B)), weight=5),
    }


def check_weights(
    ode: OdeCoefficients, t: PointTransformation, settings: Settings | None = None
) -> list[IdentityReport]:
    """
    Transformation laws of the relative and absolute invariants under one point transformation.

    The relative invariants (A, B), (-H, G) and F^5 are compared exactly through the
    component law; the weight-0 scalars are compared numerically at matched points, F taken
    as the real fifth root on both sides. The classification kind must be preserved.
    """
    settings = settings or Settings()
    label = t.name or "map"
    pulled = pullback(ode, t)
    restored = pullback(pulled, t.inverted())
    reports = [
        check_identity(f"pullback round trip under {label} [{name}]", a, b, settings)
        for name, a, b in zip("PQRS", restored.as_tuple(), ode.as_tuple(), strict=True)
    ]

    source_fields, tilde_fields = _pseudofields(ode), _pseudofields(pulled)
    for name, field in source_fields.items():
        transported = transform_components(tilde_fields[name], t)
        title = f"{name} weight {field.weight} law under {label}"
        reports += _vector_reports(title, field.components, transported.components, settings)

    before = classify(ode, seed=settings.seed, probes=settings.probes)
    after = classify(pulled, seed=settings.seed, probes=settings.probes)
    same = before.kind is after.kind
    status = IdentityStatus.exactZero if same else IdentityStatus.failed
    detail = f"{before.kind.value} -> {after.kind.value}"
    title = f"classification preserved under {label}"
    reports.append(IdentityReport(title, sympy.Integer(int(not same)), status, detail))

    if before.kind is VerdictKind.generalPosition and after.kind is VerdictKind.generalPosition:
        reports += _scalar_laws(ode, pulled, t, settings)
    return reports


def _precise(value: Scalar, x, y) -> sympy.Float:
    if isinstance(value, FExt):
        return value.precise_value(x, y)
    return precise_value(value, x, y)


def _matched_values(
    source: dict[str, Scalar], target: dict[str, Scalar], t: PointTransformation, settings: Settings
) -> list[dict[str, tuple[sympy.Float, sympy.Float]]]:
    """Scalar values at exact rational probe points and at their exact images, skipping poles."""
    matched = []
    for x, y in probe_points(settings.seed, 4 * settings.points):
        try:
            xt, yt = t.apply_exact(x, y)
            row = {name: (_precise(source[name], x, y), _precise(target[name], xt, yt)) for name in WEIGHT_ZERO_SCALARS}
        except EvaluationError as e:
            logger.debug("matched point (%s, %s) skipped: %s", x, y, e)
            continue
        matched.append(row)
        if len(matched) == settings.points:
            break
    return matched


def _scalar_laws(
    ode: OdeCoefficients, pulled: OdeCoefficients, t: PointTransformation, settings: Settings
) -> list[IdentityReport]:
    source = scalars_explicit(ode).as_dict()
    target = scalars_explicit(pulled).as_dict()
    matched = _matched_values(source, target, t, settings)

    label = t.name or "map"
    reports = []
    for name in WEIGHT_ZERO_SCALARS:
        title = f"{name} invariant under {label}"
        if len(matched) < settings.points:
            detail = f"only {len(matched)} usable matched points"
            reports.append(IdentityReport(title, sympy.nan, IdentityStatus.failed, detail))
            continue
        pairs = [row[name] for row in matched]
        worst = max(float(abs(left - right) / max(1, abs(left), abs(right))) for left, right in pairs)
        status = IdentityStatus.numericZero if worst <= settings.tolerance else IdentityStatus.failed
        detail = f"max relative deviation {worst:.3e} at {settings.points} matched points"
        reports.append(IdentityReport(title, sympy.Float(worst, 4), status, detail))
    return reports
