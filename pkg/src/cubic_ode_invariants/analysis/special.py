# ruff: noqa: N802, N806
"""
Symbolic replay of the special-coordinates calculus.

In special coordinates the frame is X = u d/dx, Y = v d/dy, which forces A = 0, G = 0 and
leaves F, B, R, S as free functions with P = -F^5/B^3 and Q = B_1.0/(3B). The constraints
A = 0 and "B computed from the coefficients equals the atom B" are linear in R_2.0 and R_1.1,
so they become rewrite rules; differentiating them makes R_2.1 reachable two ways, and the
resulting compatibility condition is solved for S_3.0.

:class:`SpecialCalculus` differentiates and simplifies modulo those rules, so every general
formula of both invariant chains evaluates in the frame unchanged and can be compared with
its reduced form.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass

import sympy

from cubic_ode_invariants.analysis.compare import IdentityReport
from cubic_ode_invariants.analysis.compare import check_identity
from cubic_ode_invariants.analysis.compare import crosswalk
from cubic_ode_invariants.analysis.compare import relation_reports
from cubic_ode_invariants.config import Settings
from cubic_ode_invariants.core.enums import IdentityStatus
from cubic_ode_invariants.core.expr import PLANE
from cubic_ode_invariants.core.expr import Expr
from cubic_ode_invariants.core.expr import atom_key
from cubic_ode_invariants.core.expr import canonical
from cubic_ode_invariants.core.expr import opaque
from cubic_ode_invariants.core.expr import opaque_atoms
from cubic_ode_invariants.core.expr import opaque_parts
from cubic_ode_invariants.core.expr import partial
from cubic_ode_invariants.core.expr import solve_linear_for
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.invariants.bgd import BgdOperators
from cubic_ode_invariants.invariants.bgd import BgdScalars
from cubic_ode_invariants.invariants.bgd import chain
from cubic_ode_invariants.invariants.bgd import mu_and_operators
from cubic_ode_invariants.invariants.bgd import scalars_bgd
from cubic_ode_invariants.invariants.sd import SdJet
from cubic_ode_invariants.invariants.sd import SdScalars
from cubic_ode_invariants.invariants.sd import commutator
from cubic_ode_invariants.invariants.sd import covector_alpha
from cubic_ode_invariants.invariants.sd import covector_beta
from cubic_ode_invariants.invariants.sd import frame_and_connection
from cubic_ode_invariants.invariants.sd import pseudoscalar_f5
from cubic_ode_invariants.invariants.sd import scalars_explicit
from cubic_ode_invariants.invariants.sd import scalars_via_connection
from cubic_ode_invariants.invariants.sd import solve_in_frame

logger = logging.getLogger(__name__)


def b(p: int = 0, q: int = 0) -> sympy.Symbol:
    return opaque("B", p, q)


def f(p: int = 0, q: int = 0) -> sympy.Symbol:
    return opaque("F", p, q)


def r(p: int = 0, q: int = 0) -> sympy.Symbol:
    return opaque("R", p, q)


def s(p: int = 0, q: int = 0) -> sympy.Symbol:
    return opaque("S", p, q)


B, F, R, S = b(), f(), r(), s()
P = -(F**5) / B**3
Q = b(1, 0) / (3 * B)


def special_ode() -> OdeCoefficients:
    """The equation in special coordinates, with F, B, R, S free."""
    return OdeCoefficients(P, Q, R, S, name="special coordinates")


class SpecialCalculus:
    """
    Differentiation modulo the special-coordinate constraints.

    Principal derivatives are R_p.q with p >= 2 or (p, q) = (1, >=1), and, once the
    compatibility condition is resolved, S_p.q with p >= 3. Each principal atom is
    rewritten to an expression free of principal atoms; rules are built lazily and memoized.

    Args:
        resolve_compatibility: Whether S_3.0 and its derivatives are principal
    """

    def __init__(self, resolve_compatibility: bool = True):
        self.resolve_compatibility = resolve_compatibility
        self._rules: dict[sympy.Symbol, Expr] = {}
        self._lock = threading.RLock()
        self._unresolved: SpecialCalculus | None = None

    def __repr__(self) -> str:
        return f"SpecialCalculus(resolve_compatibility={self.resolve_compatibility})"

    def is_principal(self, atom: sympy.Symbol) -> bool:
        parts = opaque_parts(atom)
        if parts is None:
            return False
        name, p, q = parts
        if name == "R":
            return p >= 2 or (p == 1 and q >= 1)
        if name == "S":
            return self.resolve_compatibility and p >= 3
        return False

    def rule(self, atom: sympy.Symbol) -> Expr:
        """The reduced expression a principal atom is rewritten to."""
        with self._lock:
            if atom not in self._rules:
                self._rules[atom] = self._derive_rule(atom)
                logger.debug("rewrite rule for %s built (%d rules)", atom, len(self._rules))
            return self._rules[atom]

    def _derive_rule(self, atom: sympy.Symbol) -> Expr:
        name, p, q = opaque_parts(atom)
        if name == "R":
            if (p, q) == (2, 0):
                A, _ = covector_alpha(special_ode(), PLANE)
                return self.simplify(solve_linear_for(A, 0, atom))
            if (p, q) == (1, 1):
                _, B_formula = covector_alpha(special_ode(), PLANE)
                return self.simplify(solve_linear_for(B_formula, B, atom))
            if p >= 3:
                return self._step(r(p - 1, q), 1, 0)
            return self._step(r(p, q - 1), 0, 1)
        if (p, q) == (3, 0):
            base = self.unresolved()
            condition = base.compatibility_condition()
            return self.simplify(solve_linear_for(condition, 0, atom))
        if p >= 4:
            return self._step(s(p - 1, q), 1, 0)
        return self._step(s(p, q - 1), 0, 1)

    def _step(self, lower: sympy.Symbol, p: int, q: int) -> Expr:
        return self.simplify(partial(self.rule(lower), p, q))

    def unresolved(self) -> SpecialCalculus:
        """The calculus with only the R rules, used to state the compatibility condition."""
        if not self.resolve_compatibility:
            return self
        with self._lock:
            if self._unresolved is None:
                self._unresolved = SpecialCalculus(resolve_compatibility=False)
            return self._unresolved

    def compatibility_condition(self) -> Expr:
        """d/dy of the R_2.0 rule minus d/dx of the R_1.1 rule, reduced."""
        return self.simplify(partial(self.rule(r(2, 0)), 0, 1) - partial(self.rule(r(1, 1)), 1, 0))

    def reduce(self, e: Expr) -> Expr:
        """Replace principal atoms until none is left."""
        e = sympy.sympify(e)
        while True:
            principal = sorted((a for a in opaque_atoms(e) if self.is_principal(a)), key=atom_key)
            if not principal:
                return e
            e = e.xreplace({a: self.rule(a) for a in principal})

    def partial(self, e: Expr, p: int, q: int) -> Expr:
        result = self.reduce(e)
        for step, count in (((1, 0), p), ((0, 1), q)):
            for _ in range(count):
                result = self.reduce(partial(result, *step))
        return result

    def simplify(self, e: Expr) -> Expr:
        return canonical(self.reduce(e))


@dataclass(frozen=True)
class SpecialFrame:
    """
    The special-coordinates equation together with its calculus.

    Attributes:
        ode: P = -F^5/B^3, Q = B_1.0/(3B), R, S
        calculus: Rewrites with the compatibility condition resolved
        u, v: Scale factors of the frame, X = u d/dx and Y = v d/dy
    """

    ode: OdeCoefficients
    calculus: SpecialCalculus
    u: Expr
    v: Expr

    def witness(self, values: dict[str, int] | None = None) -> dict[str, Expr]:
        """
        P, Q, H, u, v for constant data; every derivative atom is zero.

        Example:
            >>> build_special().witness()["v"]
            3
        """
        values = values if values is not None else {"F": 1, "B": 1, "R": 0, "S": 0}
        alpha = covector_alpha(self.ode, self.calculus)
        _, H = covector_beta(self.ode, alpha, self.calculus)
        quantities = {"P": self.ode.P, "Q": self.ode.Q, "H": H, "u": self.u, "v": self.v}
        return {name: _at_constant_data(e, values) for name, e in quantities.items()}


def _at_constant_data(e: Expr, values: dict[str, int]) -> Expr:
    substitution = {}
    for atom in opaque_atoms(e):
        name, p, q = opaque_parts(atom)
        substitution[atom] = sympy.Integer(values.get(name, 0)) if (p, q) == (0, 0) else sympy.Integer(0)
    return canonical(sympy.sympify(e).xreplace(substitution))


def build_special() -> SpecialFrame:
    """
    Construct the special-coordinates equation and its constrained calculus.

    Rules are built lazily on first use; :func:`derivation_reports` exercises the
    construction and compares each step with its printed form.
    """
    calculus = SpecialCalculus()
    logger.info("special-coordinates frame constructed")
    return SpecialFrame(special_ode(), calculus, u=B / F**2, v=3 * F / B)


# ---------------------------------------------------------------------------
# Reference forms
# ---------------------------------------------------------------------------


def reference_cascade() -> dict[str, Expr]:
    """
    Closed forms of the low-order derivatives of P, Q and of the R_2.0, R_1.1 rules.

    The Q_1.1, Q_0.2 and R_1.1 forms carry the denominators the chain rule produces.
    """
    B10, B01 = b(1, 0), b(0, 1)
    F10, F01 = f(1, 0), f(0, 1)
    return {
        "P_{1.0}": (3 * F**5 * B10 - 5 * B * F**4 * F10) / B**4,
        "P_{0.1}": (3 * F**5 * B01 - 5 * B * F**4 * F01) / B**4,
        "Q_{1.0}": (B * b(2, 0) - B10**2) / (3 * B**2),
        "Q_{0.1}": (B * b(1, 1) - B10 * B01) / (3 * B**2),
        "P_{0.2}": (
            3 * F**5 * b(0, 2) / B**4 - 5 * F**4 * f(0, 2) / B**3 - 12 * F**5 * B01**2 / B**5
            + 30 * F**4 * F01 * B01 / B**4 - 20 * F**3 * F01**2 / B**3
        ),
        "Q_{1.1}": (
            b(2, 1) / (3 * B) - B01 * b(2, 0) / (3 * B**2) - 2 * B10 * b(1, 1) / (3 * B**2)
            + 2 * B01 * B10**2 / (3 * B**3)
        ),
        "Q_{0.2}": (
            b(1, 2) / (3 * B) - B10 * b(0, 2) / (3 * B**2) - 2 * B01 * b(1, 1) / (3 * B**2)
            + 2 * B10 * B01**2 / (3 * B**3)
        ),
        "R_{2.0}": (
            B10 / B * r(1, 0) - 3 * F**5 / B**3 * r(0, 1)
            + (9 * F**5 * B01 / B**4 - 15 * F**4 * F01 / B**3) * R
            + 2 * F**5 / B**3 * s(1, 0) + (5 * F**4 * F10 / B**3 - 3 * F**5 * B10 / B**4) * S
            + 2 * b(2, 1) / (3 * B) - 2 * B01 * b(2, 0) / (3 * B**2) - 2 * B10 * b(1, 1) / B**2
            - 3 * F**5 * b(0, 2) / B**4 + 5 * F**4 * f(0, 2) / B**3 + 2 * B01 * B10**2 / B**3
            + 20 * F**3 * F01**2 / B**3 - 30 * F**4 * F01 * B01 / B**4 + 12 * F**5 * B01**2 / B**5
        ),
        "R_{1.1}": (
            s(2, 0) / 2 - 3 * R * r(1, 0) + B10 / (2 * B) * s(1, 0) + F**5 / (2 * B**3) * s(0, 1)
            + (b(1, 1) / (2 * B) - B01 * B10 / (2 * B**2)) * R
            + (b(2, 0) / (2 * B) - B10**2 / (2 * B**2) - 3 * F**5 * B01 / B**4 + 5 * F**4 * F01 / B**3) * S
            + b(1, 2) / (6 * B) - B01 * b(1, 1) / (3 * B**2) - B10 * b(0, 2) / (6 * B**2)
            + B10 * B01**2 / (3 * B**3) - B / 2
        ),
    }


def reference_chain() -> dict[str, Expr]:
    """Reduced forms of the chain quantities alpha through delta and Gamma."""
    B10, B01, B11 = b(1, 0), b(0, 1), b(1, 1)
    F10, F01 = f(1, 0), f(0, 1)
    R10, R01 = r(1, 0), r(0, 1)
    third = sympy.Rational(1, 3)
    return {
        "alpha0": (
            b(2, 0) / (3 * B) - 5 * B10**2 / (9 * B**2) - 3 * F**5 * B01 / B**4 + 5 * F**4 * F01 / B**3
            - 2 * F**5 * R / B**3
        ),
        "alpha1": -B11 / (3 * B) + B01 * B10 / (3 * B**2) + R10 - B10 * R / (3 * B) - F**5 * S / B**3,
        "alpha2": s(1, 0) - R01 - 2 * R**2 + 2 * B10 * S / (3 * B),
        "beta1": sympy.Integer(0),
        "beta2": B,
        "gamma10": -(F**5) / B**2,
        "gamma11": 4 * third * B10,
        "gamma20": third * B10,
        "gamma21": B01 + B * R,
        "delta10": F**5 * B10 / B**3 - 5 * F**4 * F10 / B**2,
        "delta20": 5 * B10**2 / (9 * B) + 2 * F**5 * B01 / B**3 - 5 * F**4 * F01 / B**2 + 2 * F**5 * R / B**2,
        "delta30": 2 * third * B11 - B * R10 + 2 * third * B10 * R + 2 * F**5 * S / B**2,
        "delta11": 20 * B10**2 / (9 * B) + 11 * F**5 * B01 / B**3 - 20 * F**4 * F01 / B**2 + 8 * F**5 * R / B**2,
        "delta21": 8 * third * B11 - B01 * B10 / B - 4 * B * R10 + 5 * third * B10 * R + 5 * F**5 * S / B**2,
        "delta31": b(0, 2) + 6 * B * R01 - 5 * B * s(1, 0) + 12 * B * R**2 + 3 * B01 * R - 5 * B10 * S,
        "Gamma0": -3 * F**5 / B,
        "Gamma1": sympy.Integer(0),
    }


def reference_scalars() -> dict[str, Expr]:
    """Reduced forms of I1..I8, L, K and IB1..IB4; I3 uses R where a factor B is sometimes printed."""
    B10, B01 = b(1, 0), b(0, 1)
    F10, F01 = f(1, 0), f(0, 1)
    return {
        "I1": (4 * F * B10 - 4 * B * F10) / (3 * F**3),
        "I2": sympy.Rational(1, 3),
        "I3": (F01 + 3 * F * R) / B,
        "I4": (4 * B * F10 - 4 * F * B10) / (3 * F**3),
        "I5": (3 * F * B01 + 3 * F * B * R - 5 * B * F01) / B**2,
        "I6": (B * F10 - F * B10) / (3 * F**3),
        "I7": 9 * F**4 * S / B**3,
        "I8": (5 * B * F01 - 3 * F * B01 - 3 * F * B * R) / B**2,
        "L": (6 * B * F01 - 3 * B01 * F) / B**2,
        "K": (F * B10 - B * F10) / F**3,
        "IB1": 15 * F01 / B - sympy.Rational(42, 5) * F * B01 / B**2 - sympy.Rational(27, 5) * F * R / B,
        "IB2": -6 * b(1, 1) / (F * B) + 6 * B10 * B01 / (F * B**2) + 9 * r(1, 0) / F - 9 * F**4 * S / B**3,
        "IB3": -5 * B10 / F**2 + 5 * B * F10 / F**3,
        "IB4": 90 * F01 / B - sympy.Rational(261, 5) * F * B01 / B**2 - sympy.Rational(216, 5) * F * R / B,
    }


def reference_operators() -> tuple[tuple[Expr, Expr], tuple[Expr, Expr]]:
    """D1 = (B/F^2) d/dx and D2 = (3F/B) d/dy."""
    return (B / F**2, sympy.Integer(0)), (sympy.Integer(0), 3 * F / B)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def _resolution_report(c: SpecialCalculus, settings: Settings) -> IdentityReport:
    """
    The unresolved R_{2.1} condition equals k (S_{3.0} - rule) with k the non-zero coefficient of S_{3.0}.

    A condition free of S_{3.0} fails with the condition itself as the residual.
    """
    name = "R_{2.1} condition is a multiple of S_{3.0} minus its rewrite"
    base = c.unresolved()
    condition = base.compatibility_condition()
    atom = s(3, 0)
    coefficient = canonical(sympy.diff(condition, atom))
    if coefficient == 0:
        return IdentityReport(name, condition, IdentityStatus.failed, f"{atom} does not occur in the condition")
    return check_identity(name, condition, coefficient * (atom - c.rule(atom)), settings, base)


def derivation_reports(frame: SpecialFrame, settings: Settings | None = None) -> list[IdentityReport]:
    """
    The derivative cascade, the extracted R rules, the compatibility condition and the frame constraints.
    """
    settings = settings or Settings()
    c = frame.calculus
    ode = frame.ode
    cascade = reference_cascade()
    computed = {
        "P_{1.0}": partial(ode.P, 1, 0),
        "P_{0.1}": partial(ode.P, 0, 1),
        "Q_{1.0}": partial(ode.Q, 1, 0),
        "Q_{0.1}": partial(ode.Q, 0, 1),
        "P_{0.2}": partial(ode.P, 0, 2),
        "Q_{1.1}": partial(ode.Q, 1, 1),
        "Q_{0.2}": partial(ode.Q, 0, 2),
        "R_{2.0}": c.rule(r(2, 0)),
        "R_{1.1}": c.rule(r(1, 1)),
    }
    reports = [check_identity(f"{name} closed form", computed[name], cascade[name], settings) for name in cascade]

    reports += [
        check_identity(
            f"{name}_{{1.1}} routes agree", partial(partial(e, 1, 0), 0, 1), partial(partial(e, 0, 1), 1, 0), settings
        )
        for name, e in (("P", ode.P), ("Q", ode.Q))
    ]

    reports.append(_resolution_report(c, settings))
    compatible = c.compatibility_condition()
    reports.append(check_identity("R_{2.1} routes agree after the S_{3.0} rewrite", compatible, 0, settings))
    reports.append(check_identity(
        "R_{2.2} routes agree",
        c.partial(c.rule(r(2, 0)), 0, 2),
        c.partial(c.partial(c.rule(r(1, 1)), 1, 0), 0, 1),
        settings,
        c,
    ))

    A, B_formula = covector_alpha(ode, c)
    G, H = covector_beta(ode, (A, B_formula), c)
    reports += [
        check_identity("A = 0", A, 0, settings, c),
        check_identity("B from the coefficients = B", B_formula, B, settings, c),
        check_identity("G = 0", G, 0, settings, c),
        check_identity("H = -3 P B^2", H, -3 * ode.P * B**2, settings, c),
        check_identity("F^5 from the coefficients = F^5", pseudoscalar_f5(ode, (A, B_formula), c), F**5, settings, c),
    ]

    L, K = reference_scalars()["L"], reference_scalars()["K"]
    u, v = frame.u, frame.v
    reports += [
        check_identity("u v_{1.0} = -K v", u * partial(v, 1, 0), -K * v, settings, c),
        check_identity("v u_{0.1} = -L u", v * partial(u, 0, 1), -L * u, settings, c),
    ]

    witness = frame.witness()
    expected = {"P": -1, "Q": 0, "H": 3, "u": 1, "v": 3}
    reports += [
        check_identity(f"witness {name} = {value}", witness[name], value, settings) for name, value in expected.items()
    ]
    return reports


def verify_reduced_forms(frame: SpecialFrame, settings: Settings | None = None) -> list[IdentityReport]:
    """Every general formula evaluated in the frame against its reduced form."""
    settings = settings or Settings()
    c = frame.calculus
    bgd_chain = chain(frame.ode, c)
    reports = [
        check_identity(f"{name} reduced form", getattr(bgd_chain, name), value, settings, c)
        for name, value in reference_chain().items()
    ]

    A, B_formula = covector_alpha(frame.ode, c)
    G, H = covector_beta(frame.ode, (A, B_formula), c)
    F5 = pseudoscalar_f5(frame.ode, (A, B_formula), c)
    jet = SdJet(frame.ode, A, B_formula, G, H, F5, F, c)
    core = frame_and_connection(jet)
    explicit = scalars_explicit(jet)
    solved = scalars_via_connection(core)
    references = reference_scalars()
    for name in SdScalars.NAMES:
        reports.append(check_identity(f"{name} reduced form", getattr(explicit, name), references[name], settings, c))
        reports.append(
            check_identity(f"{name} via connection reduced form", getattr(solved, name), references[name], settings, c)
        )

    D1, D2 = reference_operators()
    operators = mu_and_operators(bgd_chain, F)
    reports += [
        check_identity(f"D{k} [{i + 1}] reduced form", computed[i], printed[i], settings, c)
        for k, computed, printed in ((1, operators.D1, D1), (2, operators.D2, D2))
        for i in (0, 1)
    ]
    bgd = scalars_bgd(bgd_chain, operators)
    reports += [
        check_identity(f"{name} reduced form", getattr(bgd, name), references[name], settings, c)
        for name in ("IB1", "IB2", "IB3", "IB4")
    ]
    return reports


def _reference_families(c: SpecialCalculus) -> tuple[SdScalars, BgdScalars, BgdOperators]:
    ref = reference_scalars()
    sd = SdScalars(*(ref[name] for name in SdScalars.NAMES), route="reduced forms")
    D1, D2 = reference_operators()
    operators = BgdOperators(mu1=-F, D1=D1, D2=D2, calculus=c)
    omega1, omega2 = solve_in_frame(D1, D2, commutator(D1, D2, c), c)
    bgd = BgdScalars(
        ref["IB1"], ref["IB2"], ref["IB3"], ref["IB4"],
        omega1, omega2,
        c.simplify((8 * ref["IB1"] - ref["IB4"]) / 5), c.simplify(ref["IB3"] / 5),
        -F,
    )
    return sd, bgd, operators


def crosscheck_theorems(frame: SpecialFrame, settings: Settings | None = None) -> list[IdentityReport]:
    """The scheme dictionaries and the Omega relations between the reduced forms alone."""
    settings = settings or Settings()
    c = frame.calculus
    sd, bgd, operators = _reference_families(c)
    reports = relation_reports(sd, settings, c)
    reports += crosswalk(sd, bgd, operators, settings)
    reports += [
        check_identity("Omega1 from [D1, D2] = L", bgd.Omega1, sd.L, settings, c),
        check_identity("Omega2 from [D1, D2] = -K", bgd.Omega2, -sd.K, settings, c),
        check_identity("Omega1 = (8 IB1 - IB4) / 5 = L", bgd.Omega1_closed, sd.L, settings, c),
        check_identity("Omega2 = IB3 / 5 = -K", bgd.Omega2_closed, -sd.K, settings, c),
    ]
    return reports


def special_suite(settings: Settings | None = None) -> list[IdentityReport]:
    """All three suites on a freshly built frame."""
    frame = build_special()
    reports = derivation_reports(frame, settings)
    reports += verify_reduced_forms(frame, settings)
    reports += crosscheck_theorems(frame, settings)
    return reports
