from fractions import Fraction

import pytest
import sympy

from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.expr import is_zero
from cubic_ode_invariants.core.fext import FExt
from cubic_ode_invariants.core.fext import simplify
from cubic_ode_invariants.core.fext import vanishes
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.invariants.sd import NotGeneralPositionError
from cubic_ode_invariants.invariants.sd import SdJet
from cubic_ode_invariants.invariants.sd import SdScalars
from cubic_ode_invariants.invariants.sd import SingularFrameError
from cubic_ode_invariants.invariants.sd import commutator
from cubic_ode_invariants.invariants.sd import covector_alpha
from cubic_ode_invariants.invariants.sd import covector_beta
from cubic_ode_invariants.invariants.sd import frame_and_connection
from cubic_ode_invariants.invariants.sd import pseudoscalar_f5
from cubic_ode_invariants.invariants.sd import scalars_explicit
from cubic_ode_invariants.invariants.sd import scalars_via_connection
from cubic_ode_invariants.invariants.sd import solve_in_frame


def test_relative_invariants_of_cubic_example(cubic_ode):
    A, B = covector_alpha(cubic_ode)
    assert (A, B) == (4 * X, 2)
    G, H = covector_beta(cubic_ode, (A, B))
    assert (G, H) == (48 * X**4, -36)
    assert pseudoscalar_f5(cubic_ode, (A, B)) == 64 * X**5 - 24


def test_zero_equation_is_maximally_degenerate(zero_ode):
    assert covector_alpha(zero_ode) == (0, 0)
    assert pseudoscalar_f5(zero_ode) == 0


def test_y_squared_has_vanishing_f5(y_squared_ode):
    assert covector_alpha(y_squared_ode) == (2, 0)
    assert pseudoscalar_f5(y_squared_ode) == 0
    with pytest.raises(NotGeneralPositionError):
        SdJet.from_ode(y_squared_ode)


@pytest.mark.parametrize(
    "ode",
    [
        OdeCoefficients(1, 0, 0, X**2),
        OdeCoefficients(X * Y, 1, Y, X),
        OdeCoefficients(Y**3, X, 0, 1 + X),
    ],
    ids=["P=1,S=x^2", "mixed", "cubic-y"],
)
def test_five_identity(ode):
    core = frame_and_connection(ode) if not is_zero(pseudoscalar_f5(ode)) else None
    A, B = covector_alpha(ode)
    G, H = covector_beta(ode, (A, B))
    assert is_zero(3 * pseudoscalar_f5(ode, (A, B)) - (B * H + A * G))
    if core is not None:
        assert is_zero(core.five_identity_residual())


def test_jet_adjoins_fifth_root(cubic_ode):
    jet = SdJet.from_ode(cubic_ode)
    assert isinstance(jet.F, FExt)
    assert is_zero((jet.F**5).coefficients[0] - jet.F5)


def test_i2_is_one_third(cubic_ode):
    explicit = scalars_explicit(cubic_ode)
    assert explicit.I2 == sympy.Rational(1, 3)
    solved = scalars_via_connection(cubic_ode)
    assert vanishes(simplify(solved.I2 - sympy.Rational(1, 3)))


def test_i6_formulas_agree(cubic_ode):
    explicit = scalars_explicit(cubic_ode)
    assert vanishes(simplify(explicit.I6_difference))


def test_i6_vanishes_at_origin(cubic_ode):
    explicit = scalars_explicit(cubic_ode)
    assert explicit.I6.value_at(0, 0) == Fraction(0)
    assert explicit.K.value_at(0, 0) == Fraction(0)


def test_explicit_and_connection_routes_agree(cubic_ode):
    explicit = scalars_explicit(cubic_ode)
    solved = scalars_via_connection(cubic_ode)
    assert explicit.route == "explicit"
    assert solved.route == "connection"
    for name in SdScalars.NAMES:
        assert vanishes(simplify(getattr(explicit, name) - getattr(solved, name))), name


def test_linear_relations_hold_on_connection_route(cubic_ode):
    s = scalars_via_connection(cubic_ode)
    assert vanishes(simplify(s.I1 + 4 * s.I6))
    assert vanishes(simplify(s.I4 - 4 * s.I6))
    assert vanishes(simplify(s.I5 + s.I8))
    assert vanishes(simplify(s.L - s.I3 - s.I8))
    assert vanishes(simplify(s.K + 3 * s.I6))


def test_frame_commutator(cubic_ode):
    core = frame_and_connection(cubic_ode)
    explicit = scalars_explicit(core.jet)
    bracket = commutator(core.X, core.Y)
    for k in (0, 1):
        expected = explicit.L * core.X[k] - explicit.K * core.Y[k]
        assert vanishes(simplify(bracket[k] - expected))


def test_frame_has_expected_weights(cubic_ode):
    core = frame_and_connection(cubic_ode)
    assert core.alpha_field().weight == 1
    assert core.beta_field().components == (36, 48 * X**4)
    assert core.f5_field().weight == 5


def test_solve_in_frame():
    a, b = solve_in_frame((1, 0), (X, 1), (2 + X, 1))
    assert (a, b) == (2, 1)
    with pytest.raises(SingularFrameError):
        solve_in_frame((1, X), (2, 2 * X), (0, 1))
