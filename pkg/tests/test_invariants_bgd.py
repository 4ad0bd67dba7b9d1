import pytest

from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.expr import is_zero
from cubic_ode_invariants.core.fext import FExt
from cubic_ode_invariants.core.fext import simplify
from cubic_ode_invariants.core.fext import vanishes
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.invariants.bgd import BgdScalars
from cubic_ode_invariants.invariants.bgd import chain
from cubic_ode_invariants.invariants.bgd import mu_and_operators
from cubic_ode_invariants.invariants.bgd import scalars_bgd
from cubic_ode_invariants.invariants.sd import NotGeneralPositionError
from cubic_ode_invariants.invariants.sd import SdJet
from cubic_ode_invariants.invariants.sd import covector_alpha
from cubic_ode_invariants.invariants.sd import covector_beta
from cubic_ode_invariants.invariants.sd import frame_and_connection
from cubic_ode_invariants.invariants.sd import pseudoscalar_f5
from cubic_ode_invariants.invariants.sd import scalars_explicit


def test_chain_of_cubic_example(cubic_ode):
    c = chain(cubic_ode)
    assert (c.alpha0, c.alpha1, c.alpha2) == (0, X**2, 2 * X)
    assert (c.beta1, c.beta2) == (4 * X, 2)
    assert (c.Gamma0, c.Gamma1) == (36, 48 * X**4)
    assert is_zero(c.J0 - (24 - 64 * X**5))


def test_chain_skips_higher_terms_unless_asked(cubic_ode):
    assert chain(cubic_ode).eps10 is None
    assert "eps10" not in chain(cubic_ode).as_dict()
    higher = chain(cubic_ode, higher=True)
    assert higher.lambda10 is not None
    assert "lambda10" in higher.as_dict()


@pytest.mark.parametrize(
    "ode",
    [OdeCoefficients(1, 0, 0, X**2), OdeCoefficients(X * Y, 1, Y, X), OdeCoefficients(Y**2, 0, 0, 0)],
    ids=["P=1,S=x^2", "mixed", "P=y^2"],
)
def test_chain_matches_frame_scheme(ode):
    c = chain(ode)
    A, B = covector_alpha(ode)
    G, H = covector_beta(ode, (A, B))
    assert is_zero(c.beta1 - A)
    assert is_zero(c.beta2 - B)
    assert is_zero(c.Gamma0 + H)
    assert is_zero(c.Gamma1 - G)
    assert is_zero(c.J0 + pseudoscalar_f5(ode, (A, B)))
    assert is_zero(c.three_j0_residual())


def test_maximal_degeneration(zero_ode):
    assert chain(zero_ode).is_maximally_degenerate


def test_operators_need_general_position(y_squared_ode):
    with pytest.raises(NotGeneralPositionError):
        mu_and_operators(chain(y_squared_ode))


def test_default_root_is_fifth_root_of_minus_j0(cubic_ode):
    operators = mu_and_operators(chain(cubic_ode))
    assert isinstance(operators.mu1, FExt)
    assert is_zero(operators.mu1.modulus - (64 * X**5 - 24))


def test_operators_equal_frame(cubic_ode):
    jet = SdJet.from_ode(cubic_ode)
    core = frame_and_connection(jet)
    operators = mu_and_operators(chain(cubic_ode), jet.F)
    assert operators.mu1.equals(-jet.F)
    for k in (0, 1):
        assert vanishes(simplify(operators.D1[k] - core.X[k]))
        assert vanishes(simplify(operators.D2[k] - core.Y[k]))


def test_second_route_to_d2(cubic_ode):
    operators = mu_and_operators(chain(cubic_ode))
    assert operators.mu2 is not None
    assert all(vanishes(r) for r in operators.d2_route_residuals())


def test_d2_route_is_skipped_when_beta1_vanishes():
    c = chain(OdeCoefficients(1, 0, 0, Y**2))
    assert c.beta1 == 0
    assert is_zero(c.J0 + 8 * Y**3)
    assert mu_and_operators(c).d2_route_residuals() is None


def test_omega_routes_agree(cubic_ode):
    scalars = scalars_bgd(chain(cubic_ode))
    assert all(vanishes(simplify(r)) for r in scalars.omega_residuals())
    assert tuple(scalars.as_dict()) == BgdScalars.NAMES


def test_dictionary_to_frame_scalars(cubic_ode):
    jet = SdJet.from_ode(cubic_ode)
    sd = scalars_explicit(jet)
    bgd = scalars_bgd(chain(cubic_ode), mu_and_operators(chain(cubic_ode), jet.F))
    assert vanishes(simplify(bgd.IB3 - 15 * sd.I6))
    assert vanishes(simplify(bgd.IB1 - sd.I3 - 14 * sd.I8 / 5))
    assert vanishes(simplify(bgd.IB4 - 3 * sd.I3 - 87 * sd.I8 / 5))
    assert vanishes(simplify(bgd.Omega1 - sd.L))
    assert vanishes(simplify(bgd.Omega2 + sd.K))
