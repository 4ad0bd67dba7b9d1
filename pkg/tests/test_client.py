import pytest
import sympy

from cubic_ode_invariants import InvariantClient
from cubic_ode_invariants.config import Settings
from cubic_ode_invariants.core.enums import Scheme
from cubic_ode_invariants.core.enums import VerdictKind
from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.fext import simplify
from cubic_ode_invariants.core.fext import vanishes
from cubic_ode_invariants.core.ode import PointTransformation
from cubic_ode_invariants.core.ode import TransformationError
from cubic_ode_invariants.invariants.sd import NotGeneralPositionError


@pytest.fixture
def client() -> InvariantClient:
    return InvariantClient.from_strings(P="1", S="x^2", name="cubic", settings=Settings(points=5))


def test_from_file(data_dir):
    with InvariantClient.from_file(data_dir / "odes" / "cubic_in_x.ode") as client:
        assert client.classify(point=(0, 0)).kind is VerdictKind.generalPosition
        assert client.ode.name == "P = 1, S = x^2"


def test_from_text():
    client = InvariantClient.from_text("P = y^2\nQ = 0\nR = 0\nS = 0\n")
    assert client.classify().kind is VerdictKind.otherCase


def test_sd_manager_caches(client):
    assert client.sd.jet is client.sd.jet
    assert client.sd.scalars.I2 == sympy.Rational(1, 3)
    assert vanishes(simplify(client.sd.scalars.I6 - client.sd.scalars_via_connection.I6))


def test_bgd_manager_shares_the_root(client):
    assert client.bgd.operators.mu1.equals(-client.sd.jet.F)
    assert client.bgd.chain.lambda10 is not None
    assert vanishes(simplify(client.bgd.scalars.IB3 - 15 * client.sd.scalars.I6))


def test_managers_outside_general_position():
    client = InvariantClient.from_strings(P="y^2")
    with pytest.raises(NotGeneralPositionError):
        client.sd.scalars  # noqa: B018


def test_invariants_report(client):
    report = client.invariants(point=(0, 0))
    assert report.scalars_sd["F5"].value == "-24"
    assert "IB1" in report.scalars_bgd


def test_invariants_respect_scheme():
    client = InvariantClient.from_strings(P="1", S="x^2", settings=Settings(scheme=Scheme.bgd))
    report = client.invariants()
    assert report.scalars_sd == {}
    assert "J0" in report.scalars_bgd


def test_checks(client):
    assert all(report.passed for report in client.checks.identities())
    assert client.checks.report().passed


def test_weights_validate_the_map(client):
    broken = PointTransformation((X, 2 * Y), (X, Y), name="broken")
    with pytest.raises(TransformationError):
        client.checks.weights(broken)
    shear = PointTransformation((X, Y + X**2), (X, Y - X**2), name="shear")
    assert all(report.passed for report in client.checks.weights(shear))


def test_transformed_client(client):
    swapped = client.transformed(PointTransformation.swap())
    assert swapped.classify().kind is VerdictKind.generalPosition
    assert swapped.settings is client.settings


def test_repr(client):
    assert repr(client) == "InvariantClient(ode=cubic, seed=0)"
