from fractions import Fraction

import numpy as np
import pytest
import sympy

from cubic_ode_invariants.analysis.compare import check_identity
from cubic_ode_invariants.analysis.compare import check_weights
from cubic_ode_invariants.analysis.compare import classify
from cubic_ode_invariants.analysis.compare import verify_identities
from cubic_ode_invariants.config import Settings
from cubic_ode_invariants.core.enums import IdentityStatus
from cubic_ode_invariants.core.enums import VerdictKind
from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.files import read_ode
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.core.ode import PointTransformation

SHEAR = PointTransformation((X, Y + X**2), (X, Y - X**2), name="shear")
CUBIC_SHEAR = PointTransformation((X, Y + X**3), (X, Y - X**3), name="cubic shear")
TRANSVERSE_SHEAR = PointTransformation((X + Y**2, Y), (X - Y**2, Y), name="transverse shear")
NONLINEAR_MAPS = (
    SHEAR,
    PointTransformation.swap(),
    CUBIC_SHEAR,
    TRANSVERSE_SHEAR,
    PointTransformation(
        (X + (Y + X**2) ** 2, Y + X**2), (X - Y**2, Y - (X - Y**2) ** 2), name="shear then transverse shear"
    ),
)


def random_affine_maps(seed: int, count: int) -> list[PointTransformation]:
    rng = np.random.default_rng(seed)
    maps = []
    while len(maps) < count:
        matrix = rng.integers(-3, 4, size=(2, 2))
        if round(np.linalg.det(matrix)) == 0:
            continue
        shift = rng.integers(-3, 4, size=2)
        maps.append(PointTransformation.affine(matrix.tolist(), shift.tolist()))
    return maps


def test_classify_zero_equation(zero_ode):
    verdict = classify(zero_ode)
    assert verdict.kind is VerdictKind.maximalDegeneration
    assert not verdict.probabilistic
    assert verdict.point is None


def test_classify_at_requested_point(cubic_ode):
    verdict = classify(cubic_ode, point=(0, 0))
    assert verdict.kind is VerdictKind.generalPosition
    assert verdict.point == (Fraction(0), Fraction(0))
    assert verdict.f5_value == Fraction(-24)
    assert str(verdict) == "GeneralPositionAt(0, 0) with F^5 = -24"


def test_classify_searches_for_a_witness(cubic_ode):
    verdict = classify(cubic_ode, seed=5)
    assert verdict.kind is VerdictKind.generalPosition
    x, _ = verdict.point
    assert verdict.f5_value == 64 * x**5 - 24
    assert classify(cubic_ode, seed=5) == verdict


def test_classify_other_case(y_squared_ode):
    verdict = classify(y_squared_ode)
    assert verdict.kind is VerdictKind.otherCase
    assert verdict.note == "F^5 vanishes identically"


def test_classify_at_a_zero_of_f5():
    ode = OdeCoefficients(1, 0, 0, Y**2)
    verdict = classify(ode, point=(1, 0))
    assert verdict.kind is VerdictKind.otherCase
    assert verdict.note == "F^5 vanishes at the requested point"
    assert classify(ode, point=(1, 1)).kind is VerdictKind.generalPosition


def test_verdict_to_dict(cubic_ode):
    assert classify(cubic_ode, point=(Fraction(1, 2), 0)).to_dict() == {
        "kind": "GeneralPositionAt",
        "point": ["1/2", "0"],
        "F5": "-22",
        "probabilistic": False,
        "note": None,
    }


def test_check_identity_statuses():
    assert check_identity("square", (X + 1) ** 2, X**2 + 2 * X + 1).status is IdentityStatus.exactZero
    failed = check_identity("wrong", X, Y)
    assert failed.status is IdentityStatus.failed
    assert failed.residual_text == "x - y"
    numeric = check_identity("pythagoras", sympy.sin(X) ** 2 + sympy.cos(X) ** 2, 1)
    assert numeric.status is IdentityStatus.numericZero
    assert numeric.passed
    assert "max relative deviation" in numeric.detail


def test_numeric_check_detects_transcendental_mismatch():
    report = check_identity("sine is not cosine", sympy.sin(X), sympy.cos(X), Settings(numeric_points=10))
    assert report.status is IdentityStatus.failed


def test_identity_suite_passes_in_general_position(cubic_ode):
    reports = verify_identities(cubic_ode)
    failures = [r.name for r in reports if not r.passed]
    assert failures == []
    names = {r.name for r in reports}
    assert "IB3 = 15 I6" in names
    assert "J0 = -F^5" in names
    assert "D1 = X [1]" in names


def test_identity_suite_skips_f_identities(y_squared_ode, zero_ode):
    for ode in (y_squared_ode, zero_ode):
        reports = verify_identities(ode)
        assert len(reports) == 7
        assert all(r.passed for r in reports)


def test_transformation_laws_under_shear(cubic_ode):
    reports = check_weights(cubic_ode, SHEAR, Settings(points=5))
    assert [r.name for r in reports if not r.passed] == []
    names = [r.name for r in reports]
    assert "classification preserved under shear" in names
    assert "I3 invariant under shear" in names


def test_transformation_laws_under_swap(y_squared_ode):
    reports = check_weights(y_squared_ode, PointTransformation.swap(), Settings(points=5))
    assert all(r.passed for r in reports)
    assert not any(r.name.endswith("invariant under swap") for r in reports)


@pytest.mark.slow
def test_identity_suite_with_elementary_functions():
    ode = OdeCoefficients(sympy.sin(X), 0, 0, sympy.exp(Y), name="transcendental")
    reports = verify_identities(ode, Settings(numeric_points=20))
    assert [r.name for r in reports if not r.passed] == []


def test_scalar_laws_hold_under_a_rotated_affine_map(data_dir):
    ode = read_ode(data_dir / "odes" / "cubic_in_x.ode")
    t = PointTransformation.affine([[0, 3], [-2, 2]], (1, -2))
    reports = check_weights(ode, t, Settings(points=5))
    assert [r.name for r in reports if not r.passed] == []
    scalar_reports = [r for r in reports if " invariant under " in r.name]
    assert len(scalar_reports) == 6
    assert all(r.status is IdentityStatus.numericZero for r in scalar_reports)


@pytest.mark.parametrize("t", random_affine_maps(seed=11, count=10), ids=lambda t: t.name)
def test_transformation_laws_under_random_affine_maps(cubic_ode, t):
    reports = check_weights(cubic_ode, t, Settings(points=5))
    assert [r.name for r in reports if not r.passed] == []
    assert sum(" invariant under " in r.name for r in reports) == 6


@pytest.mark.slow
@pytest.mark.parametrize("t", NONLINEAR_MAPS, ids=lambda t: t.name)
def test_transformation_laws_under_nonlinear_maps(cubic_ode, t):
    reports = check_weights(cubic_ode, t, Settings(points=5))
    assert [r.name for r in reports if not r.passed] == []
    names = {r.name for r in reports}
    assert f"F^5 weight 5 law under {t.name} [1]" in names
    assert f"classification preserved under {t.name}" in names
