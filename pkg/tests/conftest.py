from pathlib import Path

import pytest

from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.ode import OdeCoefficients

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def zero_ode() -> OdeCoefficients:
    return OdeCoefficients.zero()


@pytest.fixture
def cubic_ode() -> OdeCoefficients:
    """y'' = 1 + x^2 y'^3, in general position with F^5 = 64 x^5 - 24."""
    return OdeCoefficients(1, 0, 0, X**2, name="P = 1, S = x^2")


@pytest.fixture
def y_squared_ode() -> OdeCoefficients:
    """y'' = y^2, neither maximally degenerate nor in general position."""
    return OdeCoefficients(Y**2, 0, 0, 0, name="P = y^2")


@pytest.fixture(scope="module")
def special_frame():
    from cubic_ode_invariants.analysis.special import build_special

    return build_special()
