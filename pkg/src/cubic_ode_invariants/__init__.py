"""
Cubic ODE invariants - point-transformation invariants of y'' = P + 3Qy' + 3Ry'^2 + Sy'^3.

Computes two complete families of invariants, classifies equations into the cases of
maximal degeneration and general position, and verifies the identities between the two
families both for concrete equations and symbolically in special coordinates.

Package Structure:
    - core: Expressions, parsing, the FExt ring, equations, transformations and file formats
    - invariants: The frame/connection scheme and the alpha..lambda chain scheme
    - analysis: Classification, identity suites, the special-coordinates replay and fuzzing
    - results: Run reports as JSON and text tables
"""

from cubic_ode_invariants.analysis.compare import IdentityReport
from cubic_ode_invariants.analysis.compare import Verdict
from cubic_ode_invariants.analysis.compare import classify
from cubic_ode_invariants.analysis.compare import crosswalk
from cubic_ode_invariants.analysis.compare import verify_identities
from cubic_ode_invariants.analysis.special import build_special
from cubic_ode_invariants.analysis.special import crosscheck_theorems
from cubic_ode_invariants.analysis.special import verify_reduced_forms
from cubic_ode_invariants.client import InvariantClient
from cubic_ode_invariants.config import ConfigurationError
from cubic_ode_invariants.config import Settings
from cubic_ode_invariants.core.expr import ExpressionError
from cubic_ode_invariants.core.fext import FExt
from cubic_ode_invariants.core.files import OdeFileError
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.core.ode import PointTransformation
from cubic_ode_invariants.core.ode import pullback
from cubic_ode_invariants.core.parser import ExpressionParseError
from cubic_ode_invariants.core.parser import parse
from cubic_ode_invariants.invariants.bgd import chain
from cubic_ode_invariants.invariants.bgd import scalars_bgd
from cubic_ode_invariants.invariants.sd import NotGeneralPositionError
from cubic_ode_invariants.invariants.sd import frame_and_connection
from cubic_ode_invariants.invariants.sd import scalars_explicit
from cubic_ode_invariants.invariants.sd import scalars_via_connection
from cubic_ode_invariants.results.report import RunReport

__version__ = "0.1.0"
__all__ = [
    # Client
    "InvariantClient",
    "Settings",
    # Equations
    "OdeCoefficients",
    "PointTransformation",
    "parse",
    "pullback",
    "FExt",
    # Invariants
    "frame_and_connection",
    "scalars_explicit",
    "scalars_via_connection",
    "chain",
    "scalars_bgd",
    # Verification
    "classify",
    "verify_identities",
    "crosswalk",
    "build_special",
    "verify_reduced_forms",
    "crosscheck_theorems",
    "Verdict",
    "IdentityReport",
    "RunReport",
    # Exceptions
    "ExpressionError",
    "ExpressionParseError",
    "OdeFileError",
    "NotGeneralPositionError",
    "ConfigurationError",
]
