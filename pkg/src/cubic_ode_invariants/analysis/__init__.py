"""
Classification, identity suites, the special-coordinates replay and seeded fuzzing.
"""

from cubic_ode_invariants.analysis.compare import IdentityReport
from cubic_ode_invariants.analysis.compare import Verdict
from cubic_ode_invariants.analysis.compare import check_weights
from cubic_ode_invariants.analysis.compare import classify
from cubic_ode_invariants.analysis.compare import crosswalk
from cubic_ode_invariants.analysis.compare import verify_identities
from cubic_ode_invariants.analysis.fuzz import fuzz
from cubic_ode_invariants.analysis.special import build_special
from cubic_ode_invariants.analysis.special import crosscheck_theorems
from cubic_ode_invariants.analysis.special import derivation_reports
from cubic_ode_invariants.analysis.special import verify_reduced_forms

__all__ = [
    "classify",
    "verify_identities",
    "crosswalk",
    "check_weights",
    "build_special",
    "derivation_reports",
    "verify_reduced_forms",
    "crosscheck_theorems",
    "fuzz",
    "IdentityReport",
    "Verdict",
]
