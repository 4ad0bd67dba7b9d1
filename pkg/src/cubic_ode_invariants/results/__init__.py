"""
Run reports: deterministic JSON and pandas text tables.
"""

from cubic_ode_invariants.results.report import RunReport
from cubic_ode_invariants.results.report import ScalarValue

__all__ = ["RunReport", "ScalarValue"]
