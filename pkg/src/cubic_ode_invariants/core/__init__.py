"""
Core functionality: the expression kernel, the FExt ring, equations and transformations.
"""

from cubic_ode_invariants.core.expr import PLANE
from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.expr import equal
from cubic_ode_invariants.core.expr import evaluate
from cubic_ode_invariants.core.expr import normalize
from cubic_ode_invariants.core.expr import partial
from cubic_ode_invariants.core.expr import solve_linear_for
from cubic_ode_invariants.core.fext import FExt
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.core.ode import PointTransformation
from cubic_ode_invariants.core.ode import PseudoField
from cubic_ode_invariants.core.ode import jacobians
from cubic_ode_invariants.core.ode import pullback
from cubic_ode_invariants.core.ode import raise_index
from cubic_ode_invariants.core.ode import transform_components
from cubic_ode_invariants.core.parser import parse

__all__ = [
    "PLANE",
    "X",
    "Y",
    "parse",
    "partial",
    "normalize",
    "equal",
    "evaluate",
    "solve_linear_for",
    "FExt",
    "OdeCoefficients",
    "PointTransformation",
    "PseudoField",
    "jacobians",
    "pullback",
    "transform_components",
    "raise_index",
]
