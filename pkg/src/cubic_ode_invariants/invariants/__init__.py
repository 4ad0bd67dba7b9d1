"""
The two invariant families: frame and connection (I1..I8, L, K) and the alpha..lambda chain (IB1..IB4).
"""

from cubic_ode_invariants.invariants.bgd import BgdChain
from cubic_ode_invariants.invariants.bgd import BgdScalars
from cubic_ode_invariants.invariants.bgd import chain
from cubic_ode_invariants.invariants.bgd import mu_and_operators
from cubic_ode_invariants.invariants.bgd import scalars_bgd
from cubic_ode_invariants.invariants.catalog import invariant_values
from cubic_ode_invariants.invariants.sd import NotGeneralPositionError
from cubic_ode_invariants.invariants.sd import SdCore
from cubic_ode_invariants.invariants.sd import SdScalars
from cubic_ode_invariants.invariants.sd import SingularFrameError
from cubic_ode_invariants.invariants.sd import covector_alpha
from cubic_ode_invariants.invariants.sd import covector_beta
from cubic_ode_invariants.invariants.sd import frame_and_connection
from cubic_ode_invariants.invariants.sd import pseudoscalar_f5
from cubic_ode_invariants.invariants.sd import scalars_explicit
from cubic_ode_invariants.invariants.sd import scalars_via_connection

__all__ = [
    "covector_alpha",
    "covector_beta",
    "pseudoscalar_f5",
    "frame_and_connection",
    "scalars_explicit",
    "scalars_via_connection",
    "SdCore",
    "SdScalars",
    "chain",
    "mu_and_operators",
    "scalars_bgd",
    "BgdChain",
    "BgdScalars",
    "invariant_values",
    "NotGeneralPositionError",
    "SingularFrameError",
]
