# ruff: noqa: N806
"""
Both invariant families of one equation, keyed by the names used in reports.
"""

from __future__ import annotations

import logging

from cubic_ode_invariants.core.enums import Scheme
from cubic_ode_invariants.core.expr import is_zero
from cubic_ode_invariants.core.fext import FExt
from cubic_ode_invariants.core.fext import Scalar
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.invariants.bgd import chain
from cubic_ode_invariants.invariants.bgd import mu_and_operators
from cubic_ode_invariants.invariants.bgd import scalars_bgd
from cubic_ode_invariants.invariants.sd import SdJet
from cubic_ode_invariants.invariants.sd import covector_alpha
from cubic_ode_invariants.invariants.sd import covector_beta
from cubic_ode_invariants.invariants.sd import pseudoscalar_f5
from cubic_ode_invariants.invariants.sd import scalars_explicit

logger = logging.getLogger(__name__)


def invariant_values(
    ode: OdeCoefficients, scheme: Scheme = Scheme.both
) -> tuple[dict[str, Scalar], dict[str, Scalar]]:
    """
    Relative invariants always, absolute scalars when F^5 does not vanish identically.

    Both families share one formal root f, so FExt values of the two schemes can be
    combined directly.

    Args:
        ode: Coefficients of the equation
        scheme: Which families to compute

    Returns:
        (frame-scheme values, chain-scheme values); an excluded family is an empty dict

    Example:
        >>> sd, _ = invariant_values(OdeCoefficients(1, 0, 0, X**2), Scheme.sd)
        >>> sd["I2"]
        1/3
    """
    scheme = Scheme(scheme)
    A, B = covector_alpha(ode)
    G, H = covector_beta(ode, (A, B))
    F5 = pseudoscalar_f5(ode, (A, B))
    general = not is_zero(F5)
    F = FExt.generator(F5) if general else None
    if not general:
        logger.warning("F^5 vanishes identically for %s; only relative invariants are reported", ode.name or "equation")

    sd: dict[str, Scalar] = {}
    if scheme.includes_sd:
        sd = {"A": A, "B": B, "G": G, "H": H, "F5": F5}
        if general:
            sd.update(scalars_explicit(SdJet(ode, A, B, G, H, F5, F)).as_dict())

    bgd: dict[str, Scalar] = {}
    if scheme.includes_bgd:
        bgd_chain = chain(ode)
        bgd = {name: getattr(bgd_chain, name) for name in ("J0", "J1", "J2", "J3", "J4")}
        if general:
            bgd.update(scalars_bgd(bgd_chain, mu_and_operators(bgd_chain, F)).as_dict())
    return sd, bgd
