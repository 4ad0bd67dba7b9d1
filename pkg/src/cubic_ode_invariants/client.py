# ruff: noqa: N803
"""
Client facade over one equation.

Provides a high-level interface to classification, both invariant families and the identity suites.
"""

from __future__ import annotations

from functools import cached_property
from pathlib import Path

from cubic_ode_invariants.analysis.compare import IdentityReport
from cubic_ode_invariants.analysis.compare import Verdict
from cubic_ode_invariants.analysis.compare import check_weights
from cubic_ode_invariants.analysis.compare import classify
from cubic_ode_invariants.analysis.compare import verify_identities
from cubic_ode_invariants.config import Settings
from cubic_ode_invariants.core.files import parse_ode
from cubic_ode_invariants.core.files import read_ode
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.core.ode import PointTransformation
from cubic_ode_invariants.core.ode import pullback
from cubic_ode_invariants.core.parser import parse
from cubic_ode_invariants.invariants.bgd import BgdChain
from cubic_ode_invariants.invariants.bgd import BgdOperators
from cubic_ode_invariants.invariants.bgd import BgdScalars
from cubic_ode_invariants.invariants.bgd import chain
from cubic_ode_invariants.invariants.bgd import mu_and_operators
from cubic_ode_invariants.invariants.bgd import scalars_bgd
from cubic_ode_invariants.invariants.catalog import invariant_values
from cubic_ode_invariants.invariants.sd import SdCore
from cubic_ode_invariants.invariants.sd import SdJet
from cubic_ode_invariants.invariants.sd import SdScalars
from cubic_ode_invariants.invariants.sd import frame_and_connection
from cubic_ode_invariants.invariants.sd import scalars_explicit
from cubic_ode_invariants.invariants.sd import scalars_via_connection
from cubic_ode_invariants.results.report import RunReport


class InvariantClient:
    """
    Client for one equation y'' = P + 3Qy' + 3Ry'^2 + Sy'^3.

    Organized into managers:
    - sd: Frame, connection and the scalars I1..I8, L, K
    - bgd: The chain alpha..lambda, operators D1, D2 and IB1..IB4
    - checks: Identity suites and transformation laws

    Attributes:
        ode: Coefficients of the equation
        settings: Seeds and tolerances used by every check
    """

    def __init__(self, ode: OdeCoefficients, settings: Settings | None = None):
        """
        Initialize InvariantClient with parsed coefficients.

        Args:
            ode: Coefficients of the equation
            settings: Run settings; defaults to ``Settings()``

        Note:
            Typically you won't call this directly. Use ``from_file()`` or ``from_strings()`` instead.
        """
        self._ode = ode
        self._settings = settings or Settings()
        self._sd = SdManager(ode)
        self._bgd = BgdManager(ode, self._sd)
        self._checks = ChecksManager(ode, self._settings)

    @classmethod
    def from_file(cls, path: str | Path, settings: Settings | None = None) -> InvariantClient:
        """
        Read an ODE file.

        Raises:
            OdeFileError: If the file is malformed

        Example:
            >>> client = InvariantClient.from_file("data/odes/cubic_in_x.ode")
            >>> client.classify(point=(0, 0)).kind.value
            'GeneralPositionAt'
        """
        return cls(read_ode(path), settings)

    @classmethod
    def from_strings(
        cls,
        P: str = "0",
        Q: str = "0",
        R: str = "0",
        S: str = "0",
        name: str | None = None,
        settings: Settings | None = None,
    ) -> InvariantClient:
        """
        Parse the four coefficients from expression strings.

        Example:
            >>> InvariantClient.from_strings(P="y^2").classify().kind.value
            'OtherCase'
        """
        return cls(OdeCoefficients(parse(P), parse(Q), parse(R), parse(S), name=name), settings)

    @classmethod
    def from_text(cls, text: str, settings: Settings | None = None) -> InvariantClient:
        return cls(parse_ode(text), settings)

    @property
    def ode(self) -> OdeCoefficients:
        return self._ode

    @property
    def settings(self) -> Settings:
        return self._settings

    @property
    def sd(self) -> SdManager:
        return self._sd

    @property
    def bgd(self) -> BgdManager:
        return self._bgd

    @property
    def checks(self) -> ChecksManager:
        return self._checks

    def classify(self, point: tuple | None = None) -> Verdict:
        return classify(self._ode, point, seed=self._settings.seed, probes=self._settings.probes)

    def invariants(self, point: tuple | None = None) -> RunReport:
        """Both families, evaluated at ``point`` or kept symbolic."""
        sd, bgd = invariant_values(self._ode, self._settings.scheme)
        return RunReport.build(verdict=self.classify(point), scalars_sd=sd, scalars_bgd=bgd, point=point)

    def transformed(self, t: PointTransformation) -> InvariantClient:
        """A client for the equation pulled back along ``t``."""
        pulled = pullback(self._ode, t)
        return InvariantClient(pulled, self._settings)

    def __enter__(self) -> InvariantClient:
        """Context manager entry."""
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Context manager exit."""
        pass

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(ode={self._ode.name or self._ode.to_text()}, seed={self._settings.seed})"


class SdManager:
    """
    Frame-scheme quantities, computed once and cached.

    Raises NotGeneralPositionError on first access of anything needing F when F^5 vanishes identically.
    """

    def __init__(self, ode: OdeCoefficients):
        self._ode = ode

    @cached_property
    def jet(self) -> SdJet:
        return SdJet.from_ode(self._ode)

    @cached_property
    def core(self) -> SdCore:
        return frame_and_connection(self.jet)

    @cached_property
    def scalars(self) -> SdScalars:
        """
        Scalars from their closed forms.

        Example:
            >>> InvariantClient.from_strings(P="1", S="x^2").sd.scalars.I2
            1/3
        """
        return scalars_explicit(self.jet)

    @cached_property
    def scalars_via_connection(self) -> SdScalars:
        return scalars_via_connection(self.core)


class BgdManager:
    """Chain-scheme quantities, sharing the formal root f with the frame scheme."""

    def __init__(self, ode: OdeCoefficients, sd: SdManager):
        self._ode = ode
        self._sd = sd

    @cached_property
    def chain(self) -> BgdChain:
        return chain(self._ode, higher=True)

    @cached_property
    def operators(self) -> BgdOperators:
        return mu_and_operators(self.chain, self._sd.jet.F)

    @cached_property
    def scalars(self) -> BgdScalars:
        return scalars_bgd(self.chain, self.operators)


class ChecksManager:
    """Identity suites for the client's equation."""

    def __init__(self, ode: OdeCoefficients, settings: Settings):
        self._ode = ode
        self._settings = settings

    def identities(self) -> list[IdentityReport]:
        """
        The full cross-scheme identity suite.

        Example:
            >>> all(r.passed for r in InvariantClient.from_strings(P="1", S="x^2").checks.identities())
            True
        """
        return verify_identities(self._ode, self._settings)

    def weights(self, t: PointTransformation) -> list[IdentityReport]:
        """Transformation laws under ``t``; the map is validated first."""
        t.validate(self._settings.points, self._settings.seed, self._settings.tolerance)
        return check_weights(self._ode, t, self._settings)

    def report(self) -> RunReport:
        verdict = classify(self._ode, seed=self._settings.seed, probes=self._settings.probes)
        return RunReport.build(verdict=verdict, identities=self.identities())
