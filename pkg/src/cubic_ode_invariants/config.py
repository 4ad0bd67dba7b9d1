"""
Run settings shared by the command-line front end, the client and the verification suites.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from cubic_ode_invariants.core.enums import OutputFormat
from cubic_ode_invariants.core.enums import Scheme


class ConfigurationError(ValueError):
    """Raised when a setting is out of its valid range."""

    pass


@dataclass(frozen=True)
class Settings:
    """
    Knobs for every nondeterministic or tolerance-based step.

    Attributes:
        seed: Seed of every probe lattice and random corpus
        tolerance: Relative tolerance of numeric comparisons
        trials: Number of random equations in a fuzz run
        degree: Maximal total degree of fuzzed polynomial coefficients
        points: Matched points used by transformation-law checks
        probes: Probe points tried when searching for a general-position witness
        numeric_points: Probe points used by numeric identity fallbacks
        coefficient_bound: Integer coefficients of fuzzed polynomials lie in [-bound, bound]
        workers: Process-pool size for fuzz trials; 1 runs in-process
        output_format: Report format written to stdout
        timing: Whether to record wall-clock timings in reports
        scheme: Invariant families to compute

    Example:
        >>> Settings(seed=7).replace(trials=3).trials
        3
    """

    seed: int = 0
    tolerance: float = 1e-9
    trials: int = 25
    degree: int = 2
    points: int = 20
    probes: int = 100
    numeric_points: int = 100
    coefficient_bound: int = 3
    workers: int = 1
    output_format: OutputFormat = OutputFormat.text
    timing: bool = False
    scheme: Scheme = Scheme.both

    def __post_init__(self):
        if self.seed < 0:
            raise ConfigurationError(f"seed must be non-negative, got {self.seed}")
        if not 0 < self.tolerance < 1:
            raise ConfigurationError(f"tolerance must lie in (0, 1), got {self.tolerance}")
        for name in ("trials", "points", "probes", "numeric_points", "workers", "coefficient_bound"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be at least 1, got {getattr(self, name)}")
        if self.degree < 0:
            raise ConfigurationError(f"degree must be non-negative, got {self.degree}")
        object.__setattr__(self, "output_format", OutputFormat(self.output_format))
        object.__setattr__(self, "scheme", Scheme(self.scheme))

    @classmethod
    def from_namespace(cls, namespace) -> Settings:
        """Build settings from parsed arguments, ignoring attributes the namespace does not carry."""
        names = {f.name for f in dataclasses.fields(cls)}
        values = {name: value for name, value in vars(namespace).items() if name in names and value is not None}
        if "format" in vars(namespace) and namespace.format is not None:
            values["output_format"] = namespace.format
        return cls(**values)

    def replace(self, **changes) -> Settings:
        return dataclasses.replace(self, **changes)
