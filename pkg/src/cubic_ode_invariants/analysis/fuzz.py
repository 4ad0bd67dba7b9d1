"""
Seeded random corpora of polynomial equations run through the identity suite.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
import sympy

from cubic_ode_invariants.analysis.compare import IdentityReport
from cubic_ode_invariants.analysis.compare import verify_identities
from cubic_ode_invariants.config import Settings
from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.expr import to_text
from cubic_ode_invariants.core.ode import OdeCoefficients

logger = logging.getLogger(__name__)


def fixed_corpus() -> list[OdeCoefficients]:
    """The zero equation, y'' = 1 + x^2 y'^3 and y'' = y^2."""
    return [
        OdeCoefficients.zero(),
        OdeCoefficients(1, 0, 0, X**2, name="P = 1, S = x^2"),
        OdeCoefficients(Y**2, 0, 0, 0, name="P = y^2"),
    ]


def random_polynomial(rng: np.random.Generator, degree: int, bound: int) -> sympy.Expr:
    """A polynomial in x, y of total degree at most ``degree`` with integer coefficients in [-bound, bound]."""
    monomials = [X**i * Y**j for i in range(degree + 1) for j in range(degree + 1 - i)]
    coefficients = rng.integers(-bound, bound, size=len(monomials), endpoint=True)
    return sympy.Add(*(int(c) * m for c, m in zip(coefficients, monomials, strict=True)))


def random_ode(rng: np.random.Generator, degree: int, bound: int, name: str | None = None) -> OdeCoefficients:
    return OdeCoefficients(*(random_polynomial(rng, degree, bound) for _ in range(4)), name=name)


def random_corpus(settings: Settings) -> list[OdeCoefficients]:
    """
    ``settings.trials`` random equations; the same seed always yields the same corpus.

    Example:
        >>> random_corpus(Settings(seed=3, trials=2)) == random_corpus(Settings(seed=3, trials=2))
        True
    """
    rng = np.random.default_rng(settings.seed)
    return [
        random_ode(rng, settings.degree, settings.coefficient_bound, name=f"trial {index}")
        for index in range(settings.trials)
    ]


@dataclass(frozen=True)
class Trial:
    """One equation of a fuzz run with its reports."""

    index: int
    ode: OdeCoefficients
    reports: tuple[IdentityReport, ...]

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    def labelled(self) -> list[IdentityReport]:
        """Reports prefixed with the equation they belong to."""
        label = self.ode.name or f"trial {self.index}"
        return [
            IdentityReport(f"{label}: {report.name}", report.residual, report.status, report.detail)
            for report in self.reports
        ]


def _run(job: tuple[int, OdeCoefficients, Settings]) -> Trial:
    index, ode, settings = job
    return Trial(index, ode, tuple(verify_identities(ode, settings)))


def fuzz(settings: Settings | None = None, include_fixed: bool = True) -> list[Trial]:
    """
    Run the identity suite over the fixed and the random corpus.

    Trials are returned in corpus order whatever order the workers finish in.

    Args:
        settings: Seed, trial count, degree, coefficient bound and worker count
        include_fixed: Whether the three fixed equations precede the random ones

    Returns:
        One :class:`Trial` per equation
    """
    settings = settings or Settings()
    corpus = (fixed_corpus() if include_fixed else []) + random_corpus(settings)
    jobs = [(index, ode, settings) for index, ode in enumerate(corpus)]
    logger.info("fuzzing %d equations with seed %d on %d worker(s)", len(jobs), settings.seed, settings.workers)
    if settings.workers == 1:
        trials = []
        for job in jobs:
            trials.append(_run(job))
            _log_trial(trials[-1])
        return trials
    with ProcessPoolExecutor(max_workers=settings.workers) as executor:
        trials = list(executor.map(_run, jobs))
    for trial in trials:
        _log_trial(trial)
    return trials


def _log_trial(trial: Trial) -> None:
    coefficients = ", ".join(f"{k} = {v}" for k, v in zip("PQRS", map(to_text, trial.ode.as_tuple()), strict=True))
    outcome = "passed" if trial.passed else "FAILED"
    logger.info("%s (%s): %d identities %s", trial.ode.name, coefficients, len(trial.reports), outcome)
