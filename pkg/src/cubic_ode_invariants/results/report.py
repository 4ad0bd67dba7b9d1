"""
Run reports.

Collects a verdict, the two scalar families and the identity reports of one command into a
:class:`RunReport` that serializes to deterministic JSON and renders as pandas text tables.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction

import pandas as pd

from cubic_ode_invariants.analysis.compare import IdentityReport
from cubic_ode_invariants.analysis.compare import Verdict
from cubic_ode_invariants.core.enums import IdentityStatus
from cubic_ode_invariants.core.enums import Provenance
from cubic_ode_invariants.core.expr import EvaluationError
from cubic_ode_invariants.core.expr import evaluate
from cubic_ode_invariants.core.fext import FExt
from cubic_ode_invariants.core.fext import Scalar
from cubic_ode_invariants.core.fext import as_text

logger = logging.getLogger(__name__)

REPORT_KEYS = ("verdict", "scalars_sd", "scalars_bgd", "identities", "timing_ms")


class ReportFormatError(ValueError):
    """Raised when JSON text is not a run report."""

    pass


@dataclass(frozen=True)
class ScalarValue:
    """
    One reported scalar.

    Attributes:
        value: Exact rational as text, a float, or the symbolic expression as text
        provenance: How the value was obtained
        note: Why a point value is missing, e.g. a pole
    """

    value: str
    provenance: Provenance
    note: str | None = None

    @classmethod
    def of(cls, scalar: Scalar, point: tuple | None = None) -> ScalarValue:
        """
        Report ``scalar`` symbolically, or at ``point`` when one is given.

        Example:
            >>> ScalarValue.of(sympy.Rational(1, 3), (0, 0)).to_dict()
            {'value': '1/3', 'provenance': 'exact'}
        """
        if point is None:
            return cls(as_text(scalar), Provenance.symbolic)
        try:
            if isinstance(scalar, FExt):
                number = scalar.value_at(*point)
            else:
                number = evaluate(scalar, *point)
        except EvaluationError as e:
            logger.debug("value at %s unavailable: %s", point, e)
            return cls(as_text(scalar), Provenance.symbolic, note=str(e))
        if isinstance(number, Fraction):
            return cls(str(number), Provenance.exact)
        return cls(repr(float(number)), Provenance.numeric)

    def to_dict(self) -> dict:
        result = {"value": self.value, "provenance": self.provenance.value}
        if self.note is not None:
            result["note"] = self.note
        return result

    @classmethod
    def from_dict(cls, data: dict) -> ScalarValue:
        return cls(data["value"], Provenance(data["provenance"]), data.get("note"))


@dataclass(frozen=True)
class IdentityRecord:
    """Serialized form of an identity report."""

    name: str
    status: IdentityStatus
    residual: str

    @classmethod
    def of(cls, report: IdentityReport) -> IdentityRecord:
        return cls(report.name, report.status, report.residual_text)

    @property
    def passed(self) -> bool:
        return self.status.passed

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status.value, "residual": self.residual}


@dataclass(frozen=True)
class RunReport:
    """
    Everything one command reports.

    Attributes:
        verdict: Classification verdict as a mapping, if the command classified
        scalars_sd: Frame-scheme scalars by name
        scalars_bgd: Chain-scheme scalars by name
        identities: Checked identities in the order they ran
        timing_ms: Wall-clock time, recorded only when asked for
    """

    verdict: dict | None = None
    scalars_sd: dict[str, ScalarValue] = field(default_factory=dict)
    scalars_bgd: dict[str, ScalarValue] = field(default_factory=dict)
    identities: tuple[IdentityRecord, ...] = ()
    timing_ms: float | None = None

    @classmethod
    def build(
        cls,
        verdict: Verdict | None = None,
        scalars_sd: dict[str, Scalar] | None = None,
        scalars_bgd: dict[str, Scalar] | None = None,
        identities: list[IdentityReport] | None = None,
        point: tuple | None = None,
        timing_ms: float | None = None,
    ) -> RunReport:
        """Convert library results into their reported form."""
        return cls(
            verdict=None if verdict is None else verdict.to_dict(),
            scalars_sd={name: ScalarValue.of(v, point) for name, v in (scalars_sd or {}).items()},
            scalars_bgd={name: ScalarValue.of(v, point) for name, v in (scalars_bgd or {}).items()},
            identities=tuple(IdentityRecord.of(report) for report in identities or ()),
            timing_ms=timing_ms,
        )

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.identities)

    @property
    def failures(self) -> list[IdentityRecord]:
        return [record for record in self.identities if not record.passed]

    def with_timing(self, timing_ms: float | None) -> RunReport:
        return RunReport(self.verdict, self.scalars_sd, self.scalars_bgd, self.identities, timing_ms)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "scalars_sd": {name: value.to_dict() for name, value in self.scalars_sd.items()},
            "scalars_bgd": {name: value.to_dict() for name, value in self.scalars_bgd.items()},
            "identities": [record.to_dict() for record in self.identities],
            "timing_ms": self.timing_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        """
        Parse a report written by :meth:`to_json`.

        Raises:
            ReportFormatError: If keys are missing or values have the wrong shape
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ReportFormatError(f"not JSON: {e}") from e
        if not isinstance(data, dict):
            raise ReportFormatError(f"expected a JSON object, got {type(data).__name__}")
        missing = [key for key in REPORT_KEYS if key not in data]
        if missing:
            raise ReportFormatError(f"report lacks {', '.join(missing)}")
        try:
            return cls(
                verdict=data["verdict"],
                scalars_sd={k: ScalarValue.from_dict(v) for k, v in data["scalars_sd"].items()},
                scalars_bgd={k: ScalarValue.from_dict(v) for k, v in data["scalars_bgd"].items()},
                identities=tuple(
                    IdentityRecord(d["name"], IdentityStatus(d["status"]), d["residual"]) for d in data["identities"]
                ),
                timing_ms=data["timing_ms"],
            )
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ReportFormatError(f"not a run report: {e}") from e

    # ------------------------------------------------------------------
    # text rendering
    # ------------------------------------------------------------------

    def scalar_table(self) -> pd.DataFrame:
        """Scalars of both families, one row each."""
        rows = [
            {"scheme": scheme, "scalar": name, "value": value.value, "provenance": value.provenance.value}
            for scheme, values in (("sd", self.scalars_sd), ("bgd", self.scalars_bgd))
            for name, value in values.items()
        ]
        return pd.DataFrame(rows, columns=["scheme", "scalar", "value", "provenance"])

    def identity_table(self) -> pd.DataFrame:
        df = pd.DataFrame([record.to_dict() for record in self.identities], columns=["name", "status", "residual"])
        return df

    def summary(self) -> pd.Series:
        """Identity counts per status."""
        statuses = pd.Series([record.status.value for record in self.identities], dtype="object")
        return statuses.value_counts().reindex([s.value for s in IdentityStatus], fill_value=0)

    def to_text(self) -> str:
        sections = []
        if self.verdict is not None:
            sections.append(f"verdict: {_verdict_text(self.verdict)}")
        scalars = self.scalar_table()
        if not scalars.empty:
            sections.append(scalars.to_string(index=False))
        identities = self.identity_table()
        if not identities.empty:
            sections.append(identities.to_string(index=False, max_colwidth=80))
            counts = ", ".join(f"{status}: {count}" for status, count in self.summary().items())
            sections.append(f"{len(identities)} identities ({counts})")
        if self.timing_ms is not None:
            sections.append(f"time: {self.timing_ms:.1f} ms")
        return "\n\n".join(sections) + "\n"


def _verdict_text(verdict: dict) -> str:
    text = verdict["kind"]
    if verdict.get("point") is not None:
        x, y = verdict["point"]
        text += f"({x}, {y}) with F^5 = {verdict['F5']}"
    if verdict.get("probabilistic"):
        text += " (probabilistic)"
    if verdict.get("note"):
        text += f" [{verdict['note']}]"
    return text
