import json
from fractions import Fraction

import pytest
import sympy

from cubic_ode_invariants.analysis.compare import IdentityReport
from cubic_ode_invariants.analysis.compare import Verdict
from cubic_ode_invariants.core.enums import IdentityStatus
from cubic_ode_invariants.core.enums import Provenance
from cubic_ode_invariants.core.enums import VerdictKind
from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.fext import FExt
from cubic_ode_invariants.results.report import REPORT_KEYS
from cubic_ode_invariants.results.report import ReportFormatError
from cubic_ode_invariants.results.report import RunReport
from cubic_ode_invariants.results.report import ScalarValue


@pytest.fixture
def report() -> RunReport:
    f = FExt.generator(64 * X**5 - 24)
    return RunReport.build(
        verdict=Verdict(VerdictKind.generalPosition, (Fraction(0), Fraction(0)), Fraction(-24)),
        scalars_sd={"F5": 64 * X**5 - 24, "I2": sympy.Rational(1, 3), "F": f},
        scalars_bgd={"J0": 24 - 64 * X**5},
        identities=[
            IdentityReport("J0 = -F^5", sympy.Integer(0), IdentityStatus.exactZero),
            IdentityReport("wrong", X, IdentityStatus.failed),
        ],
        point=(0, 0),
    )


def test_scalar_values_carry_provenance(report):
    assert report.scalars_sd["F5"] == ScalarValue("-24", Provenance.exact)
    assert report.scalars_sd["I2"] == ScalarValue("1/3", Provenance.exact)
    assert report.scalars_sd["F"].provenance is Provenance.numeric
    assert float(report.scalars_sd["F"].value) == pytest.approx(-(24**0.2))


def test_symbolic_without_point():
    value = ScalarValue.of(64 * X**5 - 24)
    assert value == ScalarValue("64*x^5 - 24", Provenance.symbolic)


def test_pole_keeps_symbolic_value_with_note():
    value = ScalarValue.of(1 / X, (0, 0))
    assert value.provenance is Provenance.symbolic
    assert value.value == "1/x"
    assert "pole" in value.note


def test_passed_and_failures(report):
    assert not report.passed
    assert [record.name for record in report.failures] == ["wrong"]


def test_json_has_fixed_keys(report):
    data = json.loads(report.to_json())
    assert tuple(sorted(data)) == tuple(sorted(REPORT_KEYS))
    assert data["timing_ms"] is None
    assert data["verdict"]["kind"] == "GeneralPositionAt"
    assert data["identities"][1] == {"name": "wrong", "status": "FAILED", "residual": "x"}


def test_json_is_deterministic(report):
    assert report.to_json() == RunReport.from_json(report.to_json()).to_json()


def test_from_json_round_trip(report):
    assert RunReport.from_json(report.to_json()) == report


@pytest.mark.parametrize("text", ["not json", "{}", '{"verdict": null}', json.dumps(dict.fromkeys(REPORT_KEYS, 3))])
def test_from_json_rejects_other_documents(text):
    with pytest.raises(ReportFormatError):
        RunReport.from_json(text)


def test_with_timing(report):
    assert report.with_timing(12.5).to_dict()["timing_ms"] == 12.5


def test_tables(report):
    scalars = report.scalar_table()
    assert list(scalars.columns) == ["scheme", "scalar", "value", "provenance"]
    assert len(scalars) == 4
    summary = report.summary()
    assert summary["exact-zero"] == 1
    assert summary["FAILED"] == 1
    assert summary["numeric-zero"] == 0


def test_text_rendering(report):
    text = report.to_text()
    assert text.startswith("verdict: GeneralPositionAt(0, 0) with F^5 = -24")
    assert "2 identities (exact-zero: 1, numeric-zero: 0, FAILED: 1)" in text
