import pytest

from gslice.core.config import get_settings
from gslice.core.errors import UnknownCheckError
from gslice.schemas.report import CheckResult, VerifyReport
from gslice.services.verify import CHECKS, resolve_checks, run_checks


def _failures(results):
    return [r.to_text() for r in results if not r.passed]


# Test the cheap checks all pass
@pytest.mark.parametrize("name", ["relations", "restrictions", "flatness", "classification", "veronese", "gale"])
def test_quick_checks(name):
    results = run_checks([name], 4)
    assert results
    assert all(r.check == name for r in results)
    assert _failures(results) == []


# Test the characteristic-2 checks at low degree
def test_char2_check():
    assert _failures(run_checks(["char2"], 2)) == []


# Test the per-component boxes and the integral presentation
def test_component_checks():
    assert _failures(run_checks(["components", "theorem-i"], 4)) == []


# Test the sliced dimensions through degree 8
def test_theorem_dimensions():
    results = run_checks(["theorem-ii", "theorem-iii"], 8)
    assert len(results) == 4
    assert _failures(results) == []


# Test unsliced and sliced dimensions through the configured cap
def test_restriction_dims(monkeypatch):
    results = run_checks(["restriction-dims"], 4)
    assert len(results) == 1
    assert _failures(results) == []
    assert "d <= 4" in results[0].name

    monkeypatch.setenv("GSL_UNSLICED_CAP", "2")
    get_settings.cache_clear()
    capped = run_checks(["restriction-dims"], 8)
    assert _failures(capped) == []
    assert "d <= 2" in capped[0].name


# Test resolving check names
def test_resolve_checks():
    assert resolve_checks(["flatness", "relations", "flatness"]) == ["flatness", "relations"]
    assert resolve_checks(["all"]) == list(CHECKS)
    assert resolve_checks(["gale", "all"])[0] == "gale"
    with pytest.raises(UnknownCheckError):
        resolve_checks(["everything"])


# Test failed checks carry their witness
def test_report_rendering():
    report = VerifyReport(checks=["relations"], results=[
        CheckResult(check="relations", name="first", passed=True),
        CheckResult(check="relations", name="second", passed=False, witness="x + y"),
    ])
    assert not report.passed
    assert report.to_text().splitlines() == [
        "PASS [relations] first",
        "FAIL [relations] second: x + y",
        "verdict: FAIL (1/2)",
    ]
