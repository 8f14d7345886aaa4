"""
Tests for report data models.
"""

from fnlie.models import Counterexample, Outcome, Report


def test_report_defaults():
    report = Report("eval", inputs={"expression": "d(a)"})
    assert report.outcome is Outcome.VALUE
    assert report.values == []
    assert report.details == {}
    assert not report.failed


def test_values_keep_insertion_order():
    report = Report("classify")
    report.add_value("underline", "first")
    report.add_value("bar", "second")
    assert [label for label, _ in report.values] == ["underline", "bar"]


def test_failed_report():
    report = Report("verify", outcome=Outcome.FAIL, seed=4, trials=10, passed=3)
    report.counterexample = Counterexample(3, "fn-antisym: got 0", "chart E(x)\n")
    assert report.failed
    assert report.counterexample.path is None
