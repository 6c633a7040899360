"""Tests for the report viewer helpers and app."""

import asyncio

import pytest
from textual.widgets import DataTable

from report_viewer import ReportViewer, filter_results, result_row, summarize
from verify_executor import RunLogger
from verify_models import CheckResult, CheckStatus, RunSummary
from verify_storage import ReportSink

RESULTS = [
    CheckResult("hopf", "counit"),
    CheckResult("schur", "antipode", CheckStatus.FAILED, {"first_failure": {"k": "1"}}),
    CheckResult("remark-counterexample", "witness", CheckStatus.INCONCLUSIVE),
]


@pytest.fixture
def report(tmp_path):
    path = tmp_path / "report.jsonl"
    summary = RunSummary("r1")
    with ReportSink(output_path=path) as sink:
        for result in RESULTS:
            summary.add(result)
            sink.write(result.to_dict())
        sink.write(summary.to_dict())
    return path


def test_filter():
    assert filter_results(RESULTS, False) == RESULTS
    assert [r.check for r in filter_results(RESULTS, True)] == ["antipode", "witness"]


def test_summarize_from_results():
    assert summarize(RESULTS) == {"total": 3, "passed": 1, "failed": 1, "other": 1}


def test_summarize_prefers_summary_line():
    counts = summarize([], {"total": 5, "passed": 2, "failed": 1, "inconclusive": 1, "errors": 1})
    assert counts == {"total": 5, "passed": 2, "failed": 1, "other": 2}


def test_result_row():
    icon, suite, check, duration = result_row(RESULTS[1])
    assert suite == "schur"
    assert check.plain == "antipode"
    assert str(check.style) == "red"
    assert duration == "0ms"


def test_app_shows_and_filters(report):
    async def scenario():
        app = ReportViewer(report)
        async with app.run_test() as pilot:
            table = app.query_one("#checks", DataTable)
            assert table.row_count == 3
            await pilot.press("f")
            assert app.failures_only
            assert table.row_count == 2
            assert [r.check for r in app.visible] == ["antipode", "witness"]
            await pilot.press("f")
            assert table.row_count == 3

    asyncio.run(scenario())


def test_app_with_missing_report(tmp_path):
    async def scenario():
        app = ReportViewer(tmp_path / "absent.jsonl")
        async with app.run_test():
            assert app.query_one("#checks", DataTable).row_count == 0
            assert app.results == [] and app.summary is None

    asyncio.run(scenario())


def test_app_shows_run_log(report):
    log = RunLogger("r1")
    log.check_event("schur/antipode", "failed", "1 case")
    log.close()

    async def scenario():
        app = ReportViewer(report)
        async with app.run_test() as pilot:
            await pilot.press("l")
            assert "[schur/antipode] failed - 1 case" in app.log_text

    asyncio.run(scenario())


def test_run_log_without_run_id(tmp_path):
    async def scenario():
        app = ReportViewer(tmp_path / "absent.jsonl")
        async with app.run_test() as pilot:
            await pilot.press("l")
            assert app.log_text is None

    asyncio.run(scenario())
