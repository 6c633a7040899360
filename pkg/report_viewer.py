#!/usr/bin/env python3
"""
Report Viewer - browse a verification report (JSON lines) check by check
"""

import json
import sys
from pathlib import Path

from rich.text import Text
from textual.app import App, ComposeResult
from textual.containers import Container, Horizontal
from textual.widgets import DataTable, Footer, Static

from verify_executor import RunLogger
from verify_models import STATUS_COLORS, STATUS_ICONS, CheckResult, CheckStatus
from verify_storage import load_report

DEFAULT_THEME = "gruvbox"


def filter_results(results: list[CheckResult], failures_only: bool) -> list[CheckResult]:
    """Results shown in the table; failures mode keeps everything that did not pass."""
    if not failures_only:
        return list(results)
    return [r for r in results if r.status != CheckStatus.PASSED]


def summarize(results: list[CheckResult], summary: dict | None = None) -> dict:
    """Counts for the summary panel, preferring the report's own summary line."""
    if summary:
        return {
            "total": summary.get("total", 0),
            "passed": summary.get("passed", 0),
            "failed": summary.get("failed", 0),
            "other": summary.get("inconclusive", 0) + summary.get("errors", 0),
        }
    passed = sum(1 for r in results if r.status == CheckStatus.PASSED)
    failed = sum(1 for r in results if r.status == CheckStatus.FAILED)
    return {"total": len(results), "passed": passed, "failed": failed,
            "other": len(results) - passed - failed}


def result_row(result: CheckResult) -> tuple:
    """Table cells for one check."""
    color = STATUS_COLORS[result.status]
    return (
        STATUS_ICONS[result.status],
        result.suite,
        Text(result.check, style=color if not result.holds else ""),
        result.duration_str,
    )


class MetricItem(Static):
    """A single metric with label and value."""

    def __init__(self, label: str, value: str = "—", metric_id: str = "") -> None:
        super().__init__()
        self.label = label
        self._value = value
        self._metric_id = metric_id or label.lower().replace(" ", "-")

    def compose(self) -> ComposeResult:
        yield Static(f"[dim]{self.label}[/]", classes="metric-label")
        yield Static(self._value, classes="metric-value", id=f"val-{self._metric_id}")

    def update_value(self, value: str) -> None:
        self._value = value
        try:
            self.query_one(f"#val-{self._metric_id}", Static).update(value)
        except Exception:
            pass


class Panel(Container):
    """A styled panel container with border title."""

    def __init__(self, title: str = "", **kwargs) -> None:
        super().__init__(**kwargs)
        if title:
            self.border_title = title


class ReportViewer(App):
    """Read-only viewer for verification reports."""

    # Shadow DOMNode.visible (a bool property) so the filtered result list
    # can be stored as a plain instance attribute.
    visible = None

    BINDINGS = [
        ("f", "toggle_failures", "Failures"),
        ("r", "refresh", "Reload"),
        ("l", "show_log", "Run Log"),
        ("q", "quit", "Quit"),
        ("escape", "quit", "Quit"),
    ]

    CSS = """
    Screen {
        background: $background;
    }
    * {
        scrollbar-size: 1 1;
    }

    #main-container {
        padding: 1 2;
        height: 1fr;
    }

    Panel {
        border: round $border;
        background: $background;
        padding: 0 1;
        margin-bottom: 1;
        height: auto;

        border-title-align: left;
        border-title-color: $primary;
        border-title-background: $background;
        border-title-style: bold;
    }

    Panel:focus-within {
        border: round $primary;
    }

    .metrics-grid {
        layout: grid;
        grid-size: 4 1;
        grid-columns: 1fr 1fr 1fr 1fr;
        height: auto;
    }

    MetricItem {
        height: 1;
        layout: horizontal;
    }

    .metric-label {
        width: auto;
        min-width: 10;
    }

    .metric-value {
        width: auto;
        color: $text;
        text-style: bold;
    }

    #checks-panel {
        height: 1fr;
    }

    #checks {
        height: 1fr;
    }

    #details-panel {
        height: 12;
    }

    #details {
        height: auto;
    }

    #status-bar {
        dock: bottom;
        height: 1;
        background: $surface-darken-1;
        color: $text-muted;
        padding: 0 2;
        content-align: right middle;
    }
    """

    def __init__(self, report_path: str | Path):
        super().__init__()
        self.theme = DEFAULT_THEME
        self.report_path = Path(report_path)
        self.results: list[CheckResult] = []
        self.summary: dict | None = None
        self.visible: list[CheckResult] = []
        self.failures_only = False
        self.log_text: str | None = None

    def compose(self) -> ComposeResult:
        with Container(id="main-container"):
            with Panel(title="Summary", id="summary-panel"):
                with Horizontal(classes="metrics-grid"):
                    yield MetricItem("Total", "—", "total")
                    yield MetricItem("Passed", "—", "passed")
                    yield MetricItem("Failed", "—", "failed")
                    yield MetricItem("Other", "—", "other")
            with Panel(title="Checks", id="checks-panel"):
                yield DataTable(id="checks", cursor_type="row", zebra_stripes=True)
            with Panel(title="Details", id="details-panel"):
                yield Static("", id="details")
        yield Static("", id="status-bar")
        yield Footer()

    def on_mount(self) -> None:
        self.title = "Verification Report"
        self.sub_title = self.report_path.name
        table = self.query_one("#checks", DataTable)
        table.add_columns("", "Suite", "Check", "Time")
        self.action_refresh()

    def action_refresh(self) -> None:
        """Reload the report file."""
        self.results, self.summary = load_report(self.report_path)
        counts = summarize(self.results, self.summary)
        for m in self.query(MetricItem):
            m.update_value(str(counts[m._metric_id]))
        self._fill_table()

    def action_toggle_failures(self) -> None:
        """Show only checks that did not pass, or everything."""
        self.failures_only = not self.failures_only
        self._fill_table()

    def action_show_log(self) -> None:
        """Show the tail of this run's log in the details pane."""
        run_id = (self.summary or {}).get("run_id")
        details = self.query_one("#details", Static)
        if not run_id:
            self.log_text = None
            details.update("[dim]No run id in this report[/]")
            return
        self.log_text = RunLogger.read_log(run_id, tail_lines=50)
        details.update(Text(self.log_text))

    def _fill_table(self) -> None:
        table = self.query_one("#checks", DataTable)
        table.clear()
        self.visible = filter_results(self.results, self.failures_only)
        for position, result in enumerate(self.visible):
            table.add_row(*result_row(result), key=str(position))
        mode = "failures only" if self.failures_only else "all checks"
        self.query_one("#status-bar", Static).update(f"{len(self.visible)} shown ({mode})")
        self._show_details(self.visible[0] if self.visible else None)

    def _show_details(self, result: CheckResult | None) -> None:
        details = self.query_one("#details", Static)
        if result is None:
            details.update("[dim]No checks[/]")
            return
        body = json.dumps(result.details, indent=2, ensure_ascii=False)
        details.update(Text(f"{result.suite}/{result.check}: {result.status.value}\n{body}"))

    def on_data_table_row_highlighted(self, event: DataTable.RowHighlighted) -> None:
        if event.row_key is None or event.row_key.value is None:
            return
        self._show_details(self.visible[int(event.row_key.value)])


def main():
    if len(sys.argv) < 2:
        print("usage: zeta-report REPORT.jsonl", file=sys.stderr)
        sys.exit(2)
    report = Path(sys.argv[1])
    if not report.exists():
        print(f"report not found: {report}", file=sys.stderr)
        sys.exit(2)
    ReportViewer(report).run()


if __name__ == "__main__":
    main()
