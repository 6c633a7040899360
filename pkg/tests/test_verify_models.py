"""Tests for run configuration and report models."""

from fractions import Fraction

import pytest

from index_core import ConfigError
from verify_models import (
    STATUS_COLORS,
    STATUS_ICONS,
    CheckResult,
    CheckStatus,
    RunConfig,
    RunSummary,
    SuiteName,
)


class TestSuiteName:
    def test_all(self):
        assert SuiteName.parse(["all"]) == list(SuiteName)
        assert SuiteName.parse([]) == list(SuiteName)

    def test_named_without_duplicates(self):
        assert SuiteName.parse(["schur", "hopf", "schur"]) == [SuiteName.SCHUR, SuiteName.HOPF]

    def test_unknown(self):
        with pytest.raises(ConfigError, match="unknown suite"):
            SuiteName.parse(["hopf", "bogus"])


class TestRunConfig:
    def test_defaults_validate(self):
        config = RunConfig().validate()
        assert config.max_weight == 6
        assert config.format == "json"
        assert config.suites == list(SuiteName)

    @pytest.mark.parametrize("changes", [
        {"max_weight": 1},
        {"tolerance": 0},
        {"mzv_tolerance": -1e-10},
        {"jobs": 0},
        {"format": "xml"},
        {"working_dps": 10},
        {"numeric_order": 1},
    ])
    def test_rejects(self, changes):
        with pytest.raises(ConfigError):
            RunConfig(**changes).validate()

    def test_default_samples(self):
        samples = RunConfig().samples()
        assert len(samples) == 12
        assert samples[-1] == {"x": Fraction(1, 2), "y": Fraction(-1, 3), "A": -1, "B": Fraction(1, 2)}

    def test_custom_samples(self):
        config = RunConfig(sample_points=[(Fraction(3), Fraction(1))], ab_points=[(Fraction(0), Fraction(0))])
        assert config.samples() == [{"x": 3, "y": 1, "A": 0, "B": 0}]

    def test_dict_round_trip(self):
        config = RunConfig(max_weight=4, sample_points=[(Fraction(1, 2), Fraction(-1))],
                           suites=[SuiteName.HOPF], jobs=2, format="text")
        data = config.to_dict()
        assert data["sample_points"] == [["1/2", "-1"]]
        assert data["suites"] == ["hopf"]
        assert RunConfig.from_dict(data) == config

    def test_from_dict_fills_defaults(self):
        config = RunConfig.from_dict({"max_weight": 3})
        assert config.max_weight == 3
        assert config.tolerance == RunConfig().tolerance

    def test_from_dict_bad_values(self):
        with pytest.raises(ConfigError):
            RunConfig.from_dict({"jobs": "many"})
        with pytest.raises(ConfigError):
            RunConfig.from_dict({"sample_points": [["1/0", "1"]]})
        with pytest.raises(ConfigError):
            RunConfig.from_dict({"suites": ["nope"]})


class TestCheckResult:
    def test_report_line(self):
        result = CheckResult("hopf", "antipode_law", details={"max_weight": 3}, elapsed_ms=1.23456)
        assert result.to_dict() == {
            "suite": "hopf",
            "check": "antipode_law",
            "holds": True,
            "status": "passed",
            "details": {"max_weight": 3},
            "elapsed_ms": 1.235,
        }

    def test_from_dict(self):
        result = CheckResult.from_dict({"suite": "schur", "check": "x", "status": "inconclusive"})
        assert result.status == CheckStatus.INCONCLUSIVE
        assert not result.holds
        assert CheckResult.from_dict({"holds": False}).status == CheckStatus.FAILED
        assert CheckResult.from_dict({"holds": True}).status == CheckStatus.PASSED

    @pytest.mark.parametrize("ms,text", [(12.4, "12ms"), (2500, "2.5s"), (125_000, "2m 5s")])
    def test_duration(self, ms, text):
        assert CheckResult("s", "c", elapsed_ms=ms).duration_str == text

    def test_every_status_is_displayable(self):
        assert set(STATUS_ICONS) == set(CheckStatus) == set(STATUS_COLORS)


class TestRunSummary:
    def test_counts_and_exit_code(self):
        summary = RunSummary("abc")
        for status in (CheckStatus.PASSED, CheckStatus.PASSED, CheckStatus.INCONCLUSIVE):
            summary.add(CheckResult("s", "c", status))
        assert (summary.total, summary.passed, summary.inconclusive) == (3, 2, 1)
        assert summary.exit_code == 1

    def test_all_passed(self):
        summary = RunSummary("abc")
        summary.add(CheckResult("s", "c"))
        assert summary.exit_code == 0
        assert summary.to_dict()["summary"]["passed"] == 1

    def test_errors_counted(self):
        summary = RunSummary("abc")
        summary.add(CheckResult("s", "c", CheckStatus.ERROR))
        summary.add(CheckResult("s", "c", CheckStatus.FAILED))
        assert (summary.errors, summary.failed) == (1, 1)
