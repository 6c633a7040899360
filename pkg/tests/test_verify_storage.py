"""Tests for config, samples, MZV cache, reports and run history."""

import io
import json
from fractions import Fraction

import pytest

import verify_storage
from index_core import ConfigError
from verify_models import CheckResult, CheckStatus, RunConfig, RunSummary, SuiteName
from verify_storage import (
    ReportSink,
    add_run_history,
    get_run_history,
    load_config,
    load_mzv_cache,
    load_report,
    load_samples,
    parse_samples,
    save_config,
    save_mzv_cache,
)
from zeta_numeric import MZVEngine


class TestConfig:
    def test_missing_file_gives_defaults(self):
        assert load_config() == RunConfig()

    def test_save_and_load(self, tmp_path):
        path = tmp_path / "run.json"
        config = RunConfig(max_weight=4, suites=[SuiteName.SCHUR], jobs=3)
        save_config(config, path)
        assert load_config(path) == config

    def test_partial_file_merges_defaults(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"max_weight": 5}))
        config = load_config(path)
        assert config.max_weight == 5
        assert config.numeric_order == RunConfig().numeric_order

    def test_corrupt_file_is_a_config_error(self):
        verify_storage.CONFIG_FILE.write_text("{not json")
        with pytest.raises(ConfigError, match="cannot parse config file"):
            load_config()

    def test_non_object_is_a_config_error(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError, match="JSON object"):
            load_config(path)

    def test_explicit_missing_path(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_config(tmp_path / "absent.json")


class TestSamples:
    def test_parse(self):
        xy, ab = parse_samples("# points\n1, 0\n1/2,-1/3, 1, 2\n\n1,0,0,0  # again\n")
        assert xy == [(1, 0), (Fraction(1, 2), Fraction(-1, 3))]
        assert ab == [(1, 2), (0, 0)]

    def test_bad_arity(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_samples("1,2,3")

    def test_not_rational(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_samples("1,0\nx,y")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_samples(tmp_path / "absent.txt")

    def test_load_file(self, tmp_path):
        path = tmp_path / "samples.txt"
        path.write_text("2,3\n")
        assert load_samples(path) == ([(2, 3)], [])


class TestMZVCache:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "mzv.jsonl"
        engine = MZVEngine()
        engine.evaluate((2,), 1e-10)
        engine.evaluate((1, 2), 1e-10)
        save_mzv_cache(engine, path)
        assert len(path.read_text().splitlines()) == 2

        fresh = MZVEngine()
        assert load_mzv_cache(fresh, path) == 2
        fresh.evaluate((1, 2), 1e-8)
        assert fresh.misses == 0

    def test_missing_file(self, tmp_path):
        assert load_mzv_cache(MZVEngine(), tmp_path / "absent.jsonl") == 0

    def test_skips_garbage_lines(self, tmp_path):
        path = tmp_path / "mzv.jsonl"
        path.write_text('garbage\n{"index": "0"}\n\n')
        engine = MZVEngine()
        assert load_mzv_cache(engine, path) == 1
        assert not engine.cache


class TestReports:
    def test_sink_writes_stream_and_file(self, tmp_path):
        stream = io.StringIO()
        path = tmp_path / "report.jsonl"
        with ReportSink(stream, path) as sink:
            sink.write(CheckResult("hopf", "counit").to_dict())
            sink.write(RunSummary("r1", total=1, passed=1).to_dict())
        assert stream.getvalue() == path.read_text()
        assert len(stream.getvalue().splitlines()) == 2

    def test_load_report(self, tmp_path):
        path = tmp_path / "report.jsonl"
        with ReportSink(output_path=path) as sink:
            sink.write(CheckResult("schur", "antipode", CheckStatus.FAILED).to_dict())
            sink.write(RunSummary("r1", total=1, failed=1).to_dict())
        with open(path, "a", encoding="utf-8") as f:
            f.write("not json\n")
        results, summary = load_report(path)
        assert [(r.suite, r.status) for r in results] == [("schur", CheckStatus.FAILED)]
        assert summary["failed"] == 1

    def test_load_missing_report(self, tmp_path):
        assert load_report(tmp_path / "absent.jsonl") == ([], None)


class TestHistory:
    def test_newest_first(self):
        add_run_history(RunSummary("first", total=1, passed=1), ["hopf"])
        add_run_history(RunSummary("second", total=2, passed=1), ["schur"])
        history = get_run_history()
        assert [h["run_id"] for h in history] == ["second", "first"]
        assert history[0]["exit_code"] == 1

    def test_capped(self):
        for n in range(55):
            add_run_history(RunSummary(f"run{n}"), ["hopf"])
        history = json.loads(verify_storage.HISTORY_FILE.read_text())
        assert len(history) == 50
        assert history[0]["run_id"] == "run5"
        assert len(get_run_history(limit=3)) == 3

    def test_corrupt_history(self):
        verify_storage.HISTORY_FILE.write_text("[")
        assert get_run_history() == []

    def test_unwritable_history_is_reported(self, caplog):
        verify_storage.HISTORY_FILE.mkdir()
        with caplog.at_level("WARNING", logger="verify_storage"):
            assert not add_run_history(RunSummary("blocked"), ["hopf"])
        assert "cannot write run history" in caplog.text
