"""Tests for the zeta-hopf command line."""

import json

import pytest

from zeta_cli import build_parser, main


def _json_out(capsys) -> list[dict]:
    return [json.loads(line) for line in capsys.readouterr().out.splitlines() if line.strip()]


class TestExpand:
    def test_harmonic(self, capsys):
        assert main(["expand", "harmonic", "--indices", "2;3"]) == 0
        assert capsys.readouterr().out.strip() == "[2,3]+[3,2]+[5]"

    def test_harmonic_bad_shape(self, capsys):
        assert main(["expand", "harmonic", "--indices", "2"]) == 2
        assert "k;l" in capsys.readouterr().err

    def test_regularize(self, capsys):
        assert main(["expand", "regularize", "--index", "2,1"]) == 0
        assert capsys.readouterr().out.strip() == "ζ(2)T−ζ(1,2)−ζ(3)"

    def test_antihook_json(self, capsys):
        assert main(["expand", "antihook", "--k", "2", "--l", "3", "--a", "2", "--format", "json"]) == 0
        payload, = _json_out(capsys)
        assert (payload["k"], payload["l"], payload["a"]) == ([2], [3], 2)
        assert sorted(term["index"] for term in payload["expansion"]) == [[2, 3, 2], [2, 5], [3, 2, 2], [5, 2]]

    def test_antihook_needs_corner(self, capsys):
        assert main(["expand", "antihook", "--k", "1"]) == 2
        assert "--a" in capsys.readouterr().err

    def test_star(self, capsys):
        main(["expand", "star", "--index", "1,2"])
        assert capsys.readouterr().out.strip() == "[1,2]+[3]"

    def test_gamma_series(self, capsys):
        main(["expand", "gamma1", "--order", "2", "--format", "json"])
        payload, = _json_out(capsys)
        assert payload["order"] == 2
        assert [row["W"] for row in payload["coefficients"]] == [0, 1, 2]

    def test_gamma_text(self, capsys):
        main(["expand", "gamma1", "--order", "2"])
        assert capsys.readouterr().out.splitlines() == ["W^0: [∅]", "W^1: [1]", "W^2: [1,1]+[2]"]

    def test_bad_index(self, capsys):
        assert main(["expand", "star", "--index", "1,0"]) == 2

    def test_negative_order(self):
        assert main(["expand", "F", "--order", "-1"]) == 2

    def test_unknown_target_rejected_by_parser(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["expand", "nope"])


class TestEval:
    def test_index(self, capsys):
        assert main(["eval", "--index", "2"]) == 0
        assert capsys.readouterr().out.startswith("ζ(2) = 1.6449340668")

    def test_json(self, capsys):
        main(["eval", "--index", "1,2", "--format", "json"])
        payload, = _json_out(capsys)
        assert payload["expression"] == "ζ(1,2)"
        assert payload["t_degree"] == 0
        assert payload["value"][0].startswith("1.2020569031")

    def test_T_polynomial(self, capsys):
        main(["eval", "--index", "1", "--format", "json"])
        assert _json_out(capsys)[0]["t_degree"] == 1

    def test_antihook(self, capsys):
        main(["eval", "--l", "1", "--a", "2", "--format", "json"])
        payload, = _json_out(capsys)
        assert payload["expression"] == "[∅;1;2]"
        assert payload["value"][0].startswith("2.404113806")

    def test_xy(self, capsys):
        main(["eval", "--index", "2", "--xy", "1,1", "--format", "json"])
        assert _json_out(capsys)[0]["value"][0].startswith("3.289868133")

    def test_needs_input(self, capsys):
        assert main(["eval"]) == 2

    def test_bad_tolerance(self):
        assert main(["eval", "--index", "2", "--tol", "0"]) == 2


class TestVerify:
    def test_hopf(self, capsys):
        assert main(["verify", "--suite", "hopf", "--max-weight", "2"]) == 0
        lines = _json_out(capsys)
        assert len(lines) == 14
        assert lines[-1]["summary"]["failed"] == 0

    def test_text_format(self, capsys):
        assert main(["verify", "--suite", "hopf", "--max-weight", "2", "--format", "text"]) == 0
        assert "13/13 checks passed" in capsys.readouterr().out

    def test_output_file(self, tmp_path, capsys):
        report = tmp_path / "report.jsonl"
        main(["verify", "--suite", "hopf", "--max-weight", "2", "--output", str(report)])
        assert report.read_text() == capsys.readouterr().out

    def test_unknown_suite(self, capsys):
        assert main(["verify", "--suite", "bogus"]) == 2
        assert "unknown suite" in capsys.readouterr().err

    def test_bad_weight(self):
        assert main(["verify", "--suite", "hopf", "--max-weight", "0"]) == 2

    def test_config_file(self, tmp_path, capsys):
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"max_weight": 2, "suites": ["hopf"]}))
        assert main(["verify", "--config", str(config)]) == 0
        assert len(_json_out(capsys)) == 14

    def test_samples_file(self, tmp_path):
        samples = tmp_path / "samples.txt"
        samples.write_text("1,0,0\n")
        assert main(["verify", "--suite", "hopf", "--samples", str(samples)]) == 2

    def test_malformed_config_file(self, tmp_path, capsys):
        config = tmp_path / "bad.json"
        config.write_text("{max_weight: 2,")
        assert main(["verify", "--config", str(config)]) == 2
        assert "cannot parse config file" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        assert main(["verify", "--config", str(tmp_path / "absent.json")]) == 2
        assert "config file not found" in capsys.readouterr().err


class TestEvalPrecision:
    def test_tight_tolerance_reaches_twenty_digits(self, capsys):
        assert main(["eval", "--index", "2", "--tol", "1e-20", "--format", "json"]) == 0
        payload, = _json_out(capsys)
        assert float(payload["error_bound"]) <= 1e-20
        assert payload["value"][0].startswith("1.6449340668")

    def test_tolerance_beyond_working_precision(self, capsys):
        assert main(["eval", "--index", "3", "--tol", "1e-40"]) == 1
