"""Tests for suite expansion and task runners."""

import pickle

import pytest

from formal_series import EXACT_IDENTITIES
from verify_models import CheckStatus, RunConfig, SuiteName
from verify_suites import (
    HOPF_CHECKS,
    HOPF_WIDE_CHECKS,
    RUNNERS,
    SCHUR_CHECKS,
    SuiteTask,
    TaskOptions,
    build_tasks,
    run_task,
)

OPTIONS = TaskOptions()


def _config(*suites, **changes):
    return RunConfig(suites=list(suites), **changes)


class TestBuildTasks:
    def test_hopf(self):
        tasks = build_tasks(_config(SuiteName.HOPF, max_weight=4))
        assert [t.check for t in tasks] == [check for check, _ in HOPF_CHECKS + HOPF_WIDE_CHECKS]
        assert [t.args for t in tasks] == [(4,)] * len(HOPF_CHECKS) + [(6,)] * len(HOPF_WIDE_CHECKS)

    def test_schur(self):
        tasks = build_tasks(_config(SuiteName.SCHUR, max_weight=6))
        assert len(tasks) == len(SCHUR_CHECKS)
        assert all(t.args == (8,) for t in tasks)

    def test_genfunc_exact_orders(self):
        tasks = build_tasks(_config(SuiteName.GENFUNC_EXACT, exact_order_single=5, exact_order_multi=4))
        assert len(tasks) == len(EXACT_IDENTITIES)
        assert {t.args[1] for t in tasks} <= {4, 5}

    def test_key_lemma_weights(self):
        tasks = build_tasks(_config(SuiteName.KEY_LEMMA, max_weight=3))
        assert len(tasks) == 4 + 4 + 3 + 3
        assert tasks[0].check == "alternating2@w2"
        assert tasks[-1].check == "key_star@w4"

    def test_sum_formulas(self):
        tasks = build_tasks(_config(SuiteName.SUM_FORMULAS, max_weight=2))
        runners = [t.runner for t in tasks]
        assert runners.count("sum_formula") == 12
        assert runners.count("schur_sum_formula") == 4
        assert runners[-1] == "oracle"

    def test_numeric_suites(self):
        tasks = build_tasks(_config(SuiteName.GENFUNC_NUMERIC, SuiteName.MAIN_THEOREM, numeric_order=5))
        assert len(tasks) == 12
        assert tasks[0].check == "gen_func_zeta@N5"
        assert [t.runner for t in tasks].count("gamma_reflection_odd") == 1

    def test_order_is_deterministic(self):
        config = RunConfig(max_weight=3)
        assert build_tasks(config) == build_tasks(config)
        assert all(t.runner in RUNNERS for t in build_tasks(config))

    def test_tasks_pickle(self):
        for task in build_tasks(RunConfig(max_weight=3)):
            assert pickle.loads(pickle.dumps(task)) == task
        options = TaskOptions.from_config(RunConfig())
        assert pickle.loads(pickle.dumps(options)) == options
        assert len(options.sample_dicts()) == 12


class TestRunners:
    @pytest.mark.parametrize("check,runner", HOPF_CHECKS)
    def test_hopf(self, check, runner):
        status, details = run_task(SuiteTask("hopf", check, runner, (3,)), OPTIONS)
        assert status == CheckStatus.PASSED, details
        assert details["cases"] > 0
        assert details["first_failure"] is None

    @pytest.mark.parametrize("check,runner", HOPF_WIDE_CHECKS)
    def test_hopf_single_index(self, check, runner):
        status, details = run_task(SuiteTask("hopf", check, runner, (5,)), OPTIONS)
        assert status == CheckStatus.PASSED, details
        assert details["cases"] > 0

    @pytest.mark.parametrize("check,runner", SCHUR_CHECKS)
    def test_schur(self, check, runner):
        status, details = run_task(SuiteTask("schur", check, runner, (4,)), OPTIONS)
        assert status == CheckStatus.PASSED, details
        assert details["max_weight"] == 4

    @pytest.mark.slow
    @pytest.mark.parametrize("check,runner", SCHUR_CHECKS)
    def test_schur_at_weight_eight(self, check, runner):
        status, details = run_task(SuiteTask("schur", check, runner, (8,)), OPTIONS)
        assert status == CheckStatus.PASSED, details
        assert details["max_weight"] == 8

    def test_gamma_reflection_odd(self):
        status, details = run_task(SuiteTask("genfunc-numeric", "gamma_reflection_odd@N8", "gamma_reflection_odd",
                                             (8,)), OPTIONS)
        assert status == CheckStatus.PASSED, details
        assert details["odd_powers"] == [1, 3, 5, 7]

    def test_lemma(self):
        status, details = run_task(SuiteTask("key-lemma", "key@w4", "lemma", ("key", 4)), OPTIONS)
        assert status == CheckStatus.PASSED, details

    def test_exact_identity(self):
        status, details = run_task(SuiteTask("genfunc-exact", "gen_func_k@N4", "exact_identity",
                                             ("gen_func_k", 4)), OPTIONS)
        assert status == CheckStatus.PASSED
        assert "elapsed_ms" not in details

    def test_sum_formula(self):
        status, details = run_task(SuiteTask("sum-formulas", "sum_formula(w=4,r=1)", "sum_formula",
                                             (4, 1, False)), OPTIONS)
        assert status == CheckStatus.PASSED, details

    def test_remark_witness(self):
        status, details = run_task(SuiteTask("remark-counterexample", "witness", "remark_witness", (6,)), OPTIONS)
        assert status == CheckStatus.PASSED
        assert details["witness"] == {"w": 3, "r": 0, "s": 1, "lhs": "[1,2]+[3]", "rhs": "2[3]"}

    def test_remark_witness_inconclusive(self):
        status, details = run_task(SuiteTask("remark-counterexample", "witness", "remark_witness", (2,)), OPTIONS)
        assert status == CheckStatus.INCONCLUSIVE
        assert details["witness"] is None

    def test_remark_agrees_after_Z(self):
        status, details = run_task(SuiteTask("remark-counterexample", "z_agreement", "remark_z_agreement",
                                             (4,)), OPTIONS)
        assert status == CheckStatus.PASSED, details

    def test_unknown_runner(self):
        with pytest.raises(KeyError):
            run_task(SuiteTask("x", "y", "nope"), OPTIONS)
