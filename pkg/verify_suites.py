"""Verification suites: each suite expands into independent, picklable check tasks."""

import logging
from dataclasses import dataclass
from typing import Callable, Iterator

from formal_series import (
    EXACT_IDENTITIES,
    MULTI_PARAMETER,
    exact_identity_check,
    find_remark_counterexample,
    remark_coefficients,
)
from index_algebra import (
    antipode_law_residual,
    antipode_S,
    antipode_tilde,
    coassociativity_sides,
    comultiply,
    counit_sides,
    harmonic_product,
    lift,
    poly_lift_xy,
    poly_lift_xy_star,
    symbol,
    telescoping_sum,
    tensor_product,
    unit,
)
from index_core import enumerate_indices, enumerate_indices_up_to, enumerate_triples, is_admissible
from numeric_identities import check_gamma_reflection_odd, check_numeric_identity
from schur_antihook import (
    AntiHook,
    antihook_antipode_holds,
    compatibility_chain,
    compatibility_check,
    expand_antihook,
    expand_antihook_closed,
    lemma_sides,
    property_one_check,
)
from verify_models import CheckStatus, RunConfig, SuiteName
from zeta_numeric import (
    check_schur_sum_formula,
    check_sum_formula,
    configure,
    eval_Z,
    format_number,
    oracle_agreement,
)

logger = logging.getLogger(__name__)

Outcome = tuple[CheckStatus, dict]


@dataclass(frozen=True)
class SuiteTask:
    """A single check: suite and check name, a runner name and its arguments."""
    suite: str
    check: str
    runner: str
    args: tuple = ()


@dataclass(frozen=True)
class TaskOptions:
    """Run-wide numeric settings shipped to workers with every task."""
    tolerance: float = 1e-8
    mzv_tolerance: float = 1e-10
    samples: tuple = ()
    working_dps: int = 30
    mzv_iteration_budget: int = 20_000

    @classmethod
    def from_config(cls, config: RunConfig) -> "TaskOptions":
        return cls(
            tolerance=config.tolerance,
            mzv_tolerance=config.mzv_tolerance,
            samples=tuple(tuple(sorted(s.items())) for s in config.samples()),
            working_dps=config.working_dps,
            mzv_iteration_budget=config.mzv_iteration_budget,
        )

    def sample_dicts(self) -> list[dict]:
        return [dict(s) for s in self.samples]


def _outcome(failures: list, cases: int, **extra) -> Outcome:
    details = {"cases": cases, **extra, "first_failure": failures[0] if failures else None}
    return (CheckStatus.FAILED if failures else CheckStatus.PASSED), details


def _pairs(max_weight: int) -> Iterator[tuple]:
    for w in range(max_weight + 1):
        for k in enumerate_indices(w):
            for l in enumerate_indices_up_to(max_weight - w):
                yield k, l


# ---- hopf ----

def _hopf_commutativity(max_weight, options) -> Outcome:
    failures, cases = [], 0
    for k, l in _pairs(max_weight):
        cases += 1
        if harmonic_product(symbol(k), symbol(l)) != harmonic_product(symbol(l), symbol(k)):
            failures.append({"k": str(k), "l": str(l)})
    return _outcome(failures, cases)


def _hopf_associativity(max_weight, options) -> Outcome:
    failures, cases = [], 0
    for k, l in _pairs(max_weight):
        for m in enumerate_indices_up_to(max_weight - k.weight - l.weight):
            cases += 1
            left = harmonic_product(harmonic_product(symbol(k), symbol(l)), symbol(m))
            right = harmonic_product(symbol(k), harmonic_product(symbol(l), symbol(m)))
            if left != right:
                failures.append({"k": str(k), "l": str(l), "m": str(m)})
    return _outcome(failures, cases)


def _hopf_coassociativity(max_weight, options) -> Outcome:
    failures = []
    indices = enumerate_indices_up_to(max_weight)
    for k in indices:
        left, right = coassociativity_sides(symbol(k))
        if left != right:
            failures.append({"k": str(k)})
    return _outcome(failures, len(indices))


def _hopf_counit(max_weight, options) -> Outcome:
    failures = []
    indices = enumerate_indices_up_to(max_weight)
    for k in indices:
        left, right = counit_sides(symbol(k))
        if left != symbol(k) or right != symbol(k):
            failures.append({"k": str(k)})
    return _outcome(failures, len(indices))


def _hopf_multiplicativity(max_weight, options) -> Outcome:
    failures, cases = [], 0
    for k, l in _pairs(max_weight):
        cases += 1
        product = comultiply(harmonic_product(symbol(k), symbol(l)))
        if product != tensor_product(comultiply(symbol(k)), comultiply(symbol(l))):
            failures.append({"k": str(k), "l": str(l)})
    return _outcome(failures, cases)


def _hopf_antipode(max_weight, options, side) -> Outcome:
    failures = []
    indices = enumerate_indices_up_to(max_weight)
    for k in indices:
        residual = antipode_law_residual(symbol(k), side)
        if not residual.is_zero():
            failures.append({"k": str(k), "residual": str(residual)})
    return _outcome(failures, len(indices))


def _hopf_antipode_left(max_weight, options) -> Outcome:
    return _hopf_antipode(max_weight, options, "left")


def _hopf_antipode_right(max_weight, options) -> Outcome:
    return _hopf_antipode(max_weight, options, "right")


def _hopf_tilde_involution(max_weight, options) -> Outcome:
    failures = []
    indices = enumerate_indices_up_to(max_weight)
    for k in indices:
        if antipode_tilde(antipode_tilde(symbol(k))) != symbol(k):
            failures.append({"k": str(k)})
    return _outcome(failures, len(indices))


def _hopf_homomorphisms(max_weight, options) -> Outcome:
    failures, cases = [], 0
    for k, l in _pairs(max_weight):
        cases += 1
        product = harmonic_product(symbol(k), symbol(l))
        for name, f in (("S", antipode_S), ("S_tilde", antipode_tilde)):
            if f(product) != harmonic_product(f(symbol(k)), f(symbol(l))):
                failures.append({"map": name, "k": str(k), "l": str(l)})
    return _outcome(failures, cases)


def _hopf_telescoping(max_weight, options) -> Outcome:
    failures = []
    indices = enumerate_indices_up_to(max_weight)
    for k in indices:
        value = telescoping_sum(k)
        ok = value.is_zero() if k else value == unit()
        if not ok:
            failures.append({"k": str(k)})
    return _outcome(failures, len(indices))


def _hopf_S_involution(max_weight, options) -> Outcome:
    failures = []
    indices = enumerate_indices_up_to(max_weight)
    for k in indices:
        if antipode_S(antipode_S(symbol(k))) != symbol(k):
            failures.append({"k": str(k)})
    return _outcome(failures, len(indices))


def _hopf_lift_multiplicativity(max_weight, options) -> Outcome:
    failures, cases = [], 0
    for k, l in _pairs(max_weight):
        cases += 1
        if lift(harmonic_product(symbol(k), symbol(l))) != harmonic_product(poly_lift_xy(k), poly_lift_xy(l)):
            failures.append({"k": str(k), "l": str(l)})
    return _outcome(failures, cases)


def _hopf_tilde_on_lift(max_weight, options) -> Outcome:
    failures = []
    indices = enumerate_indices_up_to(max_weight)
    for k in indices:
        if antipode_tilde(poly_lift_xy(k)) != poly_lift_xy_star(k).scale((-1) ** len(k)):
            failures.append({"k": str(k)})
    return _outcome(failures, len(indices))


# ---- exact generating functions ----

def _exact_identity(name, order, options) -> Outcome:
    report = exact_identity_check(name, order)
    details = report.to_dict()
    details.pop("elapsed_ms")
    return (CheckStatus.PASSED if report.holds else CheckStatus.FAILED), details


# ---- schur ----

def _schur_closed_form(max_weight, options) -> Outcome:
    failures, cases = [], 0
    for w in range(2, max_weight + 1):
        for k, l, a in enumerate_triples(w):
            cases += 1
            h = AntiHook(k, l, a)
            if expand_antihook(h) != expand_antihook_closed(h):
                failures.append({"antihook": str(h)})
    return _outcome(failures, cases, max_weight=max_weight)


def _schur_property_one(max_weight, options) -> Outcome:
    failures, cases = [], 0
    for a in range(2, max_weight + 1):
        for l in enumerate_indices_up_to(max_weight - a):
            cases += 1
            if not property_one_check(l, a):
                failures.append({"l": str(l), "a": a})
    return _outcome(failures, cases, max_weight=max_weight)


def _schur_compatibility(max_weight, options) -> Outcome:
    failures, cases = [], 0
    for K, L in _pairs(max_weight):
        if not K or not L:
            continue
        cases += 1
        if not compatibility_check(K, L):
            failures.append({"K": str(K), "L": str(L)})
    return _outcome(failures, cases, max_weight=max_weight)


def _schur_chain(max_weight, options) -> Outcome:
    failures, cases = [], 0
    for k in enumerate_indices_up_to(max_weight):
        if not k:
            continue
        cases += 1
        results = compatibility_chain(k)
        if not all(results):
            failures.append({"k": str(k), "equation": results.index(False)})
    return _outcome(failures, cases, max_weight=max_weight)


def _schur_antipode(max_weight, options) -> Outcome:
    failures, cases = [], 0
    for w in range(2, max_weight + 1):
        for k, l, a in enumerate_triples(w):
            cases += 1
            h = AntiHook(k, l, a)
            if not antihook_antipode_holds(h):
                failures.append({"antihook": str(h)})
    return _outcome(failures, cases, max_weight=max_weight)


# ---- key lemma ----

def _lemma(name, weight, options) -> Outcome:
    failures, cases = [], 0
    for k, l, a in enumerate_triples(weight):
        cases += 1
        lhs, rhs = lemma_sides(name, k, a, l)
        if lhs != rhs:
            failures.append({"k": str(k), "a": a, "l": str(l)})
    return _outcome(failures, cases)


# ---- numeric ----

def _numeric_identity(name, order, options) -> Outcome:
    report = check_numeric_identity(name, order, options.sample_dicts(),
                                    tol=options.tolerance, mzv_tol=options.mzv_tolerance)
    details = report.to_dict()
    details.pop("elapsed_ms")
    return (CheckStatus.PASSED if report.holds else CheckStatus.FAILED), details


def _gamma_reflection_odd(order, options) -> Outcome:
    report = check_gamma_reflection_odd(order, tol=options.mzv_tolerance, mzv_tol=options.mzv_tolerance)
    details = report.to_dict()
    details.pop("elapsed_ms")
    return (CheckStatus.PASSED if report.holds else CheckStatus.FAILED), details


def _sum_formula(w, r, star, options) -> Outcome:
    report = check_sum_formula(w, r, star, tol=options.tolerance, mzv_tol=options.mzv_tolerance)
    details = report.to_dict()
    details.pop("elapsed_ms")
    return (CheckStatus.PASSED if report.holds else CheckStatus.FAILED), details


def _schur_sum_formula(w, r, s, options) -> Outcome:
    report = check_schur_sum_formula(w, r, s, tol=options.tolerance, mzv_tol=options.mzv_tolerance)
    details = report.to_dict()
    details.pop("elapsed_ms")
    return (CheckStatus.PASSED if report.holds else CheckStatus.FAILED), details


def _oracle(max_weight, options) -> Outcome:
    failures, cases = [], 0
    for k in enumerate_indices_up_to(max_weight):
        if not k or not is_admissible(k):
            continue
        cases += 1
        agrees, difference, allowed = oracle_agreement(k, M=2000, tol=options.mzv_tolerance)
        if not agrees:
            failures.append({"k": str(k), "difference": format_number(difference),
                             "allowed": format_number(allowed)})
    return _outcome(failures, cases)


# ---- remark counterexample ----

def _remark_witness(order, options) -> Outcome:
    witness = find_remark_counterexample(order)
    if witness is None:
        return CheckStatus.INCONCLUSIVE, {"order": order, "witness": None}
    return CheckStatus.PASSED, {"order": order, "witness": witness.to_dict()}


def _remark_z_agreement(order, options) -> Outcome:
    """Both sides agree after Z on the B-degree-0 column and on the witness coefficient."""
    positions = [(w, r, 0) for w in range(2, order + 1) for r in range(w - 1)]
    witness = find_remark_counterexample(order)
    if witness is not None and (witness.weight, witness.r, witness.s) not in positions:
        positions.append((witness.weight, witness.r, witness.s))
    failures = []
    for w, r, s in positions:
        lhs, rhs = remark_coefficients(w, r, s)
        residual = eval_Z(lhs, tol=options.mzv_tolerance).max_abs_residual(eval_Z(rhs, tol=options.mzv_tolerance))
        if residual > options.tolerance:
            failures.append({"w": w, "r": r, "s": s, "residual": format_number(residual)})
    return _outcome(failures, len(positions))


RUNNERS: dict[str, Callable[..., Outcome]] = {
    "hopf_commutativity": _hopf_commutativity,
    "hopf_associativity": _hopf_associativity,
    "hopf_coassociativity": _hopf_coassociativity,
    "hopf_counit": _hopf_counit,
    "hopf_multiplicativity": _hopf_multiplicativity,
    "hopf_antipode_left": _hopf_antipode_left,
    "hopf_antipode_right": _hopf_antipode_right,
    "hopf_tilde_involution": _hopf_tilde_involution,
    "hopf_homomorphisms": _hopf_homomorphisms,
    "hopf_telescoping": _hopf_telescoping,
    "hopf_S_involution": _hopf_S_involution,
    "hopf_lift_multiplicativity": _hopf_lift_multiplicativity,
    "hopf_tilde_on_lift": _hopf_tilde_on_lift,
    "exact_identity": _exact_identity,
    "schur_closed_form": _schur_closed_form,
    "schur_property_one": _schur_property_one,
    "schur_compatibility": _schur_compatibility,
    "schur_chain": _schur_chain,
    "schur_antipode": _schur_antipode,
    "lemma": _lemma,
    "numeric_identity": _numeric_identity,
    "gamma_reflection_odd": _gamma_reflection_odd,
    "sum_formula": _sum_formula,
    "schur_sum_formula": _schur_sum_formula,
    "oracle": _oracle,
    "remark_witness": _remark_witness,
    "remark_z_agreement": _remark_z_agreement,
}


def run_task(task: SuiteTask, options: TaskOptions) -> Outcome:
    """Execute one task; safe to call in a worker process."""
    configure(dps=options.working_dps, budget=options.mzv_iteration_budget)
    return RUNNERS[task.runner](*task.args, options)


# ---- suite expansion ----

HOPF_CHECKS = [
    ("commutativity", "hopf_commutativity"),
    ("associativity", "hopf_associativity"),
    ("coassociativity", "hopf_coassociativity"),
    ("counit", "hopf_counit"),
    ("multiplicativity", "hopf_multiplicativity"),
    ("antipode_left", "hopf_antipode_left"),
    ("antipode_right", "hopf_antipode_right"),
    ("antipode_homomorphisms", "hopf_homomorphisms"),
    ("telescoping", "hopf_telescoping"),
    ("lift_multiplicativity", "hopf_lift_multiplicativity"),
]

# Single-index checks reach two weights beyond the pair checks.
HOPF_WIDE_CHECKS = [
    ("antipode_tilde_involution", "hopf_tilde_involution"),
    ("antipode_involution", "hopf_S_involution"),
    ("antipode_tilde_on_lift", "hopf_tilde_on_lift"),
]

SCHUR_CHECKS = [
    ("closed_form", "schur_closed_form"),
    ("property_one", "schur_property_one"),
    ("compatibility", "schur_compatibility"),
    ("compatibility_chain", "schur_chain"),
    ("antipode", "schur_antipode"),
]

GENFUNC_NUMERIC = ["gen_func_zeta", "gen_func_zeta_xy", "gen_func_zeta_S", "psi_sum_ka", "sum_schur_gen"]
MAIN_THEOREM = ["main_theorem", "main_theorem_star", "zeta_kal", "zeta_S_kal", "relation_sum_formulas"]

ORACLE_WEIGHT = 5


def _hopf(config: RunConfig) -> list[SuiteTask]:
    tasks = [SuiteTask("hopf", check, runner, (config.max_weight,)) for check, runner in HOPF_CHECKS]
    tasks += [SuiteTask("hopf", check, runner, (config.max_weight + 2,)) for check, runner in HOPF_WIDE_CHECKS]
    return tasks


def _genfunc_exact(config: RunConfig) -> list[SuiteTask]:
    tasks = []
    for name in EXACT_IDENTITIES:
        order = config.exact_order_multi if name in MULTI_PARAMETER else config.exact_order_single
        tasks.append(SuiteTask("genfunc-exact", f"{name}@N{order}", "exact_identity", (name, order)))
    return tasks


def _schur(config: RunConfig) -> list[SuiteTask]:
    return [SuiteTask("schur", check, runner, (config.max_weight + 2,)) for check, runner in SCHUR_CHECKS]


def _key_lemma(config: RunConfig) -> list[SuiteTask]:
    tasks = []
    for name, top in (("alternating2", config.max_weight + 2), ("alternating3", config.max_weight + 2),
                      ("key", config.max_weight + 1), ("key_star", config.max_weight + 1)):
        for w in range(2, top + 1):
            tasks.append(SuiteTask("key-lemma", f"{name}@w{w}", "lemma", (name, w)))
    return tasks


def _genfunc_numeric(config: RunConfig) -> list[SuiteTask]:
    tasks = [SuiteTask("genfunc-numeric", f"{name}@N{config.numeric_order}", "numeric_identity",
                       (name, config.numeric_order)) for name in GENFUNC_NUMERIC]
    tasks.append(SuiteTask("genfunc-numeric", f"gamma_reflection@N{config.exact_order_single}",
                           "numeric_identity", ("gamma_reflection", config.exact_order_single)))
    tasks.append(SuiteTask("genfunc-numeric", f"gamma_reflection_odd@N{config.exact_order_single}",
                           "gamma_reflection_odd", (config.exact_order_single,)))
    return tasks


def _sum_formulas(config: RunConfig) -> list[SuiteTask]:
    tasks = []
    for w in range(2, config.max_weight + 3):
        for r in range(w - 1):
            for star in (False, True):
                name = "sum_formula_star" if star else "sum_formula"
                tasks.append(SuiteTask("sum-formulas", f"{name}(w={w},r={r})", "sum_formula", (w, r, star)))
    for w in range(2, config.max_weight + 2):
        for r in range(w - 1):
            for s in range(w - 1 - r):
                tasks.append(SuiteTask("sum-formulas", f"schur_sum_formula(w={w},r={r},s={s})",
                                       "schur_sum_formula", (w, r, s)))
    tasks.append(SuiteTask("sum-formulas", "oracle_agreement", "oracle", (min(ORACLE_WEIGHT, config.max_weight),)))
    return tasks


def _main_theorem(config: RunConfig) -> list[SuiteTask]:
    return [SuiteTask("main-theorem", f"{name}@N{config.numeric_order}", "numeric_identity",
                      (name, config.numeric_order)) for name in MAIN_THEOREM]


def _remark(config: RunConfig) -> list[SuiteTask]:
    return [
        SuiteTask("remark-counterexample", "witness", "remark_witness", (config.max_weight,)),
        SuiteTask("remark-counterexample", "z_agreement", "remark_z_agreement", (config.max_weight,)),
    ]


SUITE_BUILDERS: dict[SuiteName, Callable[[RunConfig], list[SuiteTask]]] = {
    SuiteName.HOPF: _hopf,
    SuiteName.GENFUNC_EXACT: _genfunc_exact,
    SuiteName.SCHUR: _schur,
    SuiteName.KEY_LEMMA: _key_lemma,
    SuiteName.GENFUNC_NUMERIC: _genfunc_numeric,
    SuiteName.SUM_FORMULAS: _sum_formulas,
    SuiteName.MAIN_THEOREM: _main_theorem,
    SuiteName.REMARK_COUNTEREXAMPLE: _remark,
}


def build_tasks(config: RunConfig) -> list[SuiteTask]:
    """All tasks of the selected suites, in a fixed order."""
    tasks = []
    for suite in config.suites:
        tasks.extend(SUITE_BUILDERS[suite](config))
    logger.info("%d checks across %d suites", len(tasks), len(config.suites))
    return tasks
