"""Numeric checks of the generating-function identities after applying Z.

Left-hand sides are brute-force sums over indices or anti-hook triples, pushed
through regularization and the MZV engine; right-hand sides are built from
the numeric series of psi_1, Gamma_1 and pi W / sin(pi W). T stays symbolic in
every coefficient, while x, y, A, B are sampled at rational points.
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from mpmath import mp

from formal_series import (
    TruncatedSeries,
    build_F_I,
    index_sum_series,
    triple_sum_series,
)
from index_algebra import IndexCombination, poly_lift_xy, poly_lift_xy_star, star_expand, symbol
from index_core import (
    Index,
    MissingSampleError,
    SeriesError,
    UnknownNameError,
    concat,
    enumerate_indices_by_depth,
    enumerate_triples,
    reverse,
)
from poly_scalar import A, PolyScalar
from schur_antihook import antihook
from zeta_numeric import (
    DEFAULT_MZV_TOLERANCE,
    NumericPoly,
    NumericReport,
    default_engine,
    eval_admissible,
    eval_Z,
    format_number,
    to_mpf,
    zeta_S,
    zeta_S_star,
)

logger = logging.getLogger(__name__)

DEFAULT_XY_POINTS = [(1, 0), (1, -1), (2, 3), (Fraction(1, 2), Fraction(-1, 3))]
DEFAULT_AB_POINTS = [(0, 0), (1, 2), (-1, Fraction(1, 2))]
DEFAULT_TOLERANCE = 1e-8

Sample = dict[str, Fraction]


def default_samples() -> list[Sample]:
    """Every (x, y) point combined with every (A, B) point."""
    out = []
    for (x, y), (a, b) in itertools.product(DEFAULT_XY_POINTS, DEFAULT_AB_POINTS):
        out.append({"x": Fraction(x), "y": Fraction(y), "A": Fraction(a), "B": Fraction(b)})
    return out


# ---- numeric series over T-polynomials ----

def _single_zetas(N: int, tol: float) -> list:
    """[_, _, zeta(2), ..., zeta(N)] from the engine."""
    return [None, None] + [eval_admissible((k,), tol) for k in range(2, N + 1)]


def psi1_series(N: int, tol: float = DEFAULT_MZV_TOLERANCE) -> TruncatedSeries:
    """psi_1(W) = sum_{k>=2} zeta(k) W^{k-1}."""
    zetas = _single_zetas(N + 1, tol)
    coeffs = [NumericPoly()] + [NumericPoly.constant(zetas[k]) for k in range(2, N + 2)]
    return TruncatedSeries(coeffs, N, NumericPoly())


def gamma1_log_series(N: int, tol: float = DEFAULT_MZV_TOLERANCE) -> TruncatedSeries:
    """log Gamma_1(W): T at W^1 and zeta(k)/k at W^k."""
    zetas = _single_zetas(N, tol)
    coeffs = [NumericPoly(), NumericPoly.T()]
    coeffs += [NumericPoly.constant(zetas[k] / k) for k in range(2, N + 1)]
    return TruncatedSeries(coeffs, N, NumericPoly())


def gamma1_ratio_series(numerator_scales, denominator_scales, N: int,
                        tol: float = DEFAULT_MZV_TOLERANCE) -> TruncatedSeries:
    """prod Gamma_1(c_i W) / prod Gamma_1(d_j W) for rational c_i, d_j."""
    cs = [Fraction(c) for c in numerator_scales]
    ds = [Fraction(d) for d in denominator_scales]
    log = gamma1_log_series(N, tol)
    coeffs = [NumericPoly()]
    for k in range(1, N + 1):
        power_sum = sum(c ** k for c in cs) - sum(d ** k for d in ds)
        coeffs.append(log.coeffs[k].scale(power_sum))
    return TruncatedSeries(coeffs, N, NumericPoly()).exp()


@lru_cache(maxsize=None)
def _z_over_sin(N: int) -> tuple[Fraction, ...]:
    """Exact Taylor coefficients of z / sin z, by inverting sin z / z."""
    sinc = [PolyScalar()] * (N + 1)
    factorial = 1
    for n in range(N + 1):
        factorial *= max(n, 1)
        if n % 2 == 0:
            sinc[n] = PolyScalar.constant(Fraction((-1) ** (n // 2), factorial * (n + 1)))
    inverse = TruncatedSeries(sinc, N, PolyScalar()).inverse()
    return tuple(c.constant_term for c in inverse.coeffs)


def pi_over_sin_series(N: int, c=1) -> TruncatedSeries:
    """pi c W / sin(pi c W)."""
    c = to_mpf(Fraction(c))
    coeffs = [NumericPoly.constant(to_mpf(b) * (mp.pi * c) ** n) for n, b in enumerate(_z_over_sin(N))]
    return TruncatedSeries(coeffs, N, NumericPoly())


def sin_over_pi_series(N: int, c=1) -> TruncatedSeries:
    """sin(pi c W) / (pi c W), equal to 1 when c = 0."""
    c = to_mpf(Fraction(c))
    coeffs = []
    factorial = mp.mpf(1)
    for n in range(N + 1):
        factorial *= max(n, 1)
        if n % 2:
            coeffs.append(NumericPoly())
        else:
            coeffs.append(NumericPoly.constant((-1) ** (n // 2) * (mp.pi * c) ** n / (factorial * (n + 1))))
    return TruncatedSeries(coeffs, N, NumericPoly())


def psi_difference_series(c, d, e, f, N: int, tol: float = DEFAULT_MZV_TOLERANCE) -> TruncatedSeries:
    """W/e (psi_1(cW) - psi_1(dW)) given f with f e = c - d.

    The W^k coefficient is zeta(k) f sum_{i<=k-2} c^i d^{k-2-i}, which stays
    defined when e vanishes.
    """
    c, d, e, f = (Fraction(v) for v in (c, d, e, f))
    if f * e != c - d:
        raise SeriesError(f"quotient mismatch: {f} * {e} != {c} - {d}")
    zetas = _single_zetas(N, tol)
    coeffs = [NumericPoly(), NumericPoly()]
    for k in range(2, N + 1):
        quotient = sum(c ** i * d ** (k - 2 - i) for i in range(k - 1))
        coeffs.append(NumericPoly.constant(zetas[k] * to_mpf(f * quotient)))
    return TruncatedSeries(coeffs, N, NumericPoly())


# ---- brute-force left-hand sides ----

def _ka_series(N: int, term: Callable) -> TruncatedSeries:
    coeffs = [IndexCombination() for _ in range(N + 1)]
    for w in range(2, N + 1):
        parts = []
        for a in range(2, w + 1):
            for r in range(w - a + 1):
                for k in enumerate_indices_by_depth(w - a, r):
                    parts.append(term(concat(k, (a,))).scale(A ** r))
        coeffs[w] = IndexCombination.sum_of(parts)
    return TruncatedSeries(coeffs, N, IndexCombination())


def _kal(term: Callable) -> Callable:
    return lambda k, l, a: term(concat(k, (a,), l))


_SYMBOLIC_SIDES: dict[str, Callable[[int], TruncatedSeries]] = {
    "ka": lambda N: _ka_series(N, symbol),
    "ka_star": lambda N: _ka_series(N, star_expand),
    "k": lambda N: index_sum_series(N, symbol),
    "k_star": lambda N: index_sum_series(N, star_expand),
    "k_xy": lambda N: index_sum_series(N, poly_lift_xy),
    "k_xy_star": lambda N: index_sum_series(N, poly_lift_xy_star),
    "kal": lambda N: triple_sum_series(N, _kal(symbol)),
    "kal_star": lambda N: triple_sum_series(N, _kal(star_expand)),
    "kal_xy": lambda N: triple_sum_series(N, _kal(poly_lift_xy)),
    "kal_xy_star": lambda N: triple_sum_series(N, _kal(poly_lift_xy_star)),
    "F": build_F_I,
}


@lru_cache(maxsize=None)
def symbolic_side(kind: str, N: int) -> TruncatedSeries:
    """Index-algebra series whose Z-image is a numeric left-hand side."""
    return _SYMBOLIC_SIDES[kind](N)


def numeric_side(kind: str, N: int, point: Sample, tol: float) -> TruncatedSeries:
    spec = {name: point.get(name) for name in ("x", "y", "A", "B")}
    return symbolic_side(kind, N).map_coefficients(lambda u: eval_Z(u, spec, tol))


# ---- identities ----

@dataclass
class NumericComparison:
    label: str
    lhs: list
    rhs: list
    positions: list[str] = field(default_factory=list)

    @classmethod
    def of_series(cls, label: str, lhs: TruncatedSeries, rhs: TruncatedSeries) -> "NumericComparison":
        return cls(label, lhs.coeffs, rhs.coeffs, [f"W^{n}" for n in range(len(lhs.coeffs))])


def _S_point(point: Sample) -> Sample:
    return {**point, "x": Fraction(1), "y": Fraction(-1)}


def _psi_sum_ka(N, point, tol):
    a = point["A"]
    return [
        NumericComparison.of_series("plain", numeric_side("ka", N, point, tol),
                                    psi_difference_series(1, a, 1 - a, 1, N, tol)),
        NumericComparison.of_series("star", numeric_side("ka_star", N, point, tol),
                                    psi_difference_series(1 + a, a, 1, 1, N, tol)),
    ]


def _zeta_kal_rhs(N, point, tol, starred):
    a, b = point["A"], point["B"]
    if starred:
        return gamma1_ratio_series([1 + b], [1], N, tol) * psi_difference_series(1 + a, a - b, 1 + b, 1, N, tol)
    return gamma1_ratio_series([1], [1 - b], N, tol) * psi_difference_series(1 - b, a - b, 1 - a, 1, N, tol)


def _zeta_kal(N, point, tol):
    return [
        NumericComparison.of_series("plain", numeric_side("kal", N, point, tol), _zeta_kal_rhs(N, point, tol, False)),
        NumericComparison.of_series("star", numeric_side("kal_star", N, point, tol), _zeta_kal_rhs(N, point, tol, True)),
    ]


def _zeta_S_kal_rhs(N, point, tol, starred):
    a, b = point["A"], point["B"]
    if starred:
        first = -psi_difference_series(-(1 + b), a - b, 1 + a, -1, N, tol)
        second = psi_difference_series(1 + a, a - b, 1 + b, 1, N, tol)
        return (first * sin_over_pi_series(N) * pi_over_sin_series(N, 1 + a)
                + second * sin_over_pi_series(N) * pi_over_sin_series(N, 1 + b))
    first = -psi_difference_series(-(1 - a), a - b, 1 - b, -1, N, tol)
    second = psi_difference_series(1 - b, a - b, 1 - a, 1, N, tol)
    return (first * pi_over_sin_series(N) * sin_over_pi_series(N, 1 - a)
            + second * pi_over_sin_series(N) * sin_over_pi_series(N, 1 - b))


def _zeta_S_kal(N, point, tol):
    at_S = _S_point(point)
    return [
        NumericComparison.of_series("plain", numeric_side("kal_xy", N, at_S, tol),
                                    _zeta_S_kal_rhs(N, point, tol, False)),
        NumericComparison.of_series("star", numeric_side("kal_xy_star", N, at_S, tol),
                                    _zeta_S_kal_rhs(N, point, tol, True)),
    ]


def _gen_func_zeta(N, point, tol):
    a = point["A"]
    return [
        NumericComparison.of_series("plain", numeric_side("k", N, point, tol),
                                    gamma1_ratio_series([1], [1 - a], N, tol)),
        NumericComparison.of_series("star", numeric_side("k_star", N, point, tol),
                                    gamma1_ratio_series([1 + a], [1], N, tol)),
    ]


def _gen_func_zeta_xy(N, point, tol):
    x, y, a = point["x"], point["y"], point["A"]
    plain = gamma1_ratio_series([x, y], [x * (1 - a), y * (1 - a)], N, tol)
    star = gamma1_ratio_series([x * (1 + a), y * (1 + a)], [x, y], N, tol)
    return [
        NumericComparison.of_series("plain", numeric_side("k_xy", N, point, tol), plain),
        NumericComparison.of_series("star", numeric_side("k_xy_star", N, point, tol), star),
    ]


def _gen_func_zeta_S(N, point, tol):
    a = point["A"]
    at_S = _S_point(point)
    plain = pi_over_sin_series(N) * sin_over_pi_series(N, 1 - a)
    star = sin_over_pi_series(N) * pi_over_sin_series(N, 1 + a)
    return [
        NumericComparison.of_series("plain", numeric_side("k_xy", N, at_S, tol), plain),
        NumericComparison.of_series("star", numeric_side("k_xy_star", N, at_S, tol), star),
    ]


def _gamma_reflection(N, point, tol):
    return [NumericComparison.of_series("direct", gamma1_ratio_series([1, -1], [], N, tol), pi_over_sin_series(N))]


def _main_rhs(N, point, tol, starred):
    x, y, a, b = point["x"], point["y"], point["A"], point["B"]
    if starred:
        first = psi_difference_series(y * (1 + b), y * (b - a), 1 + a, y, N, tol).scale(y)
        second = psi_difference_series(x * (1 + a), x * (a - b), 1 + b, x, N, tol).scale(x)
        return (first * gamma1_ratio_series([x * (1 + a), y * (1 + a)], [x, y], N, tol)
                + second * gamma1_ratio_series([x * (1 + b), y * (1 + b)], [x, y], N, tol))
    first = psi_difference_series(y * (1 - a), y * (b - a), 1 - b, y, N, tol).scale(y)
    second = psi_difference_series(x * (1 - b), x * (a - b), 1 - a, x, N, tol).scale(x)
    return (first * gamma1_ratio_series([x, y], [x * (1 - a), y * (1 - a)], N, tol)
            + second * gamma1_ratio_series([x, y], [x * (1 - b), y * (1 - b)], N, tol))


def _main(starred: bool):
    def build(N, point, tol):
        kind = "kal_xy_star" if starred else "kal_xy"
        rhs = _main_rhs(N, point, tol, starred)
        out = [NumericComparison.of_series("direct", numeric_side(kind, N, point, tol), rhs)]
        xy = (point["x"], point["y"])
        if xy == (1, 0):
            out.append(NumericComparison.of_series("corollary_x1_y0", rhs, _zeta_kal_rhs(N, point, tol, starred)))
        elif xy == (1, -1):
            out.append(NumericComparison.of_series("corollary_x1_y-1", rhs, _zeta_S_kal_rhs(N, point, tol, starred)))
        return out
    return build


def _sum_schur_gen(N, point, tol):
    a, b = point["A"], point["B"]
    return [NumericComparison.of_series("direct", numeric_side("F", N, point, tol),
                                        psi_difference_series(1 + b, a + b, 1 - a, 1, N, tol))]


def _relation_rhs(k: Index, a: int, l: Index, starred: bool, tol: float) -> NumericPoly:
    r = len(k)
    total = NumericPoly()
    symmetric = zeta_S_star if starred else zeta_S
    for i in range(r + 1):
        tail = k[i:]
        hook = antihook(tail, reverse(l), a) if starred else antihook(reverse(l), tail, a)
        sign = (-1) ** (r - i) * (-1) ** (sum(tail) + a + sum(l))
        total = total + (eval_Z(hook, tol=tol) * symmetric(k[:i], tol)).scale(sign)
    for j in range(len(l) + 1):
        head = l[:j]
        hook = antihook(reverse(head), k, a) if starred else antihook(k, reverse(head), a)
        total = total + (eval_Z(hook, tol=tol) * symmetric(l[j:], tol)).scale((-1) ** j)
    return total


def _relation_sum_formulas(N, point, tol):
    out = []
    for starred, label in ((False, "plain"), (True, "star")):
        symmetric = zeta_S_star if starred else zeta_S
        comparison = NumericComparison(label, [], [])
        for w in range(2, N + 1):
            for k, l, a in enumerate_triples(w):
                comparison.lhs.append(symmetric(concat(k, (a,), l), tol))
                comparison.rhs.append(_relation_rhs(k, a, l, starred, tol))
                comparison.positions.append(f"[{k};{l};{a}]")
        out.append(comparison)
    return out


@dataclass(frozen=True)
class NumericIdentity:
    variables: tuple[str, ...]
    build: Callable[[int, Sample, float], list[NumericComparison]]


NUMERIC_IDENTITIES: dict[str, NumericIdentity] = {
    "psi_sum_ka": NumericIdentity(("A",), _psi_sum_ka),
    "zeta_kal": NumericIdentity(("A", "B"), _zeta_kal),
    "zeta_S_kal": NumericIdentity(("A", "B"), _zeta_S_kal),
    "gen_func_zeta": NumericIdentity(("A",), _gen_func_zeta),
    "gen_func_zeta_xy": NumericIdentity(("x", "y", "A"), _gen_func_zeta_xy),
    "gen_func_zeta_S": NumericIdentity(("A",), _gen_func_zeta_S),
    "gamma_reflection": NumericIdentity((), _gamma_reflection),
    "main_theorem": NumericIdentity(("x", "y", "A", "B"), _main(starred=False)),
    "main_theorem_star": NumericIdentity(("x", "y", "A", "B"), _main(starred=True)),
    "sum_schur_gen": NumericIdentity(("A", "B"), _sum_schur_gen),
    "relation_sum_formulas": NumericIdentity((), _relation_sum_formulas),
}


def project_samples(samples: list[Sample], variables: tuple[str, ...]) -> list[Sample]:
    """Restrict samples to the given variables, dropping duplicates in order."""
    seen = set()
    out = []
    for sample in samples:
        missing = [name for name in variables if sample.get(name) is None]
        if missing:
            raise MissingSampleError(f"sample {sample} has no value for {', '.join(missing)}")
        key = tuple(Fraction(sample[name]) for name in variables)
        if key not in seen:
            seen.add(key)
            out.append(dict(zip(variables, key)))
    return out


def check_numeric_identity(name: str, N: int, samples: Optional[list[Sample]] = None,
                           tol: float = DEFAULT_TOLERANCE,
                           mzv_tol: float = DEFAULT_MZV_TOLERANCE) -> NumericReport:
    """Compare both sides of a named identity coefficientwise at every sample point, T kept symbolic."""
    if name not in NUMERIC_IDENTITIES:
        raise UnknownNameError(f"unknown numeric identity: {name}")
    identity = NUMERIC_IDENTITIES[name]
    points = project_samples(samples if samples is not None else default_samples(), identity.variables)
    if not points:
        points = [{}]
    started = time.perf_counter()
    worst = mp.mpf(0)
    first_failure = None
    labels: list[str] = []
    with mp.workdps(default_engine().dps):
        for point in points:
            for comparison in identity.build(N, point, mzv_tol):
                if comparison.label not in labels:
                    labels.append(comparison.label)
                for position, left, right in zip(comparison.positions, comparison.lhs, comparison.rhs):
                    residual = left.max_abs_residual(right)
                    worst = max(worst, residual)
                    if residual > tol and first_failure is None:
                        first_failure = {
                            "comparison": comparison.label,
                            "sample": {k: str(v) for k, v in point.items()},
                            "position": position,
                            "lhs": str(left),
                            "rhs": str(right),
                            "residual": format_number(residual),
                        }
    report = NumericReport(
        identity=name,
        holds=first_failure is None,
        max_abs_residual=worst,
        tol=tol,
        order=N,
        samples=[tuple(point.values()) for point in points if point],
        details={"variables": list(identity.variables), "comparisons": labels, "first_failure": first_failure},
        elapsed_ms=(time.perf_counter() - started) * 1000,
    )
    logger.info("numeric identity %s at order %d: %s (max residual %s)",
                name, N, "holds" if report.holds else "FAILS", format_number(worst))
    return report


def check_gamma_reflection_odd(N: int, tol: float = DEFAULT_MZV_TOLERANCE,
                               mzv_tol: float = DEFAULT_MZV_TOLERANCE) -> NumericReport:
    """Odd W-coefficients of Gamma_1(W) Gamma_1(-W), formed as a product, vanish within tol."""
    started = time.perf_counter()
    with mp.workdps(default_engine().dps):
        product = gamma1_ratio_series([1], [], N, mzv_tol) * gamma1_ratio_series([-1], [], N, mzv_tol)
        residuals = {n: product.coeffs[n].max_abs_residual(NumericPoly()) for n in range(1, N + 1, 2)}
    worst = max(residuals.values(), default=mp.mpf(0))
    failing = [n for n, residual in residuals.items() if residual > tol]
    first_failure = None
    if failing:
        first_failure = {"position": f"W^{failing[0]}", "residual": format_number(residuals[failing[0]])}
    report = NumericReport(
        identity="gamma_reflection_odd",
        holds=not failing,
        max_abs_residual=worst,
        tol=tol,
        order=N,
        details={"odd_powers": list(residuals), "first_failure": first_failure},
        elapsed_ms=(time.perf_counter() - started) * 1000,
    )
    logger.info("odd reflection coefficients at order %d: max %s", N, format_number(worst))
    return report


def clear_caches():
    symbolic_side.cache_clear()
    _z_over_sin.cache_clear()
