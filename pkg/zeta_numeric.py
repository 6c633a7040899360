"""Harmonic regularization and numeric evaluation of multiple zeta values.

Indices follow the ascending convention: zeta(k_1, ..., k_r) sums over
m_1 < ... < m_r, so an index is admissible when its last part is >= 2.
Non-admissible indices regularize to polynomials in T with zeta(1) = T.
"""

import logging
import math
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from mpmath import mp

from index_algebra import IndexCombination, harmonic_product, poly_lift_xy, poly_lift_xy_star, star_expand, symbol
from index_core import (
    Index,
    InvalidIndexError,
    SeriesError,
    ToleranceNotReachedError,
    enumerate_indices_by_depth,
    enumerate_triples_by_depth,
    index_to_text,
    is_admissible,
    trailing_ones,
)
from schur_antihook import antihook

logger = logging.getLogger(__name__)

DEFAULT_DPS = 30
DEFAULT_MZV_TOLERANCE = 1e-10
DEFAULT_ITERATION_BUDGET = 20_000
REPORT_DIGITS = 12


def to_mpf(value):
    """Exact rationals become mpf at the current working precision."""
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / value.denominator
    return mp.mpf(value)


def format_number(value) -> str:
    """Fixed 12-significant-digit rendering used in every report."""
    return mp.nstr(to_mpf(value), REPORT_DIGITS)


# ---- exact regularized values ----

class RegularizedZeta:
    """sum c · T^d · zeta(k) over admissible k, with exact rational c."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms: dict[tuple[int, Index], Fraction] = {}
        for (degree, k), value in (terms or {}).items():
            if not is_admissible(k):
                raise InvalidIndexError(f"regularized values only carry admissible indices, got {k}")
            if value:
                self.terms[(degree, Index(k))] = Fraction(value)

    @classmethod
    def _raw(cls, terms: dict) -> "RegularizedZeta":
        out = cls.__new__(cls)
        out.terms = terms
        return out

    def __add__(self, other: "RegularizedZeta") -> "RegularizedZeta":
        out = dict(self.terms)
        for key, value in other.terms.items():
            total = out.get(key, 0) + value
            if total:
                out[key] = total
            else:
                out.pop(key, None)
        return RegularizedZeta._raw(out)

    def __sub__(self, other: "RegularizedZeta") -> "RegularizedZeta":
        return self + other.scale(-1)

    def scale(self, factor) -> "RegularizedZeta":
        if not factor:
            return RegularizedZeta._raw({})
        return RegularizedZeta._raw({key: value * factor for key, value in self.terms.items()})

    def times_T(self) -> "RegularizedZeta":
        return RegularizedZeta._raw({(d + 1, k): v for (d, k), v in self.terms.items()})

    @property
    def t_degree(self) -> int:
        return max((d for d, _ in self.terms), default=0)

    def items(self):
        for key in sorted(self.terms, key=lambda dk: (-dk[0], sum(dk[1]), -len(dk[1]), tuple(dk[1]))):
            yield key, self.terms[key]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RegularizedZeta):
            return NotImplemented
        return self.terms == other.terms

    def to_json(self) -> list[dict]:
        return [{"T": d, "index": list(k), "value": f"{v.numerator}/{v.denominator}"} for (d, k), v in self.items()]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        text = ""
        for (degree, k), value in self.items():
            factors = []
            if k:
                factors.append(f"ζ({index_to_text(k)})")
            if degree == 1:
                factors.append("T")
            elif degree:
                factors.append(f"T^{degree}")
            body = "".join(factors) or "1"
            magnitude = abs(value)
            if magnitude != 1:
                body = f"{magnitude}{body}" if factors else str(magnitude)
            sign = "−" if value < 0 else "+"
            text = (body if sign == "+" else "−" + body) if not text else text + sign + body
        return text


@lru_cache(maxsize=None)
def _regularize(k: tuple) -> RegularizedZeta:
    if is_admissible(k):
        return RegularizedZeta._raw({(0, Index(k)): Fraction(1)})
    v = Index(k[:-1])
    m = trailing_ones(v)
    # [v]*[1] contains [v,1] exactly m+1 times; every other term has at most m trailing ones.
    q = harmonic_product(symbol(v), symbol((1,))) - symbol(k, m + 1)
    result = _regularize(tuple(v)).times_T() - regularize_combination(q)
    return result.scale(Fraction(1, m + 1))


def regularize(k) -> RegularizedZeta:
    """Harmonic regularization of zeta(k) as a polynomial in T over admissible MZVs."""
    return _regularize(tuple(k))


def regularize_combination(u: IndexCombination) -> RegularizedZeta:
    """Linear extension over a combination with rational coefficients."""
    terms: dict = {}
    for k, coeff in u.terms.items():
        if not coeff.is_constant():
            raise SeriesError(f"regularization needs rational coefficients, got {coeff}")
        c = coeff.constant_term
        for key, value in _regularize(tuple(k)).terms.items():
            terms[key] = terms.get(key, 0) + c * value
    return RegularizedZeta._raw({key: value for key, value in terms.items() if value})


# ---- numeric T-polynomials ----

class NumericPoly:
    """Real polynomial in T, stored densely as mpf coefficients of T^0, T^1, ..."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        values = [to_mpf(c) for c in (coeffs or [])]
        while values and values[-1] == 0:
            values.pop()
        self.coeffs = values

    @classmethod
    def constant(cls, value) -> "NumericPoly":
        return cls([value])

    @classmethod
    def T(cls) -> "NumericPoly":
        return cls([0, 1])

    def coefficient(self, degree: int):
        return self.coeffs[degree] if degree < len(self.coeffs) else mp.mpf(0)

    def t_degree(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    def is_t_free(self, tol: float) -> bool:
        return all(abs(c) <= tol for c in self.coeffs[1:])

    def max_abs_residual(self, other: "NumericPoly"):
        size = max(len(self.coeffs), len(other.coeffs), 1)
        return max(abs(self.coefficient(i) - other.coefficient(i)) for i in range(size))

    def close_to(self, other: "NumericPoly", tol: float) -> bool:
        return self.max_abs_residual(other) <= tol

    def __add__(self, other) -> "NumericPoly":
        if not isinstance(other, NumericPoly):
            other = NumericPoly.constant(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return NumericPoly([self.coefficient(i) + other.coefficient(i) for i in range(size)])

    __radd__ = __add__

    def __neg__(self) -> "NumericPoly":
        return NumericPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "NumericPoly":
        if not isinstance(other, NumericPoly):
            other = NumericPoly.constant(other)
        return self + (-other)

    def __mul__(self, other) -> "NumericPoly":
        if not isinstance(other, NumericPoly):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return NumericPoly()
        out = [mp.mpf(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return NumericPoly(out)

    def __rmul__(self, other) -> "NumericPoly":
        return self.scale(other)

    def scale(self, factor) -> "NumericPoly":
        factor = to_mpf(factor)
        return NumericPoly([c * factor for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, NumericPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    # ring protocol for truncated series
    def zero_like(self) -> "NumericPoly":
        return NumericPoly()

    def one_like(self) -> "NumericPoly":
        return NumericPoly.constant(1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def invert_constant(self) -> "NumericPoly":
        if len(self.coeffs) != 1:
            raise SeriesError(f"not invertible among T-polynomials: {self}")
        return NumericPoly.constant(1 / self.coeffs[0])

    def to_json(self) -> list[str]:
        return [mp.nstr(c, REPORT_DIGITS) for c in self.coeffs] or ["0"]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for degree, c in enumerate(self.coeffs):
            if c == 0:
                continue
            value = mp.nstr(c, REPORT_DIGITS)
            if degree == 0:
                pieces.append(value)
            elif degree == 1:
                pieces.append(f"{value}*T")
            else:
                pieces.append(f"{value}*T^{degree}")
        return " + ".join(pieces) or "0"

    def __repr__(self) -> str:
        return f"NumericPoly({self})"


# ---- admissible MZVs ----

def _word(k: Index) -> list[int]:
    """Iterated-integral word (0 for dt/t, 1 for dt/(1-t)) of an ascending index."""
    letters = []
    for part in reversed(k):
        letters.extend([0] * (part - 1))
        letters.append(1)
    return letters


def _composition(word: list[int]) -> tuple[int, ...]:
    """Inverse of the word map, in the descending (polylogarithm) convention."""
    parts, zeros = [], 0
    for letter in word:
        if letter == 0:
            zeros += 1
        else:
            parts.append(zeros + 1)
            zeros = 0
    return tuple(parts)


def _polylog_half(parts: tuple[int, ...], M: int):
    """sum_{n_1 > ... > n_r >= 1, n_1 <= M} 2^{-n_1} / prod n_i^{s_i}."""
    if not parts:
        return mp.mpf(1)
    inner = [mp.mpf(1)] * (M + 1)
    for depth, s in enumerate(reversed(parts)):
        outermost = depth == len(parts) - 1
        running = mp.mpf(0)
        current = [mp.mpf(0)] * (M + 1)
        half_power = mp.mpf(1)
        for n in range(1, M + 1):
            term = inner[n - 1] / mp.mpf(n) ** s
            if outermost:
                half_power /= 2
                term *= half_power
            running += term
            current[n] = running
        inner = current
    return inner[M]


def _polylog_tail(depth: int, M: int) -> float:
    """Bound for the terms n_1 > M of a depth-`depth` polylogarithm at 1/2."""
    if depth == 0:
        return 0.0
    ratio = 0.5 * math.exp((depth - 1) / (M + 1))
    if ratio >= 1:
        return math.inf
    first = 2.0 ** -(M + 1) * (1 + math.log(M + 1)) ** (depth - 1)
    return first / (1 - ratio)


def _split_error(weight: int, depth_bound: int, M: int) -> float:
    # Each polylog factor at 1/2 lies in [0, 1]; errors combine as e1 + e2 + e1*e2 per split.
    e = _polylog_tail(depth_bound, M)
    return (weight + 1) * (2 * e + e * e)


@dataclass
class CachedValue:
    value: object
    bound: float


class MZVEngine:
    """Evaluates admissible MZVs to a requested absolute tolerance and caches them."""

    def __init__(self, dps: int = DEFAULT_DPS, budget: int = DEFAULT_ITERATION_BUDGET):
        self.dps = dps
        self.budget = budget
        self.cache: dict[Index, CachedValue] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def truncation_for(self, k: Index, tol: float) -> tuple[int, float]:
        """Smallest truncation M (in steps of 8) whose error bound is within tol."""
        weight = sum(k)
        if tol < 10.0 ** (2 - self.dps):
            raise ToleranceNotReachedError(f"ζ({index_to_text(k)}) cannot reach {tol:g} at {self.dps} digits")
        M = max(16, int(math.log2((weight + 1) * 4 / tol)) + 1)
        while M <= self.budget:
            bound = _split_error(weight, weight, M)
            if bound <= tol:
                return M, bound
            M += 8
        raise ToleranceNotReachedError(f"ζ({index_to_text(k)}) cannot reach {tol:g} within {self.budget} terms")

    def evaluate(self, k, tol: float = DEFAULT_MZV_TOLERANCE):
        k = Index(k)
        if not is_admissible(k):
            raise InvalidIndexError(f"index {k} is not admissible")
        if tol <= 0:
            raise ValueError("tolerance must be positive")
        if not k:
            return mp.mpf(1)
        cached = self.cache.get(k)
        if cached is not None and cached.bound <= tol:
            self.hits += 1
            return cached.value
        self.misses += 1
        M, bound = self.truncation_for(k, tol)
        with mp.workdps(self.dps):
            word = _word(k)
            total = mp.mpf(0)
            for j in range(len(word) + 1):
                head = [1 - letter for letter in reversed(word[:j])]
                total += _polylog_half(_composition(head), M) * _polylog_half(_composition(word[j:]), M)
        logger.debug("ζ(%s) with M=%d, bound %.3g", index_to_text(k), M, bound)
        with self._lock:
            self.cache[k] = CachedValue(total, bound)
        return total

    def load(self, entries: list[dict]):
        """Seed the cache from persisted {"index", "tol", "value", "bound"} records."""
        for entry in entries:
            try:
                k = Index.validated([int(p) for p in str(entry["index"]).split(",") if p])
                value = mp.mpf(entry["value"])
                bound = float(entry["bound"])
            except (KeyError, ValueError, InvalidIndexError):
                continue
            current = self.cache.get(k)
            if current is None or bound < current.bound:
                self.cache[k] = CachedValue(value, bound)

    def dump(self) -> list[dict]:
        out = []
        for k in sorted(self.cache, key=lambda idx: (sum(idx), tuple(idx))):
            entry = self.cache[k]
            out.append({
                "index": index_to_text(k),
                "tol": entry.bound,
                "value": mp.nstr(entry.value, self.dps),
                "bound": entry.bound,
            })
        return out


_engine = MZVEngine()


def default_engine() -> MZVEngine:
    return _engine


def configure(dps: Optional[int] = None, budget: Optional[int] = None) -> MZVEngine:
    """Adjust the shared engine; cached values are kept."""
    if dps is not None:
        _engine.dps = dps
    if budget is not None:
        _engine.budget = budget
    return _engine


def eval_admissible(k, tol: float = DEFAULT_MZV_TOLERANCE):
    """zeta(k) for admissible k with absolute error at most tol."""
    return _engine.evaluate(k, tol)


def brute_force_mzv(k, M: int):
    """Direct nested sum over m_r <= M and a rigorous bound on the omitted tail."""
    k = Index(k)
    if not is_admissible(k):
        raise InvalidIndexError(f"index {k} is not admissible")
    if not k:
        return mp.mpf(1), mp.mpf(0)
    running = [mp.mpf(1)] * (M + 1)
    for part in k:
        total = mp.mpf(0)
        current = [mp.mpf(0)] * (M + 1)
        for m in range(1, M + 1):
            total += running[m - 1] / mp.mpf(m) ** part
            current[m] = total
        running = current
    r, a = len(k), k[-1]
    # Tail sum_{m>M} (1+ln m)^{r-1} m^{-a} bounded by its integral, via the upper incomplete gamma.
    u0 = (a - 1) * (1 + mp.log(M))
    tail = mp.e ** (a - 1) * mp.mpf(a - 1) ** (-r) * mp.gammainc(r, u0)
    return running[M], tail


# ---- the evaluation maps ----

SAMPLE_VARIABLES = ("x", "y", "A", "B")


def eval_Z_bounded(u: IndexCombination, spec: Optional[dict] = None,
                   tol: float = DEFAULT_MZV_TOLERANCE) -> tuple[NumericPoly, float]:
    """eval_Z plus an upper bound on its absolute error, summed over the MZVs used."""
    values = {name: (None if spec is None else spec.get(name)) for name in SAMPLE_VARIABLES}
    specialized = u.specialize(values)
    exact: dict[tuple[int, Index], Fraction] = {}
    for k, c in specialized.items():
        for key, value in _regularize(tuple(k)).terms.items():
            exact[key] = exact.get(key, 0) + c * value
    degree = max((d for d, _ in exact), default=0)
    error = 0.0
    with mp.workdps(_engine.dps):
        coeffs = [mp.mpf(0)] * (degree + 1)
        for (d, k), value in exact.items():
            if value:
                coeffs[d] += to_mpf(value) * eval_admissible(k, tol)
                if k:
                    error += abs(float(value)) * _engine.cache[k].bound
        return NumericPoly(coeffs), error


def eval_Z(u: IndexCombination, spec: Optional[dict] = None, tol: float = DEFAULT_MZV_TOLERANCE) -> NumericPoly:
    """Specialize the formal variables, regularize and evaluate numerically as a T-polynomial."""
    return eval_Z_bounded(u, spec, tol)[0]


def zeta_value(k, tol: float = DEFAULT_MZV_TOLERANCE) -> NumericPoly:
    return eval_Z(symbol(k), tol=tol)


def zeta_star_value(k, tol: float = DEFAULT_MZV_TOLERANCE) -> NumericPoly:
    return eval_Z(star_expand(k), tol=tol)


def zeta_xy(k, x, y, tol: float = DEFAULT_MZV_TOLERANCE, starred: bool = False) -> NumericPoly:
    lifted = poly_lift_xy_star(k) if starred else poly_lift_xy(k)
    return eval_Z(lifted, {"x": Fraction(x), "y": Fraction(y)}, tol)


def zeta_S(k, tol: float = DEFAULT_MZV_TOLERANCE) -> NumericPoly:
    return zeta_xy(k, 1, -1, tol)


def zeta_S_star(k, tol: float = DEFAULT_MZV_TOLERANCE) -> NumericPoly:
    return zeta_xy(k, 1, -1, tol, starred=True)


# ---- sum formulas ----

@dataclass
class NumericReport:
    identity: str
    holds: bool
    max_abs_residual: object
    tol: float
    order: Optional[int] = None
    samples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "order": self.order,
            "samples": [[str(v) for v in sample] for sample in self.samples],
            "tol": self.tol,
            "max_abs_residual": format_number(self.max_abs_residual),
            "holds": self.holds,
            **self.details,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def check_sum_formula(w: int, r: int, star: bool = False, tol: float = 1e-8,
                      mzv_tol: float = DEFAULT_MZV_TOLERANCE) -> NumericReport:
    """sum of zeta(k,a) (or zeta-star) over dep k = r, |k|+a = w, a >= 2, against zeta(w) (or binom(w-1,r) zeta(w))."""
    if w < r + 2:
        raise InvalidIndexError(f"sum formula needs w >= r+2, got w={w}, r={r}")
    started = time.perf_counter()
    with mp.workdps(_engine.dps):
        total = NumericPoly()
        count = 0
        for a in range(2, w - r + 1):
            for k in enumerate_indices_by_depth(w - a, r):
                joined = Index(tuple(k) + (a,))
                total = total + (zeta_star_value(joined, mzv_tol) if star else zeta_value(joined, mzv_tol))
                count += 1
        factor = math.comb(w - 1, r) if star else 1
        expected = zeta_value((w,), mzv_tol).scale(factor)
        residual = total.max_abs_residual(expected)
    return NumericReport(
        identity="sum_formula_star" if star else "sum_formula",
        holds=bool(residual <= tol),
        max_abs_residual=residual,
        tol=tol,
        details={"w": w, "r": r, "terms": count, "value": format_number(total.coefficient(0))},
        elapsed_ms=(time.perf_counter() - started) * 1000,
    )


def check_schur_sum_formula(w: int, r: int, s: int, tol: float = 1e-8,
                            mzv_tol: float = DEFAULT_MZV_TOLERANCE) -> NumericReport:
    """Anti-hook values of fixed depths and weight add up to binom(w-1,s) zeta(w); each must be T-free."""
    if w < r + s + 2:
        raise InvalidIndexError(f"Schur sum formula needs w >= r+s+2, got w={w}, r={r}, s={s}")
    started = time.perf_counter()
    with mp.workdps(_engine.dps):
        total = NumericPoly()
        t_free = True
        triples = enumerate_triples_by_depth(w, r, s)
        for k, l, a in triples:
            value = eval_Z(antihook(k, l, a), tol=mzv_tol)
            if not value.is_t_free(tol):
                t_free = False
                logger.warning("anti-hook [%s;%s;%d] has a T-dependent value", k, l, a)
            total = total + value
        expected = zeta_value((w,), mzv_tol).scale(math.comb(w - 1, s))
        residual = total.max_abs_residual(expected)
    return NumericReport(
        identity="schur_sum_formula",
        holds=bool(residual <= tol and t_free),
        max_abs_residual=residual,
        tol=tol,
        details={"w": w, "r": r, "s": s, "terms": len(triples), "t_free": t_free},
        elapsed_ms=(time.perf_counter() - started) * 1000,
    )


def oracle_agreement(k, M: int = 2000, tol: float = DEFAULT_MZV_TOLERANCE) -> tuple[bool, object, object]:
    """Compare the engine with direct summation; returns (agrees, difference, allowed)."""
    with mp.workdps(_engine.dps):
        partial, tail = brute_force_mzv(k, M)
        value = eval_admissible(k, tol)
        # Partial sums undershoot: 0 <= value - partial <= tail (+ engine tolerance).
        difference = value - partial
        allowed = tail + tol
        return bool(-tol <= difference <= allowed), difference, allowed


def clear_caches():
    _regularize.cache_clear()
    _engine.cache.clear()

