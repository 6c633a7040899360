"""Truncated power series in W and the exact generating-function identities of the index algebra.

A `TruncatedSeries` holds the coefficients of W^0..W^N over any commutative
coefficient algebra that follows the `CoefficientRing` protocol:
`PolyScalar`, `IndexCombination` (harmonic product) or `NumericPoly`.
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional, Protocol, Sequence

from index_algebra import (
    IndexCombination,
    antipode_tilde,
    poly_lift_xy,
    poly_lift_xy_star,
    star_expand,
    symbol,
    unit,
)
from index_core import (
    Index,
    SeriesError,
    UnknownNameError,
    enumerate_indices,
    enumerate_triples,
    ones,
)
from poly_scalar import A, B, ONE, PolyScalar, X, Y
from schur_antihook import antihook

logger = logging.getLogger(__name__)


class CoefficientRing(Protocol):
    """What a series coefficient must support."""

    def zero_like(self): ...
    def one_like(self): ...
    def is_zero(self) -> bool: ...
    def is_one(self) -> bool: ...
    def invert_constant(self): ...
    def scale(self, factor): ...
    def __add__(self, other): ...
    def __sub__(self, other): ...
    def __mul__(self, other): ...
    def __neg__(self): ...


class TruncatedSeries:
    """f = sum_{n<=N} f_n W^n, arithmetic modulo W^{N+1}."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int, zero=None):
        if order < 0:
            raise SeriesError(f"negative truncation order: {order}")
        if zero is None:
            if not coeffs:
                raise SeriesError("cannot infer the coefficient ring of an empty series")
            zero = coeffs[0].zero_like()
        padded = list(coeffs[:order + 1])
        padded.extend(zero for _ in range(order + 1 - len(padded)))
        self.order = order
        self.coeffs = padded

    @classmethod
    def constant(cls, value, order: int) -> "TruncatedSeries":
        return cls([value], order)

    @classmethod
    def from_terms(cls, terms: dict, order: int, zero) -> "TruncatedSeries":
        coeffs = [zero] * (order + 1)
        for n, value in terms.items():
            if n <= order:
                coeffs[n] = value
        return cls(coeffs, order, zero)

    @property
    def zero(self):
        return self.coeffs[0].zero_like()

    def coefficient(self, n: int):
        if n > self.order:
            raise SeriesError(f"coefficient W^{n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def _check_order(self, other: "TruncatedSeries"):
        if other.order != self.order:
            raise SeriesError(f"order mismatch: {self.order} vs {other.order}")

    # ---- ring operations ----

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_order(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_order(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-a for a in self.coeffs], self.order)

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check_order(other)
        zero = self.zero
        out = []
        for n in range(self.order + 1):
            total = zero
            for i in range(n + 1):
                a, b = self.coeffs[i], other.coeffs[n - i]
                if a.is_zero() or b.is_zero():
                    continue
                total = total + a * b
            out.append(total)
        return TruncatedSeries(out, self.order, zero)

    def scale(self, factor) -> "TruncatedSeries":
        """Multiply every coefficient by a scalar of the coefficient ring."""
        return TruncatedSeries([a.scale(factor) for a in self.coeffs], self.order)

    def inverse(self) -> "TruncatedSeries":
        inv0 = self.coeffs[0].invert_constant()
        out = [inv0]
        for n in range(1, self.order + 1):
            total = self.zero
            for i in range(1, n + 1):
                if self.coeffs[i].is_zero():
                    continue
                total = total + self.coeffs[i] * out[n - i]
            out.append(-(total * inv0))
        return TruncatedSeries(out, self.order)

    def exp(self) -> "TruncatedSeries":
        if not self.coeffs[0].is_zero():
            raise SeriesError("exp needs a zero constant term")
        out = [self.coeffs[0].one_like()]
        for n in range(1, self.order + 1):
            total = self.zero
            for k in range(1, n + 1):
                if self.coeffs[k].is_zero():
                    continue
                total = total + (self.coeffs[k] * out[n - k]).scale(k)
            out.append(total.scale(Fraction(1, n)))
        return TruncatedSeries(out, self.order)

    def log(self) -> "TruncatedSeries":
        if not self.coeffs[0].is_one():
            raise SeriesError("log needs constant term equal to one")
        out = [self.zero]
        for n in range(1, self.order + 1):
            total = self.zero
            for k in range(1, n):
                if out[k].is_zero():
                    continue
                total = total + (out[k] * self.coeffs[n - k]).scale(k)
            out.append(self.coeffs[n] - total.scale(Fraction(1, n)))
        return TruncatedSeries(out, self.order)

    def scale_variable(self, c) -> "TruncatedSeries":
        """f(W) -> f(cW): the W^n coefficient is multiplied by c^n."""
        out = []
        power = None
        for n, a in enumerate(self.coeffs):
            power = c ** 0 if n == 0 else power * c
            out.append(a if n == 0 else a.scale(power))
        return TruncatedSeries(out, self.order)

    def derivative(self) -> "TruncatedSeries":
        """d/dW, truncated at the same order (top coefficient becomes zero)."""
        out = [self.coeffs[n].scale(n) for n in range(1, self.order + 1)]
        return TruncatedSeries(out, self.order, self.zero)

    def shift(self, k: int = 1) -> "TruncatedSeries":
        """Multiply by W^k."""
        return TruncatedSeries([self.zero] * k + self.coeffs[:self.order + 1 - k], self.order, self.zero)

    def map_coefficients(self, f: Callable) -> "TruncatedSeries":
        return TruncatedSeries([f(a) for a in self.coeffs], self.order)

    def truncate(self, n: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs[:n + 1], n, self.zero)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __repr__(self) -> str:
        shown = " + ".join(f"({c})W^{n}" for n, c in enumerate(self.coeffs) if not c.is_zero())
        return f"TruncatedSeries({shown or '0'}, order={self.order})"


# ---- series over the index algebra ----

def _zero_I() -> IndexCombination:
    return IndexCombination()


def substitute_series(f: TruncatedSeries, **values) -> TruncatedSeries:
    """Substitute x, y, A, B coefficientwise."""
    return f.map_coefficients(lambda c: c.substitute(**values))


def antipode_series(f: TruncatedSeries) -> TruncatedSeries:
    """S̃ applied coefficientwise."""
    return f.map_coefficients(antipode_tilde)


def generator_series_I(N: int) -> TruncatedSeries:
    """sum_{k>=1} [k]/k W^k."""
    terms = {k: symbol((k,), Fraction(1, k)) for k in range(1, N + 1)}
    return TruncatedSeries.from_terms(terms, N, _zero_I())


@lru_cache(maxsize=None)
def gamma1_I(N: int) -> TruncatedSeries:
    """Γ_{1,I}(W) = exp(sum_k [k]/k W^k) modulo W^{N+1}."""
    return generator_series_I(N).exp()


def gamma_ratio_I(numerator_scales: Iterable, denominator_scales: Iterable, N: int) -> TruncatedSeries:
    """prod Γ_{1,I}(c_i W) / prod Γ_{1,I}(d_j W), as one exponential."""
    cs = [PolyScalar.coerce(c) for c in numerator_scales]
    ds = [PolyScalar.coerce(d) for d in denominator_scales]
    terms = {}
    for k in range(1, N + 1):
        weight = PolyScalar()
        for c in cs:
            weight = weight + c ** k
        for d in ds:
            weight = weight - d ** k
        if weight:
            terms[k] = symbol((k,), weight.scale(Fraction(1, k)))
    return TruncatedSeries.from_terms(terms, N, _zero_I()).exp()


@lru_cache(maxsize=None)
def build_F_I(N: int) -> TruncatedSeries:
    """F_I(A,B,W) = sum over (k,l,a>=2) of [k;l;a] A^{dep k} B^{dep l} W^{|k|+a+|l|}."""
    return triple_sum_series(N, lambda k, l, a: antihook(k, l, a))


def index_sum_series(N: int, term: Callable[[Index], IndexCombination]) -> TruncatedSeries:
    """sum_{|k|<=N} term(k) A^{dep k} W^{|k|}, enumerated directly."""
    coeffs = []
    for w in range(N + 1):
        coeffs.append(IndexCombination.sum_of(
            term(k).scale(A ** len(k)) for k in enumerate_indices(w)
        ))
    return TruncatedSeries(coeffs, N)


def triple_sum_series(N: int, term: Callable[[Index, Index, int], IndexCombination]) -> TruncatedSeries:
    """sum over (k,l,a>=2) of weight <= N of term(k,l,a) A^{dep k} B^{dep l} W^{weight}."""
    coeffs = [_zero_I(), _zero_I()][:N + 1]
    for w in range(2, N + 1):
        coeffs.append(IndexCombination.sum_of(
            term(k, l, a).scale(A ** len(k) * B ** len(l)) for k, l, a in enumerate_triples(w)
        ))
    return TruncatedSeries(coeffs, N, _zero_I())


def _joined(k: Index, a: int, l: Index) -> Index:
    return Index(tuple(k) + (a,) + tuple(l))


# ---- identity builders: each returns labelled (lhs, rhs) comparisons ----

Comparison = tuple[str, TruncatedSeries, TruncatedSeries]


def _gen_func_k(N: int) -> list[Comparison]:
    lhs = index_sum_series(N, symbol)
    return [("direct", lhs, gamma_ratio_I([ONE], [1 - A], N))]


def _gen_func_k_star(N: int) -> list[Comparison]:
    lhs = index_sum_series(N, star_expand)
    rhs = gamma_ratio_I([1 + A], [ONE], N)
    derived = antipode_series(substitute_series(index_sum_series(N, symbol), A=-A))
    return [("direct", lhs, rhs), ("from_plain", derived, lhs)]


def _kxy_ratio(N: int, shift: PolyScalar, starred: bool) -> TruncatedSeries:
    if starred:
        return gamma_ratio_I([X * (1 + shift), Y * (1 + shift)], [X, Y], N)
    return gamma_ratio_I([X, Y], [X * (1 - shift), Y * (1 - shift)], N)


def _gen_func_kxy(N: int) -> list[Comparison]:
    lhs = index_sum_series(N, poly_lift_xy)
    return [("direct", lhs, _kxy_ratio(N, A, False))]


def _gen_func_kxy_star(N: int) -> list[Comparison]:
    lhs = index_sum_series(N, poly_lift_xy_star)
    derived = antipode_series(substitute_series(index_sum_series(N, poly_lift_xy), A=-A))
    return [("direct", lhs, _kxy_ratio(N, A, True)), ("from_plain", derived, lhs)]


def _F_at(N: int, first: PolyScalar, second: PolyScalar, scale: PolyScalar) -> TruncatedSeries:
    """F_I(first, second, scale·W)."""
    return substitute_series(build_F_I(N), A=first, B=second).scale_variable(scale)


def _kal_xy(N: int) -> list[Comparison]:
    lhs = triple_sum_series(N, lambda k, l, a: poly_lift_xy(_joined(k, a, l)))
    rhs = (_F_at(N, B, -A, Y) * _kxy_ratio(N, A, False)
           + _F_at(N, A, -B, X) * _kxy_ratio(N, B, False))
    return [("direct", lhs, rhs)]


def _kal_xy_star(N: int) -> list[Comparison]:
    lhs = triple_sum_series(N, lambda k, l, a: poly_lift_xy_star(_joined(k, a, l)))
    rhs = (_F_at(N, -A, B, Y) * _kxy_ratio(N, A, True)
           + _F_at(N, -B, A, X) * _kxy_ratio(N, B, True))
    plain = triple_sum_series(N, lambda k, l, a: poly_lift_xy(_joined(k, a, l)))
    derived = -antipode_series(substitute_series(plain, A=-A, B=-B))
    return [("direct", lhs, rhs), ("from_plain", derived, lhs)]


def _remark_expansions(N: int) -> list[Comparison]:
    gamma = gamma1_I(N)
    inverse = gamma.inverse()
    zero = _zero_I()
    plain_sum = TruncatedSeries([IndexCombination.sum_of(symbol(k) for k in enumerate_indices(n))
                                 for n in range(N + 1)], N, zero)
    star_ones = TruncatedSeries([star_expand(ones(n)) for n in range(N + 1)], N, zero)
    signed_ones = TruncatedSeries([symbol(ones(n), (-1) ** n) for n in range(N + 1)], N, zero)
    signed_star = TruncatedSeries([IndexCombination.sum_of(star_expand(k).scale((-1) ** len(k))
                                                           for k in enumerate_indices(n))
                                   for n in range(N + 1)], N, zero)
    return [
        ("gamma_sum", gamma, plain_sum),
        ("gamma_star_ones", gamma, star_ones),
        ("inverse_ones", inverse, signed_ones),
        ("inverse_signed_star", inverse, signed_star),
    ]


def _F_antipode(N: int) -> list[Comparison]:
    F = build_F_I(N)
    return [("direct", antipode_series(F), -substitute_series(F, A=-B, B=-A))]


def _gamma_inverse(N: int) -> list[Comparison]:
    gamma = gamma1_I(N)
    inverse = gamma.inverse()
    one = TruncatedSeries.constant(unit(), N)
    return [("product", gamma * inverse, one), ("antipode", antipode_series(gamma), inverse)]


def _kxy_specialization(N: int) -> list[Comparison]:
    lifted = substitute_series(index_sum_series(N, poly_lift_xy), x=1, y=0)
    ratio = substitute_series(_kxy_ratio(N, A, False), x=1, y=0)
    return [("lhs", lifted, index_sum_series(N, symbol)),
            ("rhs", ratio, gamma_ratio_I([ONE], [1 - A], N))]


EXACT_IDENTITIES: dict[str, Callable[[int], list[Comparison]]] = {
    "gen_func_k": _gen_func_k,
    "gen_func_k_star": _gen_func_k_star,
    "gen_func_kxy": _gen_func_kxy,
    "gen_func_kxy_star": _gen_func_kxy_star,
    "prop_gen_func_kal_xy": _kal_xy,
    "prop_gen_func_kal_xy_star": _kal_xy_star,
    "remark_3_expansions": _remark_expansions,
    "F_antipode": _F_antipode,
    "gamma_inverse": _gamma_inverse,
    "gen_func_kxy_specialization": _kxy_specialization,
}

# Identities whose natural order is the multi-parameter one.
MULTI_PARAMETER = {"gen_func_kxy", "gen_func_kxy_star", "prop_gen_func_kal_xy",
                   "prop_gen_func_kal_xy_star", "F_antipode", "gen_func_kxy_specialization"}


@dataclass
class CoefficientMismatch:
    """First differing coefficient between two index-algebra series."""
    power: int
    index: Index
    monomial: str
    lhs: str
    rhs: str
    comparison: str = ""

    def to_dict(self) -> dict:
        return {
            "comparison": self.comparison,
            "power": self.power,
            "index": list(self.index),
            "monomial": self.monomial,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


@dataclass
class ExactReport:
    identity: str
    order: int
    holds: bool
    first_failure: Optional[CoefficientMismatch] = None
    elapsed_ms: float = 0.0
    comparisons: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "order": self.order,
            "holds": self.holds,
            "first_failure": self.first_failure.to_dict() if self.first_failure else None,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def first_mismatch(lhs: TruncatedSeries, rhs: TruncatedSeries) -> Optional[CoefficientMismatch]:
    """Lowest W-power, then first index and monomial, where the two series differ."""
    for n in range(min(lhs.order, rhs.order) + 1):
        diff = lhs.coeffs[n] - rhs.coeffs[n]
        if diff.is_zero():
            continue
        k, coeff = next(diff.items())
        monomial = coeff.monomials()[0]
        left = lhs.coeffs[n].coefficient(k).terms.get(monomial, Fraction(0))
        right = rhs.coeffs[n].coefficient(k).terms.get(monomial, Fraction(0))
        return CoefficientMismatch(n, k, PolyScalar.monomial_text(monomial) or "1", str(left), str(right))
    return None


def exact_identity_check(name: str, N: int) -> ExactReport:
    """Compare both sides of a named identity coefficientwise, exactly, up to W^N."""
    if name not in EXACT_IDENTITIES:
        raise UnknownNameError(f"unknown exact identity: {name}")
    started = time.perf_counter()
    report = ExactReport(identity=name, order=N, holds=True)
    for label, lhs, rhs in EXACT_IDENTITIES[name](N):
        report.comparisons.append(label)
        mismatch = first_mismatch(lhs, rhs)
        if mismatch is not None:
            mismatch.comparison = label
            report.holds = False
            report.first_failure = mismatch
            break
    report.elapsed_ms = (time.perf_counter() - started) * 1000
    logger.info("exact identity %s at order %d: %s (%.0f ms)",
                name, N, "holds" if report.holds else "FAILS", report.elapsed_ms)
    return report


# ---- the sum-formula generating function lifted to the index algebra ----

@dataclass
class RemarkWitness:
    """A coefficient of A^r B^s W^w where the lifted sum formula fails in the index algebra."""
    weight: int
    r: int
    s: int
    lhs: IndexCombination
    rhs: IndexCombination

    def to_dict(self) -> dict:
        return {"w": self.weight, "r": self.r, "s": self.s, "lhs": str(self.lhs), "rhs": str(self.rhs)}


def psi_side_coefficient(w: int) -> IndexCombination:
    """W^w coefficient of W/(1-A)(ψ_{1,I}((1+B)W) - ψ_{1,I}((A+B)W)), ψ_{1,I}(W) = sum_{k>=2} [k] W^{k-1}."""
    if w < 2:
        return _zero_I()
    c, d = 1 + B, A + B
    quotient = PolyScalar()
    for i in range(w - 1):
        quotient = quotient + c ** i * d ** (w - 2 - i)
    return symbol((w,), quotient)


def remark_coefficients(w: int, r: int, s: int) -> tuple[IndexCombination, IndexCombination]:
    """(anti-hook side, ψ side) coefficients of A^r B^s W^w."""
    F = build_F_I(w)
    lhs = F.coeffs[w].coefficient_in("A", r).coefficient_in("B", s)
    rhs = psi_side_coefficient(w).coefficient_in("A", r).coefficient_in("B", s)
    return lhs, rhs


def find_remark_counterexample(N: int) -> Optional[RemarkWitness]:
    """Smallest (w, r, s) where the two sides differ in the index algebra; None if none up to N."""
    if N < 2:
        raise SeriesError("search order must be at least 2")
    for w in range(2, N + 1):
        for r in range(w - 1):
            for s in range(w - 1 - r):
                lhs, rhs = remark_coefficients(w, r, s)
                if lhs != rhs:
                    logger.info("remark witness at (w, r, s) = (%d, %d, %d)", w, r, s)
                    return RemarkWitness(w, r, s, lhs, rhs)
    logger.info("no remark witness up to order %d", N)
    return None


def clear_caches():
    gamma1_I.cache_clear()
    build_F_I.cache_clear()
