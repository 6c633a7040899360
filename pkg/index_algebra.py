"""The index Hopf algebra: harmonic product, star expansion, coproduct, antipodes and the x,y lift.

Elements are finite combinations of index symbols [k] with `PolyScalar`
coefficients. All operations return canonical combinations (no zero
coefficients), so equality of elements is equality of their maps.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional

from index_core import EMPTY, Index, SeriesError, index_to_text, reverse
from poly_scalar import ONE, PolyScalar, X, Y

logger = logging.getLogger(__name__)


def _sort_key(k: Index) -> tuple:
    return (sum(k), -len(k), tuple(k))


class _Accumulator:
    """Mutable sum of index terms; `freeze()` yields the canonical combination."""

    __slots__ = ("terms",)

    def __init__(self):
        self.terms: dict[Index, dict[tuple, Fraction]] = {}

    def add(self, k: Index, coeff: PolyScalar, multiplicity=1):
        bucket = self.terms.setdefault(k, {})
        for monomial, value in coeff.terms.items():
            bucket[monomial] = bucket.get(monomial, 0) + value * multiplicity

    def freeze(self) -> "IndexCombination":
        out = {}
        for k, bucket in self.terms.items():
            cleaned = {m: v for m, v in bucket.items() if v}
            if cleaned:
                out[k] = PolyScalar._raw(cleaned)
        return IndexCombination._raw(out)


class IndexCombination:
    """A finite formal combination of index symbols with polynomial coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms: dict[Index, PolyScalar] = {}
        for k, coeff in (terms or {}).items():
            coeff = PolyScalar.coerce(coeff)
            if coeff:
                self.terms[Index(k)] = coeff

    @classmethod
    def _raw(cls, terms: dict) -> "IndexCombination":
        out = cls.__new__(cls)
        out.terms = terms
        return out

    @classmethod
    def of(cls, k, coeff=1) -> "IndexCombination":
        """The element coeff·[k]."""
        return cls({Index(k): coeff})

    @classmethod
    def sum_of(cls, parts: Iterable["IndexCombination"]) -> "IndexCombination":
        acc = _Accumulator()
        for part in parts:
            for k, c in part.terms.items():
                acc.add(k, c)
        return acc.freeze()

    # ---- structure ----

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(EMPTY, PolyScalar()).is_one()

    def coefficient(self, k) -> PolyScalar:
        return self.terms.get(Index(k), PolyScalar())

    def indices(self) -> list[Index]:
        return sorted(self.terms, key=_sort_key)

    def items(self) -> Iterator[tuple[Index, PolyScalar]]:
        for k in self.indices():
            yield k, self.terms[k]

    def variables(self) -> set[str]:
        used = set()
        for coeff in self.terms.values():
            used |= coeff.variables()
        return used

    def is_rational(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def max_weight(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def __len__(self) -> int:
        return len(self.terms)

    # ---- module operations ----

    def __add__(self, other: "IndexCombination") -> "IndexCombination":
        if not isinstance(other, IndexCombination):
            return NotImplemented
        return IndexCombination.sum_of((self, other))

    def __neg__(self) -> "IndexCombination":
        return IndexCombination._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "IndexCombination") -> "IndexCombination":
        if not isinstance(other, IndexCombination):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "IndexCombination":
        """Multiply every coefficient by a number or a PolyScalar."""
        acc = _Accumulator()
        factor = PolyScalar.coerce(factor)
        for k, c in self.terms.items():
            acc.add(k, c * factor)
        return acc.freeze()

    def __mul__(self, other) -> "IndexCombination":
        if isinstance(other, IndexCombination):
            return harmonic_product(self, other)
        if isinstance(other, (int, Fraction, PolyScalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other) -> "IndexCombination":
        if isinstance(other, (int, Fraction, PolyScalar)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, IndexCombination):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset((k, hash(c)) for k, c in self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ---- ring protocol used by truncated series ----

    def zero_like(self) -> "IndexCombination":
        return IndexCombination._raw({})

    def one_like(self) -> "IndexCombination":
        return unit()

    def invert_constant(self) -> "IndexCombination":
        """Inverse of c·[∅] for an invertible scalar c."""
        if set(self.terms) != {EMPTY}:
            raise SeriesError(f"not invertible in the index algebra: {self}")
        return IndexCombination.of(EMPTY, self.terms[EMPTY].invert_constant())

    # ---- scalar maps ----

    def map_scalars(self, f: Callable[[PolyScalar], PolyScalar]) -> "IndexCombination":
        acc = _Accumulator()
        for k, c in self.terms.items():
            acc.add(k, PolyScalar.coerce(f(c)))
        return acc.freeze()

    def substitute(self, **values) -> "IndexCombination":
        """Substitute x, y, A, B in every coefficient."""
        return self.map_scalars(lambda c: c.substitute(**values))

    def specialize(self, values: dict) -> dict[Index, Fraction]:
        """Evaluate every coefficient at rational sample values."""
        out = {}
        for k, c in self.terms.items():
            value = c.evaluate(values)
            if value:
                out[k] = value
        return out

    def coefficient_in(self, name: str, n: int) -> "IndexCombination":
        """The part of self whose coefficients carry exactly name^n, with name removed."""
        return self.map_scalars(lambda c: c.coefficient_in(name, n))

    def degree_in(self, name: str) -> int:
        return max((c.degree_in(name) for c in self.terms.values()), default=0)

    def apply_linear(self, f: Callable[[Index], "IndexCombination"]) -> "IndexCombination":
        """Linear extension of a map defined on index symbols."""
        acc = _Accumulator()
        for k, c in self.terms.items():
            for k2, c2 in f(k).terms.items():
                acc.add(k2, c2 * c)
        return acc.freeze()

    # ---- rendering ----

    def to_json(self) -> list[dict]:
        return [{"index": list(k), "coeff": c.to_json()} for k, c in self.items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "IndexCombination":
        return cls({Index.validated(item["index"]): PolyScalar.from_json(item["coeff"]) for item in data})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        text = ""
        for k, c in self.items():
            symbol = "[" + (index_to_text(k) or "∅") + "]"
            if c.is_constant():
                value = c.constant_term
                sign = "-" if value < 0 else "+"
                magnitude = abs(value)
                body = symbol if magnitude == 1 else f"{magnitude}{symbol}"
            else:
                sign, body = "+", f"({c}){symbol}"
            if not text:
                text = body if sign == "+" else "-" + body
            else:
                text += sign + body
        return text

    def __repr__(self) -> str:
        return f"IndexCombination({str(self)!r})"


def unit() -> IndexCombination:
    """[∅], the unit of the harmonic product."""
    return IndexCombination._raw({EMPTY: ONE})


def symbol(k, coeff=1) -> IndexCombination:
    return IndexCombination.of(k, coeff)


# ---- harmonic product ----

@lru_cache(maxsize=None)
def stuffle(k: tuple, l: tuple) -> tuple[tuple[Index, int], ...]:
    """[k]*[l] for single index symbols, as (index, multiplicity) pairs."""
    if not k:
        return ((Index(l), 1),)
    if not l:
        return ((Index(k), 1),)
    if l < k:
        return stuffle(l, k)
    head_k, last_k = k[:-1], k[-1]
    head_l, last_l = l[:-1], l[-1]
    out: dict[Index, int] = {}
    for left, last in ((stuffle(k, head_l), last_l),
                       (stuffle(head_k, l), last_k),
                       (stuffle(head_k, head_l), last_k + last_l)):
        for idx, mult in left:
            key = Index(tuple(idx) + (last,))
            out[key] = out.get(key, 0) + mult
    return tuple(out.items())


def harmonic_product(u: IndexCombination, v: IndexCombination) -> IndexCombination:
    """Bilinear harmonic (stuffle) product."""
    acc = _Accumulator()
    for k, ck in u.terms.items():
        for l, cl in v.terms.items():
            coeff = ck * cl
            if not coeff:
                continue
            for idx, mult in stuffle(tuple(k), tuple(l)):
                acc.add(idx, coeff, mult)
    return acc.freeze()


def harmonic_power(u: IndexCombination, n: int) -> IndexCombination:
    result = unit()
    for _ in range(n):
        result = harmonic_product(result, u)
    return result


# ---- star expansion ----

@lru_cache(maxsize=None)
def _star_terms(k: tuple) -> tuple[Index, ...]:
    if len(k) <= 1:
        return (Index(k),)
    gaps = len(k) - 1
    out = []
    for mask in range(1 << gaps):
        parts = [k[0]]
        for j in range(gaps):
            if mask >> j & 1:
                parts[-1] += k[j + 1]
            else:
                parts.append(k[j + 1])
        out.append(Index(parts))
    return tuple(out)


def star_expand(k) -> IndexCombination:
    """[k]^★: every internal comma replaced by a comma or a plus, summed."""
    return IndexCombination._raw({idx: ONE for idx in _star_terms(tuple(k))})


def star(u: IndexCombination) -> IndexCombination:
    return u.apply_linear(star_expand)


# ---- coproduct, counit, antipodes ----

Tensor = dict[tuple, PolyScalar]


def _tensor_add(out: dict, key: tuple, coeff: PolyScalar):
    total = out.get(key, PolyScalar()) + coeff
    if total:
        out[key] = total
    else:
        out.pop(key, None)


def comultiply(u: IndexCombination) -> Tensor:
    """Deconcatenation: [k] -> sum_i [k_i] ⊗ [k^i]."""
    out: Tensor = {}
    for k, c in u.terms.items():
        for i in range(len(k) + 1):
            _tensor_add(out, (k[:i], k[i:]), c)
    return out


def tensor_product(t1: Tensor, t2: Tensor) -> Tensor:
    """Componentwise harmonic product of two elements of the tensor square."""
    out: Tensor = {}
    for (a1, b1), c1 in t1.items():
        for (a2, b2), c2 in t2.items():
            coeff = c1 * c2
            for left, m1 in stuffle(tuple(a1), tuple(a2)):
                for right, m2 in stuffle(tuple(b1), tuple(b2)):
                    _tensor_add(out, (left, right), coeff * (m1 * m2))
    return out


def coassociativity_sides(u: IndexCombination) -> tuple[Tensor, Tensor]:
    """((Δ⊗id)Δ(u), (id⊗Δ)Δ(u)) as maps on index triples."""
    left: Tensor = {}
    right: Tensor = {}
    for (a, b), c in comultiply(u).items():
        for i in range(len(a) + 1):
            _tensor_add(left, (a[:i], a[i:], b), c)
        for j in range(len(b) + 1):
            _tensor_add(right, (a, b[:j], b[j:]), c)
    return left, right


def counit(u: IndexCombination) -> PolyScalar:
    """Coefficient of [∅]."""
    return u.coefficient(EMPTY)


def counit_sides(u: IndexCombination) -> tuple[IndexCombination, IndexCombination]:
    """((ε⊗id)Δ(u), (id⊗ε)Δ(u)); both must equal u."""
    left = _Accumulator()
    right = _Accumulator()
    for (a, b), c in comultiply(u).items():
        if not a:
            left.add(b, c)
        if not b:
            right.add(a, c)
    return left.freeze(), right.freeze()


def antipode_S(u: IndexCombination) -> IndexCombination:
    """S([k]) = (-1)^r [←k]^★."""
    return u.apply_linear(lambda k: star_expand(reverse(k)).scale((-1) ** len(k)))


def antipode_tilde(u: IndexCombination) -> IndexCombination:
    """S̃([k]) = (-1)^r [k]^★."""
    return u.apply_linear(lambda k: star_expand(k).scale((-1) ** len(k)))


def antipode_law_residual(u: IndexCombination, side: str = "left") -> IndexCombination:
    """m∘(S⊗id)∘Δ(u) − ε(u)[∅] (or the id⊗S version); zero in a Hopf algebra."""
    acc = _Accumulator()
    for (a, b), c in comultiply(u).items():
        if side == "left":
            product = harmonic_product(antipode_S(symbol(a)), symbol(b))
        else:
            product = harmonic_product(symbol(a), antipode_S(symbol(b)))
        for k, ck in product.terms.items():
            acc.add(k, ck * c)
    acc.add(EMPTY, -counit(u))
    return acc.freeze()


def telescoping_sum(k) -> IndexCombination:
    """sum_{i=0}^{r} (-1)^{r-i} [k_i]*[←k^i]^★; [∅] for k = ∅ and 0 otherwise."""
    k = Index(k)
    r = len(k)
    parts = []
    for i in range(r + 1):
        term = harmonic_product(symbol(k[:i]), star_expand(reverse(k[i:])))
        parts.append(term.scale((-1) ** (r - i)))
    return IndexCombination.sum_of(parts)


# ---- x,y polynomial lift ----

@lru_cache(maxsize=None)
def _lift(k: tuple, starred: bool) -> IndexCombination:
    parts = []
    for i in range(len(k) + 1):
        head, tail = Index(k[:i]), reverse(k[i:])
        if starred:
            product = harmonic_product(star_expand(head), star_expand(tail))
        else:
            product = harmonic_product(symbol(head), symbol(tail))
        parts.append(product.scale(X ** sum(head) * Y ** sum(tail)))
    return IndexCombination.sum_of(parts)


def poly_lift_xy(k) -> IndexCombination:
    """[k]_{x,y} = sum_i [k_i]*[←(k^i)] x^{|k_i|} y^{|k^i|}."""
    return _lift(tuple(k), False)


def poly_lift_xy_star(k) -> IndexCombination:
    """[k]^★_{x,y}: as poly_lift_xy with ★ on both factors."""
    return _lift(tuple(k), True)


def lift(u: IndexCombination, starred: bool = False) -> IndexCombination:
    """Linear extension of the x,y lift to combinations."""
    return u.apply_linear(poly_lift_xy_star if starred else poly_lift_xy)


def clear_caches():
    """Drop memoized products and expansions."""
    stuffle.cache_clear()
    _star_terms.cache_clear()
    _lift.cache_clear()
    logger.debug("index algebra caches cleared")
