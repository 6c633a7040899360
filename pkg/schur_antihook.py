"""Anti-hook symbols [k;l;a] and their identities in the index algebra."""

import logging
from dataclasses import dataclass
from functools import lru_cache

from index_algebra import (
    IndexCombination,
    antipode_tilde,
    harmonic_product,
    poly_lift_xy,
    poly_lift_xy_star,
    star_expand,
    symbol,
)
from index_core import EMPTY, Index, InvalidIndexError, UnknownNameError, reverse
from poly_scalar import X, Y

logger = logging.getLogger(__name__)

LEMMA_NAMES = ("alternating2", "alternating3", "key", "key_star")


@dataclass(frozen=True)
class AntiHook:
    """The symbol [k_row; l_row; corner]: column k_row, row l_row, corner exponent."""
    k_row: Index = EMPTY
    l_row: Index = EMPTY
    corner: int = 2

    def __post_init__(self):
        object.__setattr__(self, "k_row", Index(self.k_row))
        object.__setattr__(self, "l_row", Index(self.l_row))
        if self.corner < 1:
            raise InvalidIndexError(f"corner must be positive, got {self.corner}")

    @property
    def weight(self) -> int:
        return sum(self.k_row) + self.corner + sum(self.l_row)

    @property
    def is_convergent(self) -> bool:
        """Schur values are defined numerically only for corner >= 2."""
        return self.corner >= 2

    def swapped(self) -> "AntiHook":
        return AntiHook(self.l_row, self.k_row, self.corner)

    def to_dict(self) -> dict:
        return {"k": list(self.k_row), "l": list(self.l_row), "a": self.corner}

    @classmethod
    def from_dict(cls, data: dict) -> "AntiHook":
        return cls(
            k_row=Index.validated(data.get("k", [])),
            l_row=Index.validated(data.get("l", [])),
            corner=int(data.get("a", 2)),
        )

    def __str__(self) -> str:
        k = ",".join(map(str, self.k_row)) or "∅"
        l = ",".join(map(str, self.l_row)) or "∅"
        return f"[{k};{l};{self.corner}]"


def _append(k: Index, *parts: int) -> Index:
    return Index(tuple(k) + parts)


@lru_cache(maxsize=None)
def _expand(k: tuple, l: tuple, a: int) -> IndexCombination:
    if not l:
        return symbol(_append(Index(k), a))
    # [k;l;a] = [k,a]*[l]^★ − [(k,a); l_{s-1}; l_s]
    product = harmonic_product(symbol(_append(Index(k), a)), star_expand(l))
    return product - _expand(k + (a,), l[:-1], l[-1])


def expand_antihook(h: AntiHook) -> IndexCombination:
    """Expand [k;l;a] into the index algebra by peeling the row from the right."""
    return _expand(tuple(h.k_row), tuple(h.l_row), h.corner)


def antihook(k, l, a: int) -> IndexCombination:
    return _expand(tuple(k), tuple(l), a)


@lru_cache(maxsize=None)
def _expand_closed(k: tuple, l: tuple, a: int) -> IndexCombination:
    row = reverse(l)
    head = Index(k + (a,))
    parts = []
    for j in range(len(row) + 1):
        term = harmonic_product(symbol(head + row[:j]), star_expand(reverse(row[j:])))
        parts.append(term if j % 2 == 0 else -term)
    return IndexCombination.sum_of(parts)


def expand_antihook_closed(h: AntiHook) -> IndexCombination:
    """Alternating closed form: sum_j (-1)^j [k,a,L_j]*[←(L^j)]^★ with L the reversed row."""
    return _expand_closed(tuple(h.k_row), tuple(h.l_row), h.corner)


def property_one_check(l, a: int) -> bool:
    """[∅;l;a] = [l,a]^★ for the recursive expansion."""
    return antihook(EMPTY, l, a) == star_expand(_append(Index(l), a))


def compatibility_check(K, L) -> bool:
    """[K_{r-1};L;k_r] + [K;L_{s-1};l_s] = [K]*[L]^★, with both unknowns cross-checked in closed form."""
    K, L = Index(K), Index(L)
    if not K or not L:
        raise InvalidIndexError("compatibility needs two nonempty rows")
    column = AntiHook(K[:-1], L, K[-1])
    row = AntiHook(K, L[:-1], L[-1])
    for h in (column, row):
        if expand_antihook(h) != expand_antihook_closed(h):
            logger.debug("closed form disagrees for %s", h)
            return False
    lhs = expand_antihook(column) + expand_antihook(row)
    return lhs == harmonic_product(symbol(K), star_expand(L))


def compatibility_chain(k) -> list[bool]:
    """All depth(k)+1 defining equations met when k is read column-top to row-end.

    The unknowns are U_j = [k_1..k_{n-1-j}; ←(k_{n-j+1}..k_n); k_{n-j}];
    the first and last equations are the boundary cases, the middle ones the
    splitting relation.
    """
    k = Index(k)
    n = len(k)
    if n == 0:
        raise InvalidIndexError("compatibility chain needs a nonempty index")
    unknowns = [AntiHook(k[:n - 1 - j], reverse(k[n - j:]), k[n - 1 - j]) for j in range(n)]
    values = [expand_antihook(h) for h in unknowns]
    closed_ok = [expand_antihook_closed(h) == v for h, v in zip(unknowns, values)]
    results = [closed_ok[0] and values[0] == symbol(k)]
    for i in range(1, n):
        K, L = k[:n - i], reverse(k[n - i:])
        holds = values[i - 1] + values[i] == harmonic_product(symbol(K), star_expand(L))
        results.append(holds and closed_ok[i - 1] and closed_ok[i])
    results.append(closed_ok[n - 1] and values[n - 1] == star_expand(reverse(k)))
    return results


def antihook_antipode(h: AntiHook) -> IndexCombination:
    """S̃ applied to the expansion of h."""
    return antipode_tilde(expand_antihook(h))


def antihook_antipode_holds(h: AntiHook) -> bool:
    """S̃([k;l;a]) = (-1)^{r+s+1} [l;k;a]."""
    sign = (-1) ** (len(h.k_row) + len(h.l_row) + 1)
    return antihook_antipode(h) == expand_antihook(h.swapped()).scale(sign)


def _signed(u: IndexCombination, negative: bool) -> IndexCombination:
    return -u if negative else u


def _alternating2(k: Index, a: int, l: Index) -> tuple[IndexCombination, IndexCombination]:
    parts = []
    head = _append(k, a)
    for j in range(len(l) + 1):
        term = harmonic_product(symbol(head + l[:j]), star_expand(reverse(l[j:])))
        parts.append(_signed(term, j % 2 == 1))
    return IndexCombination.sum_of(parts), antihook(k, reverse(l), a)


def _alternating3(k: Index, a: int, l: Index) -> tuple[IndexCombination, IndexCombination]:
    parts = []
    for j in range(len(l) + 1):
        term = harmonic_product(antihook(k, reverse(l[:j]), a), symbol(l[j:]))
        parts.append(_signed(term, j % 2 == 1))
    return IndexCombination.sum_of(parts), symbol(_append(k, a) + l)


def _key(k: Index, a: int, l: Index, starred: bool) -> tuple[IndexCombination, IndexCombination]:
    r, s = len(k), len(l)
    lift = poly_lift_xy_star if starred else poly_lift_xy
    total = sum(k) + a + sum(l)
    parts = []
    for i in range(r + 1):
        tail = k[i:]
        if starred:
            hook = antihook(tail, reverse(l), a)
        else:
            hook = antihook(reverse(l), tail, a)
        coeff = Y ** (sum(tail) + a + sum(l))
        term = harmonic_product(hook.scale(coeff), lift(k[:i]))
        parts.append(_signed(term, (r - i) % 2 == 1))
    for j in range(s + 1):
        head = l[:j]
        if starred:
            hook = antihook(reverse(head), k, a)
        else:
            hook = antihook(k, reverse(head), a)
        coeff = X ** (sum(k) + a + sum(head))
        term = harmonic_product(hook.scale(coeff), lift(l[j:]))
        parts.append(_signed(term, j % 2 == 1))
    lhs = lift(_append(k, a) + l)
    logger.debug("key lemma at weight %d: %d terms", total, len(lhs))
    return lhs, IndexCombination.sum_of(parts)


def lemma_sides(name: str, k, a: int, l) -> tuple[IndexCombination, IndexCombination]:
    """Both sides of a named anti-hook lemma, fully expanded."""
    k, l = Index(k), Index(l)
    if name == "alternating2":
        return _alternating2(k, a, l)
    if name == "alternating3":
        return _alternating3(k, a, l)
    if name == "key":
        return _key(k, a, l, starred=False)
    if name == "key_star":
        return _key(k, a, l, starred=True)
    raise UnknownNameError(f"unknown lemma: {name} (choose from {', '.join(LEMMA_NAMES)})")


def clear_caches():
    _expand.cache_clear()
    _expand_closed.cache_clear()
