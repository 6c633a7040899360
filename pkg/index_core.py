"""Indices of multiple zeta values and their combinatorial primitives."""

import json
from itertools import combinations
from typing import Iterator, Sequence

# Components above this bound are rejected at parse time.
MAX_COMPONENT = 10**6


class ZetaHopfError(Exception):
    """Base class for every error raised by zeta-hopf."""


class InvalidIndexError(ZetaHopfError, ValueError):
    """Malformed index text, nonpositive component, or bad slice bounds."""


class SeriesError(ZetaHopfError, ArithmeticError):
    """Truncated series operation whose precondition does not hold."""


class ToleranceNotReachedError(ZetaHopfError):
    """Numeric evaluation ran out of its iteration budget."""


class UnknownNameError(ZetaHopfError, KeyError):
    """Unknown identity, lemma, suite or expansion target."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown name"


class MissingSampleError(ZetaHopfError, ValueError):
    """A formal variable has no sample value."""


class ConfigError(ZetaHopfError, ValueError):
    """Invalid run configuration."""


class Index(tuple):
    """A finite sequence of positive integers (possibly empty).

    Construction does not validate, so the algebra can build indices cheaply;
    external input goes through `Index.validated` or `parse_index`.
    """

    __slots__ = ()

    def __new__(cls, parts: Sequence[int] = ()):
        return super().__new__(cls, parts)

    @classmethod
    def validated(cls, parts: Sequence[int]) -> "Index":
        """Build an index, rejecting nonpositive or oversized components."""
        checked = []
        for part in parts:
            if not isinstance(part, int) or isinstance(part, bool):
                raise InvalidIndexError(f"non-integer component: {part!r}")
            if part < 1:
                raise InvalidIndexError(f"nonpositive component: {part}")
            if part > MAX_COMPONENT:
                raise InvalidIndexError(f"component too large: {part}")
            checked.append(part)
        return cls(checked)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def depth(self) -> int:
        return len(self)

    @property
    def is_empty(self) -> bool:
        return len(self) == 0

    def __add__(self, other) -> "Index":
        return Index(tuple.__add__(self, tuple(other)))

    def __getitem__(self, item):
        result = tuple.__getitem__(self, item)
        if isinstance(item, slice):
            return Index(result)
        return result

    def __repr__(self) -> str:
        return f"Index({index_to_text(self)!r})"

    def __str__(self) -> str:
        return "(" + index_to_text(self) + ")" if self else "∅"


EMPTY = Index()


def parse_index(text: str) -> Index:
    """Parse "k1,k2,...,kr" (spaces tolerated) into an Index; "" is the empty index."""
    stripped = text.strip()
    if not stripped or stripped in ("∅", "()"):
        return EMPTY
    parts = []
    for raw in stripped.strip("()").split(","):
        token = raw.strip()
        try:
            value = int(token)
        except ValueError:
            raise InvalidIndexError(f"non-numeric component: {token!r}") from None
        parts.append(value)
    return Index.validated(parts)


def index_to_text(k: Sequence[int]) -> str:
    """Inverse of parse_index."""
    return ",".join(str(part) for part in k)


def index_to_json(k: Sequence[int]) -> str:
    return json.dumps(list(k))


def index_from_json(data) -> Index:
    if isinstance(data, str):
        data = json.loads(data)
    return Index.validated(list(data))


def weight(k: Sequence[int]) -> int:
    return sum(k)


def depth(k: Sequence[int]) -> int:
    return len(k)


def is_admissible(k: Sequence[int]) -> bool:
    """True iff k is empty or its last component is at least 2."""
    return len(k) == 0 or k[-1] >= 2


def trailing_ones(k: Sequence[int]) -> int:
    """Number of trailing components equal to 1."""
    count = 0
    for part in reversed(k):
        if part != 1:
            break
        count += 1
    return count


def slice_index(k: Index, i: int, i_end: int) -> Index:
    """Return (k_{i+1}, ..., k_{i'}) for 0 <= i <= i' <= depth(k)."""
    if not 0 <= i <= i_end <= len(k):
        raise InvalidIndexError(f"slice bounds ({i}, {i_end}) out of range for depth {len(k)}")
    return Index(tuple.__getitem__(k, slice(i, i_end)))


def prefix(k: Index, i: int) -> Index:
    """The first i components of k."""
    return slice_index(k, 0, i)


def suffix(k: Index, i: int) -> Index:
    """Everything after the first i components of k."""
    return slice_index(k, i, len(k))


def reverse(k: Sequence[int]) -> Index:
    return Index(tuple(reversed(k)))


def concat(*parts: Sequence[int]) -> Index:
    out: list[int] = []
    for part in parts:
        out.extend(part)
    return Index(out)


def ones(n: int) -> Index:
    """The index {1}^n; the empty index when n = 0."""
    if n < 0:
        raise InvalidIndexError(f"negative repetition count: {n}")
    return Index((1,) * n)


def _compositions(w: int) -> Iterator[tuple[int, ...]]:
    # Cut points of {1, ..., w-1}; sorted afterwards for lexicographic output.
    for size in range(w):
        for cuts in combinations(range(1, w), size):
            bounds = (0,) + cuts + (w,)
            yield tuple(bounds[j + 1] - bounds[j] for j in range(len(bounds) - 1))


def enumerate_indices(w: int) -> list[Index]:
    """All indices of weight exactly w, in lexicographic order of their parts."""
    if w < 0:
        raise InvalidIndexError(f"negative weight: {w}")
    if w == 0:
        return [EMPTY]
    return [Index(c) for c in sorted(_compositions(w))]


def enumerate_indices_by_depth(w: int, r: int) -> list[Index]:
    """Indices of weight w and depth r, lexicographic."""
    if r == 0:
        return [EMPTY] if w == 0 else []
    if w < r:
        return []
    out = []
    for cuts in combinations(range(1, w), r - 1):
        bounds = (0,) + cuts + (w,)
        out.append(Index(bounds[j + 1] - bounds[j] for j in range(r)))
    return sorted(out)


def enumerate_indices_up_to(n: int) -> list[Index]:
    """All indices of weight at most n, by weight then lexicographically."""
    return [k for w in range(n + 1) for k in enumerate_indices(w)]


def enumerate_triples(w: int, min_corner: int = 2) -> list[tuple[Index, Index, int]]:
    """All (k, l, a) with |k| + a + |l| = w and a >= min_corner.

    Ordered by depth of k, then k, then a, then l, so reports are deterministic.
    """
    out = []
    for a in range(min_corner, w + 1):
        rest = w - a
        for wk in range(rest + 1):
            for k in enumerate_indices(wk):
                for l in enumerate_indices(rest - wk):
                    out.append((k, l, a))
    out.sort(key=lambda t: (len(t[0]), tuple(t[0]), t[2], len(t[1]), tuple(t[1])))
    return out


def enumerate_triples_by_depth(w: int, r: int, s: int, min_corner: int = 2) -> list[tuple[Index, Index, int]]:
    """Triples of total weight w with depth(k) = r and depth(l) = s."""
    return [t for t in enumerate_triples(w, min_corner) if len(t[0]) == r and len(t[1]) == s]
