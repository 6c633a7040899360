"""Exact polynomials in the formal variables x, y, A, B over the rationals."""

from fractions import Fraction
from typing import Iterator, Optional, Union

from index_core import MissingSampleError, SeriesError

VARIABLES = ("x", "y", "A", "B")
_POSITION = {name: i for i, name in enumerate(VARIABLES)}
_ONE_MONOMIAL = (0, 0, 0, 0)

Number = Union[int, Fraction]


def _add_exponents(m1: tuple, m2: tuple) -> tuple:
    return (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])


class PolyScalar:
    """Sparse polynomial: monomial exponent tuple (x, y, A, B) -> Fraction.

    Instances are treated as immutable; zero coefficients are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for monomial, value in terms.items():
                if value:
                    self.terms[tuple(monomial)] = Fraction(value)

    @classmethod
    def constant(cls, value: Number) -> "PolyScalar":
        return cls({_ONE_MONOMIAL: value})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "PolyScalar":
        """The monomial name^power."""
        if name not in _POSITION:
            raise KeyError(f"unknown variable: {name}")
        exponents = [0, 0, 0, 0]
        exponents[_POSITION[name]] = power
        return cls({tuple(exponents): 1})

    @classmethod
    def coerce(cls, value) -> "PolyScalar":
        if isinstance(value, PolyScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        return NotImplemented

    @classmethod
    def _raw(cls, terms: dict) -> "PolyScalar":
        # Caller guarantees canonical terms (no zeros).
        out = cls.__new__(cls)
        out.terms = terms
        return out

    # ---- structure ----

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == _ONE_MONOMIAL for m in self.terms)

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get(_ONE_MONOMIAL, Fraction(0))

    def variables(self) -> set[str]:
        """Variables occurring with a positive exponent."""
        used = set()
        for monomial in self.terms:
            for name, exp in zip(VARIABLES, monomial):
                if exp:
                    used.add(name)
        return used

    def degree_in(self, name: str) -> int:
        pos = _POSITION[name]
        return max((m[pos] for m in self.terms), default=0)

    def coefficient_in(self, name: str, n: int) -> "PolyScalar":
        """Coefficient of name^n, as a polynomial in the remaining variables."""
        pos = _POSITION[name]
        out = {}
        for monomial, value in self.terms.items():
            if monomial[pos] == n:
                reduced = list(monomial)
                reduced[pos] = 0
                out[tuple(reduced)] = value
        return PolyScalar._raw(out)

    def monomials(self) -> list[tuple]:
        """Monomials in a fixed order: total degree, then exponents."""
        return sorted(self.terms, key=lambda m: (sum(m), m))

    def items(self) -> Iterator[tuple[tuple, Fraction]]:
        for monomial in self.monomials():
            yield monomial, self.terms[monomial]

    # ---- arithmetic ----

    def __add__(self, other) -> "PolyScalar":
        other = PolyScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for monomial, value in other.terms.items():
            total = out.get(monomial, 0) + value
            if total:
                out[monomial] = total
            else:
                out.pop(monomial, None)
        return PolyScalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "PolyScalar":
        return PolyScalar._raw({m: -v for m, v in self.terms.items()})

    def __sub__(self, other) -> "PolyScalar":
        other = PolyScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PolyScalar":
        return (-self) + other

    def __mul__(self, other) -> "PolyScalar":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = PolyScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return PolyScalar._raw({})
        out: dict[tuple, Fraction] = {}
        for m1, v1 in self.terms.items():
            for m2, v2 in other.terms.items():
                key = _add_exponents(m1, m2)
                out[key] = out.get(key, 0) + v1 * v2
        return PolyScalar._raw({m: v for m, v in out.items() if v})

    __rmul__ = __mul__

    def scale(self, factor) -> "PolyScalar":
        if isinstance(factor, PolyScalar):
            return self * factor
        if not factor:
            return PolyScalar._raw({})
        return PolyScalar._raw({m: v * factor for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "PolyScalar":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = PolyScalar.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = PolyScalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ---- ring protocol used by truncated series ----

    def zero_like(self) -> "PolyScalar":
        return PolyScalar._raw({})

    def one_like(self) -> "PolyScalar":
        return PolyScalar.constant(1)

    def is_one(self) -> bool:
        return self.terms == {_ONE_MONOMIAL: 1}

    def invert_constant(self) -> "PolyScalar":
        """Inverse of a nonzero constant polynomial."""
        if not self.is_constant() or self.is_zero():
            raise SeriesError(f"not invertible in the polynomial ring: {self}")
        return PolyScalar.constant(1 / self.constant_term)

    # ---- substitution and evaluation ----

    def substitute(self, **values) -> "PolyScalar":
        """Simultaneously replace variables by polynomials (or numbers)."""
        if not values:
            return self
        replacements = {}
        for name, value in values.items():
            if name not in _POSITION:
                raise KeyError(f"unknown variable: {name}")
            replacements[_POSITION[name]] = PolyScalar.coerce(value)
        power_cache: dict[tuple[int, int], PolyScalar] = {}
        result = PolyScalar._raw({})
        for monomial, value in self.terms.items():
            kept = list(monomial)
            term = PolyScalar.constant(value)
            for pos, replacement in replacements.items():
                exp = monomial[pos]
                if exp:
                    key = (pos, exp)
                    if key not in power_cache:
                        power_cache[key] = replacement ** exp
                    term = term * power_cache[key]
                    kept[pos] = 0
            result = result + term * PolyScalar._raw({tuple(kept): Fraction(1)})
        return result

    def evaluate(self, values: dict) -> Fraction:
        """Exact value at rational sample values; every occurring variable must be given."""
        total = Fraction(0)
        for monomial, value in self.terms.items():
            term = value
            for name, exp in zip(VARIABLES, monomial):
                if exp:
                    if values.get(name) is None:
                        raise MissingSampleError(f"no sample value for variable {name}")
                    term *= Fraction(values[name]) ** exp
            total += term
        return total

    # ---- rendering ----

    @staticmethod
    def monomial_text(monomial: tuple) -> str:
        parts = []
        for name, exp in zip(VARIABLES, monomial):
            if exp == 1:
                parts.append(name)
            elif exp:
                parts.append(f"{name}^{exp}")
        return "*".join(parts)

    @staticmethod
    def monomial_key(monomial: tuple) -> str:
        """Compact exponent key used in JSON, e.g. "x1y0A2B0"."""
        return "".join(f"{name}{exp}" for name, exp in zip(VARIABLES, monomial))

    @staticmethod
    def parse_monomial_key(key: str) -> tuple:
        exponents = []
        rest = key
        for name in VARIABLES:
            if not rest.startswith(name):
                raise ValueError(f"malformed monomial key: {key!r}")
            rest = rest[len(name):]
            digits = ""
            while rest and rest[0].isdigit():
                digits, rest = digits + rest[0], rest[1:]
            exponents.append(int(digits or 0))
        return tuple(exponents)

    def to_json(self) -> list[dict]:
        return [
            {"monomial": self.monomial_key(m), "value": f"{v.numerator}/{v.denominator}"}
            for m, v in self.items()
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "PolyScalar":
        return cls({cls.parse_monomial_key(item["monomial"]): Fraction(item["value"]) for item in data})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for monomial, value in self.items():
            mono = self.monomial_text(monomial)
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"PolyScalar({str(self)!r})"


ZERO = PolyScalar()
ONE = PolyScalar.constant(1)
X = PolyScalar.var("x")
Y = PolyScalar.var("y")
A = PolyScalar.var("A")
B = PolyScalar.var("B")
