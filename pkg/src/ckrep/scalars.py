"""Scalar helpers and an exact number type for square roots of rationals.

Operators built from a parameter vector ``a`` carry amplitude factors
``a_i ** (+-1/2)``.  To keep every identity checkable with zero tolerance we
represent such numbers exactly as finite sums ``sum_k c_k * sqrt(k)`` with
rational ``c_k`` and distinct square-free integers ``k``.  Square roots of
distinct square-free integers are linearly independent over Q, so this
representation is canonical and equality is structural.

Floating inputs never enter a :class:`Surd`; mixing one with a float yields a
float.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable

_SMALL_PRIMES: list[int] = []


def _primes_below(limit: int) -> list[int]:
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def split_square(n: int) -> tuple[int, int]:
    """Return ``(s, k)`` with ``n == s*s*k`` and ``k`` square-free."""
    if n <= 0:
        raise ValueError("split_square expects a positive integer")
    global _SMALL_PRIMES
    if not _SMALL_PRIMES:
        _SMALL_PRIMES = _primes_below(1000)
    s, k = 1, 1
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            s *= p ** (e // 2)
            if e % 2:
                k *= p
    if n == 1:
        return s, k
    r = math.isqrt(n)
    if r * r == n:
        return s * r, k
    if n < 1000**3:
        # every prime factor left exceeds 1000, so at most two remain
        return s, k * n
    from sympy import factorint  # large remainders only

    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            k *= p
    return s, k


class Surd:
    """Exact element of Q(sqrt(2), sqrt(3), sqrt(5), ...)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self._terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def rational(cls, q) -> "Surd":
        return cls({1: Fraction(q)})

    @classmethod
    def sqrt(cls, q) -> "Surd":
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls()
        s, k = split_square(q.numerator * q.denominator)
        return cls({k: Fraction(s, q.denominator)})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def to_rational(self) -> Fraction | None:
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and 1 in self._terms:
            return self._terms[1]
        return None

    def is_single_term(self) -> bool:
        return len(self._terms) == 1

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Surd):
            return other
        if isinstance(other, Rational):
            return Surd.rational(other)
        return None

    def __add__(self, other):
        o = Surd._coerce(other)
        if o is None:
            return float(self) + other if isinstance(other, (float, complex)) else NotImplemented
        terms = dict(self._terms)
        for k, c in o._terms.items():
            terms[k] = terms.get(k, 0) + c
        return Surd(terms)

    __radd__ = __add__

    def __neg__(self):
        return Surd({k: -c for k, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = Surd._coerce(other)
        if o is None:
            return float(self) - other if isinstance(other, (float, complex)) else NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            other = Fraction(other)
            return Surd({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, Surd):
            return float(self) * other if isinstance(other, (float, complex)) else NotImplemented
        terms: dict[int, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                g = math.gcd(k1, k2)
                k = (k1 // g) * (k2 // g)
                terms[k] = terms.get(k, 0) + c1 * c2 * g
        return Surd(terms)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        if not self._terms:
            raise ZeroDivisionError("Surd division by zero")
        if len(self._terms) != 1:
            raise ValueError("only single-term surds are inverted exactly")
        (k, c), = self._terms.items()
        return Surd({k: 1 / (c * k)})

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (1 / Fraction(other))
        if isinstance(other, Surd):
            return self * other.inverse()
        if isinstance(other, (float, complex)):
            return float(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rational):
            return self.inverse() * Fraction(other)
        if isinstance(other, (float, complex)):
            return other / float(self)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return float(self) ** e
        base = self if e >= 0 else self.inverse()
        out = Surd.rational(1)
        for _ in range(abs(e)):
            out = out * base
        return out

    # comparison ---------------------------------------------------------
    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        o = Surd._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return float(self) == other
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        q = self.to_rational()
        if q is not None:
            return hash(q)
        return hash(frozenset(self._terms.items()))

    def sign(self) -> int:
        if not self._terms:
            return 0
        approx = float(self)
        scale = math.fsum(abs(float(c)) * math.sqrt(k) for k, c in self._terms.items())
        if abs(approx) > 1e-9 * scale:
            return 1 if approx > 0 else -1
        import mpmath

        with mpmath.workdps(80):
            v = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * mpmath.sqrt(k)
                            for k, c in self._terms.items())
        return 1 if v > 0 else -1

    def _cmp(self, other) -> int:
        o = Surd._coerce(other)
        if o is None:
            f = float(self)
            return (f > other) - (f < other)
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # conversions --------------------------------------------------------
    def __float__(self):
        return math.fsum(c.numerator / c.denominator * math.sqrt(k) for k, c in self._terms.items())

    def __complex__(self):
        return complex(float(self))

    def conjugate(self):
        return self

    @property
    def real(self):
        return self

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms):
            c = self._terms[k]
            parts.append(str(c) if k == 1 else (f"sqrt({k})" if c == 1 else f"{c}*sqrt({k})"))
        return " + ".join(parts).replace("+ -", "- ")


# generic helpers ---------------------------------------------------------

def is_exact(value) -> bool:
    return isinstance(value, (Rational, Surd)) and not isinstance(value, bool)


def all_exact(values: Iterable) -> bool:
    return all(is_exact(v) for v in values)


def sqrt(value):
    """Square root that stays exact on rationals and surds of rationals."""
    if isinstance(value, Rational):
        return Surd.sqrt(value)
    if isinstance(value, Surd):
        q = value.to_rational()
        if q is None:
            raise ValueError("square root of an irrational surd is not exact")
        return Surd.sqrt(q)
    return math.sqrt(value)


def simplify(value):
    """Collapse a rational-valued Surd to a Fraction; leave everything else."""
    if isinstance(value, Surd):
        q = value.to_rational()
        return value if q is None else q
    return value


def conj(value):
    return value.conjugate()


def to_float(value) -> float:
    return float(value)


def parse_scalar(text: str, exact: bool = True):
    """Parse ``"3"``, ``"0.25"`` or ``"p/q"``; decimals are exact when asked."""
    text = text.strip()
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a number: {text!r}") from exc
    return q if exact else float(q)


def format_scalar(value) -> dict:
    """JSON-friendly rendering: always a float, plus the exact form if any."""
    value = simplify(value)
    if isinstance(value, complex):
        return {"value": [value.real, value.imag]}
    out: dict = {"value": float(value)}
    if isinstance(value, (Rational, Surd)):
        out["exact"] = str(value)
    return out
