"""Type label of the quasi-free representation from the parameter vector.

If ``a = (lam**p_1, ..., lam**p_n)`` with positive integers ``p_i`` of gcd one
the label is III_lambda, else III_1.  Commensurability of real logarithms is
not decidable from floating-point data, so the search is bounded and the
bounds are recorded with every verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, Sequence

from .errors import DomainError

PMAX = 64
QMAX = 10**6
TOL = 1e-9

III_LAMBDA = "III_lambda"
III_ONE = "III_1"


@dataclass(frozen=True)
class TypeClassification:
    kind: str
    lam: float | None
    exponents: tuple[int, ...] | None
    search_bounds: tuple[int, int, float]

    def to_json(self) -> dict:
        pmax, qmax, tol = self.search_bounds
        out: dict = {"kind": self.kind, "bounds": {"pmax": pmax, "qmax": qmax, "tol": tol}}
        if self.kind == III_LAMBDA:
            out["lambda"] = self.lam
            out["exponents"] = list(self.exponents)
        return out


def convergents(x: float, qmax: int) -> Iterator[Fraction]:
    """Continued-fraction convergents of ``x`` with denominator <= ``qmax``."""
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    r = x
    while True:
        a = math.floor(r)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > qmax:
            return
        yield Fraction(h1, k1)
        frac = r - a
        if frac < 1e-15:
            return
        r = 1.0 / frac


def _reconstruct(r: float, qmax: int, tol: float) -> Fraction | None:
    last = None
    for c in convergents(r, qmax):
        last = c
        if abs(r - c) <= tol:
            return c
    return last


def _check_cube(a: Sequence[float]) -> tuple[float, ...]:
    a = tuple(float(v) for v in a)
    if not a:
        raise DomainError("empty parameter vector")
    for i, v in enumerate(a, start=1):
        if not 0.0 < v < 1.0:
            raise DomainError(f"a_{i} = {v} is outside (0, 1)")
    return a


def commensurate_exponents(a, pmax: int = PMAX, qmax: int = QMAX,
                           tol: float = TOL) -> tuple[float, tuple[int, ...]] | None:
    """Find ``(lam, p)`` with ``a_i ~ lam**p_i``, ``gcd(p) == 1``, or ``None``.

    The log-ratios ``ln a_i / ln a_ref`` against the largest coordinate are
    turned into rationals through their continued-fraction convergents, the
    denominators are cleared and the gcd divided out.  The candidate is
    accepted only if every exponent is at most ``pmax`` and
    ``max_i |a_i - lam**p_i| <= tol``.
    """
    a = _check_cube(a)
    ref = max(range(len(a)), key=lambda i: a[i])
    log_ref = math.log(a[ref])
    ratios = []
    for v in a:
        q = _reconstruct(math.log(v) / log_ref, qmax, tol)
        if q is None or q <= 0:
            return None
        ratios.append(q)
    denom = reduce(math.lcm, (q.denominator for q in ratios), 1)
    p = [int(q * denom) for q in ratios]
    g = reduce(math.gcd, p)
    p = tuple(v // g for v in p)
    if max(p) > pmax or min(p) < 1:
        return None
    lam = math.exp(log_ref / p[ref])
    if max(abs(v - lam**e) for v, e in zip(a, p)) > tol:
        return None
    return lam, p


def classify_type(a, pmax: int = PMAX, qmax: int = QMAX, tol: float = TOL) -> TypeClassification:
    """III_lambda when the exponent search succeeds, otherwise III_1 within bounds."""
    found = commensurate_exponents(a, pmax, qmax, tol)
    bounds = (pmax, qmax, tol)
    if found is None:
        return TypeClassification(III_ONE, None, None, bounds)
    lam, p = found
    return TypeClassification(III_LAMBDA, lam, p, bounds)
