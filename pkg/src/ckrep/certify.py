"""Overlap decay bounds separating the quasi-free representations of two points.

For points ``(a, x)`` and ``(b, y)`` of the same Lambda(A) let
``D_ij = sqrt(a_i b_i A_ij)`` and ``v_j = sqrt(x_j y_j)``.  The numbers
``T_m = 1^T D^(m-1) v`` bound the overlap of the cyclic vectors restricted to
length-``m`` projections, and decay at least like ``c**(m-1)`` with

    c = max_i (D v)_i / v_i,

``a == b`` is the flagged boundary case ``c == 1``, ``T_m == 1``.

Row ``i`` has ratio 1 exactly when ``x_j / y_j`` is constant on the successors
of ``i``.  For an all-ones matrix that forces ``x == y`` and so ``a == b``, but
in general it does not: a row with a single successor always has ratio 1, and
on a bipartite matrix every row can, with ``T_m`` then constant in ``m``.  Such
pairs get an honest "not certified" verdict instead of a bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError, ResourceError
from .scalars import format_scalar, sqrt
from .spectral import LambdaPoint, ZeroOneMatrix

M_TABLE = 20
M_CAP = 10**6
DEGENERATE_TOL = 1e-12
BRUTE_FORCE_WORDS = 2_000_000


@dataclass(frozen=True, eq=False)
class OverlapData:
    A: ZeroOneMatrix
    p_a: LambdaPoint
    p_b: LambdaPoint
    D: tuple            # n x n, entries exact Surds or floats
    v: tuple
    row_ratios: tuple   # (D v)_i / v_i
    c: object
    exact: bool
    degenerate: bool

    @property
    def n(self) -> int:
        return self.A.n

    def D_array(self) -> np.ndarray:
        return np.array([[float(d) for d in row] for row in self.D], dtype=np.float64)

    def v_array(self) -> np.ndarray:
        return np.array([float(t) for t in self.v], dtype=np.float64)

    def to_json(self) -> dict:
        return {"c": format_scalar(self.c), "row_ratios": [float(r) for r in self.row_ratios],
                "exact": self.exact, "degenerate": self.degenerate,
                "D": [[float(d) for d in row] for row in self.D], "v": [float(t) for t in self.v]}


def overlap_data(A, p_a: LambdaPoint, p_b: LambdaPoint) -> OverlapData:
    if p_a.A != p_b.A or (A is not None and p_a.A != A):
        raise DomainError("both points must belong to the same matrix")
    A = p_a.A
    exact = p_a.exact and p_b.exact
    if not exact:
        p_a, p_b = p_a.as_float(), p_b.as_float()
    n = A.n
    if exact:
        D = tuple(tuple(sqrt(p_a.a[i] * p_b.a[i]) if A.rows[i][j] else sqrt(0 * p_a.a[i])
                        for j in range(n)) for i in range(n))
        v = tuple(sqrt(p_a.x[j] * p_b.x[j]) for j in range(n))
    else:
        D = tuple(tuple(math.sqrt(p_a.a[i] * p_b.a[i] * A.rows[i][j]) for j in range(n))
                  for i in range(n))
        v = tuple(math.sqrt(p_a.x[j] * p_b.x[j]) for j in range(n))
    Dv = [sum((D[i][j] * v[j] for j in range(n)), 0 * v[0]) for i in range(n)]
    ratios = tuple(Dv[i] / v[i] for i in range(n))
    c = max(ratios)
    if exact:
        degenerate = p_a.a == p_b.a
    else:
        degenerate = max(abs(u - w) for u, w in zip(p_a.a, p_b.a)) <= DEGENERATE_TOL
    if degenerate:
        c = 1 if exact else 1.0
    return OverlapData(A, p_a, p_b, D, v, ratios, c, exact, degenerate)


def _matvec(D, w):
    n = len(w)
    return tuple(sum((D[i][j] * w[j] for j in range(n) if D[i][j]), 0 * w[0]) for i in range(n))


def t_sequence(data: OverlapData, m_max: int) -> list:
    """``[T_2, ..., T_{m_max}]``; exact Surds in rational mode, floats otherwise."""
    if m_max < 2:
        raise DomainError("m_max must be at least 2")
    if data.degenerate:
        return [1 if data.exact else 1.0] * (m_max - 1)
    if not data.exact:
        return [float(t) for t in kernels.t_sequence(data.D_array(), data.v_array(), m_max)]
    out, w = [], data.v
    for _ in range(2, m_max + 1):
        w = _matvec(data.D, w)
        out.append(sum(w, 0 * w[0]))
    return out


def t_value(data: OverlapData, m: int):
    """Single ``T_m`` by repeated squaring of ``D`` (float) or the exact sequence."""
    if m < 2:
        raise DomainError("m must be at least 2")
    if data.degenerate:
        return 1 if data.exact else 1.0
    if data.exact:
        return t_sequence(data, m)[-1]
    P = np.linalg.matrix_power(data.D_array(), m - 1)
    return float(np.ones(data.n) @ P @ data.v_array())


def brute_force_t(data: OverlapData, m: int):
    """``T_m`` as the explicit sum over all words ``j_1 ... j_m`` (test oracle)."""
    n = data.n
    if n ** m > BRUTE_FORCE_WORDS:
        raise ResourceError(f"{n}^{m} words exceed the brute-force budget")
    if not data.exact:
        return float(kernels.word_sum(data.D_array(), data.v_array(), m))
    D, v = data.D, data.v
    total = 0 * v[0]
    for word in itertools.product(range(n), repeat=m):
        term = v[word[-1]]
        for u, w in zip(word, word[1:]):
            term = term * D[u][w]
            if not term:
                break
        total = total + term
    return total


def overlap_bound(data: OverlapData, m: int):
    """``T_m``; equal to 1 for the degenerate pair."""
    return t_value(data, m)


def conditional_factor(data: OverlapData, i0: int, i0p: int):
    """``q = sqrt(a_i0 b_i0' / (x_i0 y_i0'))`` (1-based indices)."""
    n = data.n
    if not (1 <= i0 <= n and 1 <= i0p <= n):
        raise DomainError(f"indices must lie in 1..{n}")
    pa, pb = data.p_a, data.p_b
    return sqrt(pa.a[i0 - 1] * pb.a[i0p - 1] / (pa.x[i0 - 1] * pb.x[i0p - 1]))


def conditional_overlap_bound(data: OverlapData, i0: int, i0p: int, m: int):
    return conditional_factor(data, i0, i0p) * t_value(data, m)


def guarantee_length(c: float, epsilon: float) -> int | None:
    """Smallest ``m >= 2`` with ``c**(m-1) <= epsilon``, or None when ``c >= 1``."""
    if c >= 1:
        return None
    if epsilon >= 1:
        return 2
    m = max(2, math.ceil(1 + math.log(epsilon) / math.log(c)))
    # guard against rounding in the logarithms
    while m > 2 and c ** (m - 2) <= epsilon:
        m -= 1
    while c ** (m - 1) > epsilon:
        m += 1
    return m


@dataclass
class Certificate:
    data: OverlapData
    epsilon: float
    bound_values: list
    m_star: int | None
    m_guarantee: int | None
    m_cap: int
    verdict: str
    extra: dict = field(default_factory=dict)

    @property
    def c(self):
        return self.data.c

    @property
    def certified(self) -> bool:
        """True when some computed or guaranteed ``T_m`` is below epsilon."""
        return not self.data.degenerate and (self.m_star is not None or self.m_guarantee is not None)

    def to_json(self) -> dict:
        return {"c": float(self.c), "c_exact": format_scalar(self.c).get("exact"),
                "T": [float(t) for t in self.bound_values], "m_star": self.m_star,
                "m_guarantee": self.m_guarantee, "guarantee_bound":
                    None if self.m_guarantee is None else float(self.c) ** (self.m_guarantee - 1),
                "epsilon": self.epsilon, "m_cap": self.m_cap,
                "degenerate": self.data.degenerate, "certified": self.certified,
                "verdict": self.verdict}


def inequivalence_certificate(A, p_a: LambdaPoint, p_b: LambdaPoint, epsilon: float = 1e-6,
                              m_table: int = M_TABLE, m_cap: int = M_CAP) -> Certificate:
    """Tabulate ``T_2..T_{m_table}`` and locate the first ``m`` with ``T_m <= epsilon``.

    ``m_star`` is searched in floating point up to ``m_cap``; ``m_guarantee``
    is the length from which the geometric bound ``c**(m-1)`` alone suffices.
    """
    if not 0 < epsilon < 1:
        raise DomainError("epsilon must lie in (0, 1)")
    data = overlap_data(A, p_a, p_b)
    table = t_sequence(data, max(m_table, 2))
    if data.degenerate:
        return Certificate(data, epsilon, table, None, None, m_cap,
                           "identical parameters; the two representations are equivalent")
    c = float(data.c)
    m_star = next((m for m, t in enumerate(table, start=2) if float(t) <= epsilon), None)
    if m_star is None:
        found = kernels.first_below(data.D_array(), data.v_array(), epsilon, m_cap)
        m_star = None if found < 0 else int(found)
    m_g = guarantee_length(c, epsilon)
    if m_star is not None and m_g is not None:
        verdict = (f"distinct parameters: T_m <= {epsilon:g} from m = {m_star}; "
                   f"c = {c:.12g} < 1 guarantees c^(m-1) <= {epsilon:g} for m >= {m_g}")
    elif m_g is not None:
        verdict = (f"distinct parameters: c = {c:.12g} < 1; T_m not yet below {epsilon:g} "
                   f"by m = {m_cap}, geometric bound reaches it at m = {m_g}")
    elif m_star is not None:
        verdict = (f"distinct parameters: c = 1 gives no geometric rate, but T_m <= {epsilon:g} "
                   f"from m = {m_star}")
    else:
        verdict = (f"not certified: c = 1 and T_m stays above {epsilon:g} up to m = {m_cap}")
    return Certificate(data, epsilon, table, m_star, m_g, m_cap, verdict)
