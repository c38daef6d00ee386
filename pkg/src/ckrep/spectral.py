"""0/1 transition matrices, Perron-Frobenius eigenproblems and the set Lambda(A).

``Lambda(A)`` is the set of ``a`` in the open cube ``(0, 1)^n`` for which the
Perron-Frobenius eigenvalue of ``diag(a) A`` equals one.  Points of that set are
returned as :class:`LambdaPoint` objects carrying the normalized eigenvector.

Everything stays exact when the inputs are rationals and a rational eigenvector
exists; otherwise the computation falls back to floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .errors import (
    ConsistencyError,
    ConvergenceError,
    DomainError,
    MalformedInputError,
    NoSolutionError,
    NotInLambdaError,
    PreconditionError,
)
from .scalars import all_exact

EIG_TOL = 1e-12
LAMBDA_TOL = 1e-9
MAX_ITER = 10**6
BRACKET_EPS = 1e-9
RATIONAL_DENOMINATOR_CAP = 10**6


@dataclass(frozen=True)
class ZeroOneMatrix:
    """Square matrix with entries in {0, 1}; rows are stored as tuples."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = self.rows
        n = len(rows)
        if n < 2:
            raise MalformedInputError(f"matrix must be at least 2x2, got {n}x{n}")
        for r, row in enumerate(rows, start=1):
            if len(row) != n:
                raise MalformedInputError(f"row {r} has {len(row)} entries, expected {n}")
            for v in row:
                if type(v) is not int or v not in (0, 1):
                    raise MalformedInputError(f"row {r} has non-bit entry {v!r}")

    @classmethod
    def from_rows(cls, rows) -> "ZeroOneMatrix":
        if isinstance(rows, ZeroOneMatrix):
            return rows
        try:
            return cls(tuple(tuple(_as_int(v) for v in row) for row in rows))
        except TypeError as exc:
            raise MalformedInputError("matrix must be a sequence of rows") from exc

    @classmethod
    def ones(cls, n: int) -> "ZeroOneMatrix":
        return cls(tuple((1,) * n for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def allowed(self, i: int, j: int) -> bool:
        """Transition ``i -> j`` permitted; letters are 1-based."""
        return self.rows[i - 1][j - 1] == 1

    def successors(self, i: int) -> tuple[int, ...]:
        return tuple(j + 1 for j, v in enumerate(self.rows[i - 1]) if v)

    def is_all_ones(self) -> bool:
        return all(all(row) for row in self.rows)

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def __str__(self):
        return "\n".join(" ".join(map(str, row)) for row in self.rows)


def _as_int(v):
    return int(v) if isinstance(v, (bool, int, np.integer, np.bool_)) else v


@dataclass(frozen=True)
class MatrixDiagnostics:
    """Result of :func:`validate_ck_matrix`.

    ``witness`` is 1-based: ``(i, 0)`` for a zero row, ``(0, j)`` for a zero
    column, ``(i, j)`` when ``j`` is unreachable from ``i``.
    """

    nondegenerate: bool
    irreducible: bool
    permutation: bool
    witness: tuple[int, int] | None = None

    @property
    def admissible(self) -> bool:
        return self.nondegenerate and self.irreducible and not self.permutation

    def reason(self) -> str:
        if self.admissible:
            return "admissible"
        if not self.nondegenerate:
            i, j = self.witness
            return f"zero row {i}" if i else f"zero column {j}"
        if not self.irreducible:
            i, j = self.witness
            return f"reducible: state {j} is unreachable from state {i}"
        return "permutation matrix"


def _reachability_witness(pattern: Sequence[Sequence[bool]]) -> tuple[int, int] | None:
    """First (i, j), 1-based, such that no path of length >= 1 leads from i to j."""
    n = len(pattern)
    for i in range(n):
        seen = [False] * n
        stack = [j for j in range(n) if pattern[i][j]]
        for j in stack:
            seen[j] = True
        while stack:
            k = stack.pop()
            for j in range(n):
                if pattern[k][j] and not seen[j]:
                    seen[j] = True
                    stack.append(j)
        for j in range(n):
            if not seen[j]:
                return (i + 1, j + 1)
    return None


def validate_ck_matrix(A) -> MatrixDiagnostics:
    """Classify a bit-matrix candidate against the admissible class.

    Admissible means irreducible, nondegenerate (no zero row or column) and not
    a permutation matrix.  Raises :class:`MalformedInputError` for non-square or
    non-bit input.
    """
    A = ZeroOneMatrix.from_rows(A)
    rows = A.rows
    n = A.n
    witness = None
    for i in range(n):
        if not any(rows[i]):
            witness = (i + 1, 0)
            break
    if witness is None:
        for j in range(n):
            if not any(rows[i][j] for i in range(n)):
                witness = (0, j + 1)
                break
    nondegenerate = witness is None
    reach = _reachability_witness([[bool(v) for v in row] for row in rows])
    irreducible = reach is None
    if witness is None:
        witness = reach
    permutation = all(sum(row) == 1 for row in rows) and all(
        sum(rows[i][j] for i in range(n)) == 1 for j in range(n)
    )
    return MatrixDiagnostics(nondegenerate, irreducible, permutation, witness)


def require_admissible(A) -> ZeroOneMatrix:
    A = ZeroOneMatrix.from_rows(A)
    diag = validate_ck_matrix(A)
    if not diag.admissible:
        raise PreconditionError(f"matrix is not admissible: {diag.reason()}")
    return A


# Perron-Frobenius --------------------------------------------------------

class PFEigen(NamedTuple):
    eigenvalue: object
    eigenvector: tuple


def _nullspace_exact(M: list[list[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right null space of a rational matrix (Gauss-Jordan)."""
    n_rows = len(M)
    n_cols = len(M[0])
    R = [list(row) for row in M]
    pivots: list[int] = []
    r = 0
    for col in range(n_cols):
        piv = next((k for k in range(r, n_rows) if R[k][col] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][col]
        R[r] = [v * inv for v in R[r]]
        for k in range(n_rows):
            if k != r and R[k][col] != 0:
                f = R[k][col]
                R[k] = [vk - f * vr for vk, vr in zip(R[k], R[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * n_cols
        vec[fcol] = Fraction(1)
        for row, pcol in enumerate(pivots):
            vec[pcol] = -R[row][fcol]
        basis.append(vec)
    return basis


def _exact_positive_eigenvector(M: list[list[Fraction]], lam: Fraction) -> tuple[Fraction, ...] | None:
    n = len(M)
    shifted = [[M[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    basis = _nullspace_exact(shifted)
    if len(basis) != 1:
        return None
    vec = basis[0]
    total = sum(vec)
    if total == 0:
        return None
    vec = [v / total for v in vec]
    if any(v <= 0 for v in vec):
        return None
    return tuple(vec)


def _pattern_irreducible(M) -> bool:
    return _reachability_witness([[v != 0 for v in row] for row in M]) is None


def _pf_float(M, tol: float, max_iter: int):
    lam, x, iters, converged = kernels.power_iteration(np.asarray(M, dtype=np.float64), tol, max_iter)
    if not converged:
        raise ConvergenceError(f"power iteration did not converge in {iters} steps",
                               last_iterate=tuple(float(v) for v in x), last_value=float(lam))
    return float(lam), tuple(float(v) for v in x)


def pf_eigen(M, tol: float = EIG_TOL, max_iter: int = MAX_ITER) -> PFEigen:
    """Perron-Frobenius eigenvalue and eigenvector (entries summing to 1).

    Power iteration runs on ``M + I`` so that periodic irreducible matrices
    converge.  For rational ``M`` whose eigen-pair is rational the result is
    exact (``Fraction`` entries); otherwise it is floating point.

    Raises
    ------
    PreconditionError
        ``M`` is not square, has negative entries or is reducible.
    ConvergenceError
        The iteration cap was hit; the last iterate is attached.
    """
    M = [list(row) for row in M]
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        raise PreconditionError("pf_eigen expects a nonempty square matrix")
    if any(v < 0 for row in M for v in row):
        raise PreconditionError("pf_eigen expects a nonnegative matrix")
    if not _pattern_irreducible(M):
        raise PreconditionError("pf_eigen expects an irreducible matrix")
    lam, x = _pf_float([[float(v) for v in row] for row in M], tol, max_iter)
    if all(all_exact(row) for row in M):
        Mq = [[Fraction(v) for v in row] for row in M]
        cand = Fraction(lam).limit_denominator(RATIONAL_DENOMINATOR_CAP)
        vec = _exact_positive_eigenvector(Mq, cand)
        if vec is not None:
            return PFEigen(cand, vec)
    return PFEigen(lam, x)


# Lambda(A) ---------------------------------------------------------------

@dataclass(frozen=True)
class LambdaPoint:
    """A point ``a`` of Lambda(A) with its normalized eigenvector ``x``.

    ``residual`` is ``|PFE(diag(a) A) - 1|``; ``scalar_mode`` is ``"exact"``
    when ``a`` and ``x`` are Fractions satisfying ``diag(a) A x = x`` exactly.
    """

    A: ZeroOneMatrix
    a: tuple
    x: tuple
    residual: object
    scalar_mode: str

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def exact(self) -> bool:
        return self.scalar_mode == "exact"

    def as_float(self) -> "LambdaPoint":
        return LambdaPoint(self.A, tuple(map(float, self.a)), tuple(map(float, self.x)),
                           float(self.residual), "float")


def _check_cube(a, n: int) -> tuple:
    a = tuple(a)
    if len(a) != n:
        raise DomainError(f"parameter vector has length {len(a)}, expected {n}")
    for i, v in enumerate(a, start=1):
        if not 0 < v < 1:
            raise DomainError(f"a_{i} = {v} is outside (0, 1)")
    return a


def _scaled(A: ZeroOneMatrix, a) -> list[list]:
    return [[a[i] * A.rows[i][j] for j in range(A.n)] for i in range(A.n)]


def lambda_residual(A, a, tol: float = EIG_TOL) -> object:
    """Signed ``PFE(diag(a) A) - 1``; exact (a Fraction) when possible."""
    A = require_admissible(A)
    a = _check_cube(a, A.n)
    lam, _ = pf_eigen(_scaled(A, a), tol=tol)
    return lam - 1


def _exact_point(A: ZeroOneMatrix, a) -> LambdaPoint | None:
    if not all_exact(a):
        return None
    aq = tuple(Fraction(v) for v in a)
    vec = _exact_positive_eigenvector(_scaled(A, aq), Fraction(1))
    if vec is None:
        return None
    return LambdaPoint(A, aq, vec, Fraction(0), "exact")


def check_lambda_membership(A, a, tol: float = LAMBDA_TOL) -> LambdaPoint:
    """Accept ``a`` as a point of Lambda(A) or raise :class:`NotInLambdaError`."""
    A = require_admissible(A)
    a = _check_cube(a, A.n)
    point = _exact_point(A, a)
    if point is not None:
        return point
    af = tuple(float(v) for v in a)
    lam, x = _pf_float(_scaled(A, af), EIG_TOL, MAX_ITER)
    residual = lam - 1.0
    if abs(residual) > tol:
        raise NotInLambdaError(residual)
    M = _scaled(A, af)
    err = max(abs(sum(M[i][j] * x[j] for j in range(A.n)) - x[i]) for i in range(A.n))
    if err > tol * max(x):
        raise ConsistencyError(f"eigenvector residual {err:.3e} exceeds tolerance")
    return LambdaPoint(A, af, x, abs(residual), "float")


def solve_last_coordinate(A, a_partial, tol: float = EIG_TOL,
                          lambda_tol: float = LAMBDA_TOL) -> LambdaPoint:
    """Solve PFE(diag(a) A) = 1 for the last coordinate by bisection.

    PFE is strictly increasing in every entry of an irreducible matrix, so the
    root in ``(eps, 1 - eps)`` is unique when PFE - 1 changes sign there.
    Rational inputs yield an exact point when the root is a small-denominator
    rational.
    """
    A = require_admissible(A)
    a_partial = tuple(a_partial)
    if len(a_partial) != A.n - 1:
        raise DomainError(f"expected {A.n - 1} fixed coordinates, got {len(a_partial)}")
    _check_cube(a_partial, A.n - 1)
    fixed = [float(v) for v in a_partial]

    def f(t: float) -> float:
        lam, _ = _pf_float(_scaled(A, fixed + [t]), EIG_TOL * 0.1, MAX_ITER)
        return lam - 1.0

    lo, hi = BRACKET_EPS, 1.0 - BRACKET_EPS
    f_lo, f_hi = f(lo), f(hi)
    if f_lo > 0 or f_hi < 0:
        raise NoSolutionError(
            f"PFE - 1 does not change sign on ({lo}, {hi}): values {f_lo:.3e}, {f_hi:.3e}")
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    if all_exact(a_partial):
        q = Fraction(t).limit_denominator(RATIONAL_DENOMINATOR_CAP)
        if 0 < q < 1:
            point = _exact_point(A, a_partial + (q,))
            if point is not None:
                return point
    return check_lambda_membership(A, fixed + [t], tol=lambda_tol)
