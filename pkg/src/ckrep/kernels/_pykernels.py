"""Pure-Python/numpy implementations of the floating-point hot loops.

Same contracts as the compiled ``_ckernels`` module; used when the extension is
not built or ``CKREP_PURE_PYTHON`` is set.
"""

from __future__ import annotations

import itertools

import numpy as np


def power_iteration(M, tol: float, max_iter: int):
    """Power iteration on ``M + I`` for a nonnegative irreducible ``M``.

    Stops when the Collatz-Wielandt bracket ``[min (Bx)_i/x_i, max (Bx)_i/x_i]``
    of ``B = M + I`` is narrower than ``tol`` times its upper end.

    Returns ``(eigenvalue, x, iterations, converged)`` with ``sum(x) == 1``.
    """
    M = np.asarray(M, dtype=np.float64)
    n = M.shape[0]
    B = M + np.eye(n)
    x = np.full(n, 1.0 / n)
    lo = hi = 0.0
    for it in range(1, max_iter + 1):
        y = B @ x
        ratios = y / x
        lo, hi = ratios.min(), ratios.max()
        x = y / y.sum()
        if hi - lo <= tol * hi:
            return 0.5 * (lo + hi) - 1.0, x, it, True
    return 0.5 * (lo + hi) - 1.0, x, max_iter, False


def t_sequence(D, v, m_max: int):
    """``[1^T D^(m-1) v for m in 2..m_max]``."""
    D = np.asarray(D, dtype=np.float64)
    w = np.asarray(v, dtype=np.float64)
    out = np.empty(max(m_max - 1, 0))
    for k in range(out.size):
        w = D @ w
        out[k] = w.sum()
    return out


def first_below(D, v, eps: float, m_cap: int) -> int:
    """Smallest ``m >= 2`` with ``1^T D^(m-1) v <= eps``, or -1 up to ``m_cap``."""
    D = np.asarray(D, dtype=np.float64)
    w = np.asarray(v, dtype=np.float64)
    for m in range(2, m_cap + 1):
        w = D @ w
        if w.sum() <= eps:
            return m
    return -1


def word_sum(D, v, m: int) -> float:
    """Brute-force ``sum over words j_1..j_m of D[j1,j2]...D[j_{m-1},j_m] v[j_m]``."""
    D = np.asarray(D, dtype=np.float64).tolist()
    v = list(np.asarray(v, dtype=np.float64))
    n = len(v)
    total = 0.0
    for word in itertools.product(range(n), repeat=m):
        p = v[word[-1]]
        for a, b in zip(word, word[1:]):
            p *= D[a][b]
            if p == 0.0:
                break
        total += p
    return total
