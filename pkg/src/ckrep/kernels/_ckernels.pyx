# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled floating-point hot loops; contracts match ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()


def power_iteration(M, double tol, long max_iter):
    cdef double[:, ::1] A = np.ascontiguousarray(M, dtype=np.float64)
    cdef Py_ssize_t n = A.shape[0], i, j
    cdef long it
    cdef double[::1] x = np.full(n, 1.0 / n)
    cdef double[::1] y = np.empty(n)
    cdef double s, r, lo = 0.0, hi = 0.0
    for it in range(1, max_iter + 1):
        s = 0.0
        lo = 1e308
        hi = -1e308
        for i in range(n):
            r = x[i]
            for j in range(n):
                r += A[i, j] * x[j]
            y[i] = r
            s += r
            r = r / x[i]
            if r < lo:
                lo = r
            if r > hi:
                hi = r
        for i in range(n):
            x[i] = y[i] / s
        if hi - lo <= tol * hi:
            return 0.5 * (lo + hi) - 1.0, np.asarray(x).copy(), it, True
    return 0.5 * (lo + hi) - 1.0, np.asarray(x).copy(), max_iter, False


cdef void _matvec(double[:, ::1] D, double[::1] w, double[::1] tmp) noexcept nogil:
    cdef Py_ssize_t n = D.shape[0], i, j
    cdef double r
    for i in range(n):
        r = 0.0
        for j in range(n):
            r += D[i, j] * w[j]
        tmp[i] = r
    for i in range(n):
        w[i] = tmp[i]


def t_sequence(D, v, long m_max):
    cdef double[:, ::1] Dm = np.ascontiguousarray(D, dtype=np.float64)
    cdef double[::1] w = np.array(v, dtype=np.float64)
    cdef Py_ssize_t n = w.shape[0], i
    cdef double[::1] tmp = np.empty(n)
    cdef long k, count = max(m_max - 1, 0)
    out = np.empty(count)
    cdef double[::1] o = out
    cdef double s
    for k in range(count):
        _matvec(Dm, w, tmp)
        s = 0.0
        for i in range(n):
            s += w[i]
        o[k] = s
    return out


def first_below(D, v, double eps, long m_cap):
    cdef double[:, ::1] Dm = np.ascontiguousarray(D, dtype=np.float64)
    cdef double[::1] w = np.array(v, dtype=np.float64)
    cdef Py_ssize_t n = w.shape[0], i
    cdef double[::1] tmp = np.empty(n)
    cdef long m
    cdef double s
    for m in range(2, m_cap + 1):
        _matvec(Dm, w, tmp)
        s = 0.0
        for i in range(n):
            s += w[i]
        if s <= eps:
            return m
    return -1


def word_sum(D, v, int m):
    cdef double[:, ::1] Dm = np.ascontiguousarray(D, dtype=np.float64)
    cdef double[::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef int n = vv.shape[0], k, pos
    cdef int *word = <int *> malloc(m * sizeof(int))
    cdef double *prefix = <double *> malloc(m * sizeof(double))
    cdef double total = 0.0
    if word == NULL or prefix == NULL:
        free(word)
        free(prefix)
        raise MemoryError()
    # odometer over n**m words; prefix[k] = D[w0,w1]...D[w_{k-1},w_k]
    for k in range(m):
        word[k] = 0
    prefix[0] = 1.0
    for k in range(1, m):
        prefix[k] = prefix[k - 1] * Dm[0, 0]
    while True:
        total += prefix[m - 1] * vv[word[m - 1]]
        pos = m - 1
        while pos >= 0 and word[pos] == n - 1:
            pos -= 1
        if pos < 0:
            break
        word[pos] += 1
        for k in range(pos + 1, m):
            word[k] = 0
        if pos == 0:
            prefix[0] = 1.0
        else:
            prefix[pos] = prefix[pos - 1] * Dm[word[pos - 1], word[pos]]
        for k in range(max(pos, 0) + 1, m):
            prefix[k] = prefix[k - 1] * Dm[word[k - 1], word[k]]
    free(word)
    free(prefix)
    return total
