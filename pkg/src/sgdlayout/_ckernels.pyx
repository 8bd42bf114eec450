# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Must stay operation-for-operation identical to
``_pykernels`` so both backends produce the same floating point results."""

from libc.math cimport sqrt, fabs
from libc.stdint cimport uint64_t

cdef double DEGENERATE_EPS = 1e-9


cdef inline uint64_t _splitmix(uint64_t* s) noexcept nogil:
    cdef uint64_t z
    s[0] = s[0] + <uint64_t>0x9E3779B97F4A7C15
    z = s[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline void _unit_direction(uint64_t* s, double* out, Py_ssize_t k) noexcept nogil:
    cdef Py_ssize_t c
    cdef double norm2, norm
    while True:
        for c in range(k):
            out[c] = <double>(_splitmix(s) >> 11) * (1.0 / 9007199254740992.0) * 2.0 - 1.0
        norm2 = 0.0
        for c in range(k):
            norm2 += out[c] * out[c]
        if 1e-12 < norm2 <= 1.0:
            break
    norm = sqrt(norm2)
    for c in range(k):
        out[c] = out[c] / norm


def sgd_iteration(double[:, ::1] X, const Py_ssize_t[::1] I, const Py_ssize_t[::1] J,
                  const double[::1] D, const double[::1] WI, const double[::1] WJ,
                  const Py_ssize_t[::1] order, double eta, uint64_t[::1] state):
    """One pass of capped-step updates over ``order``; returns the largest single move."""
    cdef Py_ssize_t k = X.shape[1]
    cdef Py_ssize_t idx, t, i, j, c
    cdef Py_ssize_t m = order.shape[0]
    cdef double norm, coef, mu_i, mu_j, move, max_move = 0.0
    cdef double diff[16]
    cdef uint64_t s = state[0]
    if k > 16:
        raise ValueError("at most 16 output dimensions supported")
    with nogil:
        for idx in range(m):
            t = order[idx]
            i = I[t]
            j = J[t]
            norm = 0.0
            for c in range(k):
                diff[c] = X[i, c] - X[j, c]
                norm += diff[c] * diff[c]
            norm = sqrt(norm)
            if norm < DEGENERATE_EPS:
                _unit_direction(&s, diff, k)
            else:
                for c in range(k):
                    diff[c] = diff[c] / norm
            coef = (norm - D[t]) / 2.0
            mu_i = WI[t] * eta
            if mu_i > 1.0:
                mu_i = 1.0
            mu_j = WJ[t] * eta
            if mu_j > 1.0:
                mu_j = 1.0
            for c in range(k):
                X[i, c] = X[i, c] - mu_i * (coef * diff[c])
                X[j, c] = X[j, c] + mu_j * (coef * diff[c])
            move = (mu_i if mu_i > mu_j else mu_j) * fabs(coef)
            if move > max_move:
                max_move = move
    state[0] = s
    return max_move


def term_stress(const double[:, ::1] X, const Py_ssize_t[::1] I, const Py_ssize_t[::1] J,
                const double[::1] D, const double[::1] W):
    """Return ``(finite-weight stress, squared residual of infinite-weight terms)``."""
    cdef Py_ssize_t k = X.shape[1]
    cdef Py_ssize_t t, c, i, j
    cdef Py_ssize_t m = I.shape[0]
    cdef double norm, diff, res, total = 0.0, pinned = 0.0
    cdef double inf = float("inf")
    with nogil:
        for t in range(m):
            i = I[t]
            j = J[t]
            norm = 0.0
            for c in range(k):
                diff = X[i, c] - X[j, c]
                norm += diff * diff
            res = sqrt(norm) - D[t]
            if W[t] == inf:
                pinned += res * res
            else:
                total += W[t] * res * res
    return total, pinned


def condensed_stress(const double[:, ::1] X, const double[::1] dist, double alpha):
    """Full stress over all ``i < j`` with ``w = d**-alpha``, distances in condensed order."""
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t k = X.shape[1]
    cdef Py_ssize_t i, j, c, t = 0
    cdef double norm, diff, res, d, total = 0.0
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                d = dist[t]
                t += 1
                norm = 0.0
                for c in range(k):
                    diff = X[i, c] - X[j, c]
                    norm += diff * diff
                res = sqrt(norm) - d
                total += d ** (-alpha) * res * res
    return total


def majorize_sweep(double[:, ::1] X, const Py_ssize_t[::1] indptr, const Py_ssize_t[::1] nbr,
                   const double[::1] ND, const double[::1] NW, uint64_t[::1] state):
    """Gauss-Seidel sweep of per-vertex majorization updates in ascending vertex order."""
    cdef Py_ssize_t n = X.shape[0]
    cdef Py_ssize_t k = X.shape[1]
    cdef Py_ssize_t i, j, e, c
    cdef double norm, w, den
    cdef double diff[16]
    cdef double num[16]
    cdef uint64_t s = state[0]
    if k > 16:
        raise ValueError("at most 16 output dimensions supported")
    with nogil:
        for i in range(n):
            den = 0.0
            for c in range(k):
                num[c] = 0.0
            for e in range(indptr[i], indptr[i + 1]):
                j = nbr[e]
                w = NW[e]
                norm = 0.0
                for c in range(k):
                    diff[c] = X[i, c] - X[j, c]
                    norm += diff[c] * diff[c]
                norm = sqrt(norm)
                if norm < DEGENERATE_EPS:
                    _unit_direction(&s, diff, k)
                else:
                    for c in range(k):
                        diff[c] = diff[c] / norm
                for c in range(k):
                    num[c] += w * (X[j, c] + ND[e] * diff[c])
                den += w
            if den > 0.0:
                for c in range(k):
                    X[i, c] = num[c] / den
    state[0] = s
