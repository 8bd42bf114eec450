"""Pure-Python fallback for the compiled kernels in ``_ckernels.pyx``.

Same signatures, same arithmetic in the same order. Slow; used when the
extension is not built or when ``SGDLAYOUT_PURE_PYTHON=1``.
"""

from __future__ import annotations

import math

import numpy as np

from .rng import unit_direction

DEGENERATE_EPS = 1e-9


def sgd_iteration(X, I, J, D, WI, WJ, order, eta, state):
    k = X.shape[1]
    pos = X.tolist()
    I = I.tolist()
    J = J.tolist()
    D = D.tolist()
    WI = WI.tolist()
    WJ = WJ.tolist()
    max_move = 0.0
    for t in order.tolist():
        xi = pos[I[t]]
        xj = pos[J[t]]
        diff = [xi[c] - xj[c] for c in range(k)]
        norm = 0.0
        for c in range(k):
            norm += diff[c] * diff[c]
        norm = math.sqrt(norm)
        if norm < DEGENERATE_EPS:
            diff = unit_direction(state, k)
        else:
            diff = [v / norm for v in diff]
        coef = (norm - D[t]) / 2.0
        mu_i = WI[t] * eta
        if mu_i > 1.0:
            mu_i = 1.0
        mu_j = WJ[t] * eta
        if mu_j > 1.0:
            mu_j = 1.0
        for c in range(k):
            xi[c] = xi[c] - mu_i * (coef * diff[c])
            xj[c] = xj[c] + mu_j * (coef * diff[c])
        move = (mu_i if mu_i > mu_j else mu_j) * abs(coef)
        if move > max_move:
            max_move = move
    X[:] = np.asarray(pos, dtype=np.float64).reshape(X.shape)
    return max_move


def term_stress(X, I, J, D, W):
    k = X.shape[1]
    pos = X.tolist()
    total = 0.0
    pinned = 0.0
    for i, j, d, w in zip(I.tolist(), J.tolist(), D.tolist(), W.tolist()):
        xi = pos[i]
        xj = pos[j]
        norm = 0.0
        for c in range(k):
            diff = xi[c] - xj[c]
            norm += diff * diff
        res = math.sqrt(norm) - d
        if w == math.inf:
            pinned += res * res
        else:
            total += w * res * res
    return total, pinned


def condensed_stress(X, dist, alpha):
    n, k = X.shape
    pos = X.tolist()
    dist = dist.tolist()
    total = 0.0
    t = 0
    for i in range(n):
        xi = pos[i]
        for j in range(i + 1, n):
            d = dist[t]
            t += 1
            xj = pos[j]
            norm = 0.0
            for c in range(k):
                diff = xi[c] - xj[c]
                norm += diff * diff
            res = math.sqrt(norm) - d
            total += d ** (-alpha) * res * res
    return total


def majorize_sweep(X, indptr, nbr, ND, NW, state):
    n, k = X.shape
    pos = X.tolist()
    indptr = indptr.tolist()
    nbr = nbr.tolist()
    ND = ND.tolist()
    NW = NW.tolist()
    for i in range(n):
        xi = pos[i]
        den = 0.0
        num = [0.0] * k
        for e in range(indptr[i], indptr[i + 1]):
            xj = pos[nbr[e]]
            w = NW[e]
            diff = [xi[c] - xj[c] for c in range(k)]
            norm = 0.0
            for c in range(k):
                norm += diff[c] * diff[c]
            norm = math.sqrt(norm)
            if norm < DEGENERATE_EPS:
                diff = unit_direction(state, k)
            else:
                diff = [v / norm for v in diff]
            for c in range(k):
                num[c] += w * (xj[c] + ND[e] * diff[c])
            den += w
        if den > 0.0:
            for c in range(k):
                xi[c] = num[c] / den
    X[:] = np.asarray(pos, dtype=np.float64).reshape(X.shape)
