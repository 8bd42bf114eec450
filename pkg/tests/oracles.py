"""Independent numeric oracles shared by several test modules.

Each oracle minimizes an objective with a generic scipy optimizer from many
random starts; none of them uses the package's layout code.
"""

from functools import lru_cache
from itertools import combinations

import numpy as np
from scipy.optimize import minimize


def pair_stress(flat, pairs, d, w, k=2):
    X = flat.reshape(-1, k)
    diff = X[pairs[:, 0]] - X[pairs[:, 1]]
    dist = np.sqrt((diff * diff).sum(axis=1))
    return float((w * (dist - d) ** 2).sum())


def pair_stress_grad(flat, pairs, d, w, k=2):
    X = flat.reshape(-1, k)
    diff = X[pairs[:, 0]] - X[pairs[:, 1]]
    dist = np.sqrt((diff * diff).sum(axis=1))
    coef = 2 * w * (dist - d) / np.where(dist > 0, dist, 1.0)
    g = np.zeros_like(X)
    np.add.at(g, pairs[:, 0], coef[:, None] * diff)
    np.add.at(g, pairs[:, 1], -coef[:, None] * diff)
    return g.ravel()


def multistart_minimum(n, pairs, d, w, k=2, restarts=100, seed=0, tol=1e-10):
    rng = np.random.default_rng(seed)
    pairs = np.asarray(pairs)
    best = np.inf
    for _ in range(restarts):
        x0 = rng.random(n * k) * max(1.0, float(np.max(d)))
        res = minimize(pair_stress, x0, args=(pairs, d, w, k), jac=pair_stress_grad,
                       method="BFGS", options={"gtol": tol, "maxiter": 10000})
        best = min(best, res.fun)
    return best


@lru_cache(maxsize=None)
def k4_min_stress():
    """Minimum 2D stress of the unit-distance complete graph on 4 vertices."""
    pairs = np.array(list(combinations(range(4), 2)))
    return multistart_minimum(4, pairs, np.ones(6), np.ones(6))
