"""Full-stress evaluation of finished layouts, exact or sampled."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import DistanceTable, Graph, all_pairs, multi_source_distances
from .stress import full_stress

EXACT_MAX_N = 5000
SAMPLE_PAIRS = 10**6


class ExactStress:
    exact = True

    def __init__(self, dists: DistanceTable, alpha: float = 2.0, backend: str | None = None):
        self.dists = dists
        self.alpha = alpha
        self.backend = backend

    def __call__(self, X: np.ndarray) -> float:
        return full_stress(X, self.dists, self.alpha, self.backend)

    def interval(self, X: np.ndarray) -> tuple[float, float, float]:
        s = self(X)
        return s, s, s


@dataclass
class SampledStress:
    """Stress estimated from vertex pairs grouped by randomly chosen source vertices.

    Every unordered pair is equally likely, so ``n(n-1)/2`` times the mean
    sampled term is unbiased; the 95% interval uses the spread of the
    per-source means.
    """

    n: int
    i: np.ndarray
    j: np.ndarray
    d: np.ndarray
    w: np.ndarray
    source_slot: np.ndarray
    n_sources: int
    exact = False

    def _terms(self, X: np.ndarray) -> np.ndarray:
        res = np.linalg.norm(X[self.i] - X[self.j], axis=1) - self.d
        return self.w * res * res

    def interval(self, X: np.ndarray) -> tuple[float, float, float]:
        vals = self._terms(X)
        per_source = np.bincount(self.source_slot, weights=vals, minlength=self.n_sources)
        per_source /= np.bincount(self.source_slot, minlength=self.n_sources)
        total_pairs = self.n * (self.n - 1) / 2
        est = float(per_source.mean()) * total_pairs
        if self.n_sources > 1:
            half = 1.96 * float(per_source.std(ddof=1)) / math.sqrt(self.n_sources) * total_pairs
        else:
            half = math.inf
        return est, est - half, est + half

    def __call__(self, X: np.ndarray) -> float:
        return self.interval(X)[0]


def sampled_stress(g: Graph, n_pairs: int, rng: np.random.Generator, alpha: float = 2.0,
                   weighted: bool | None = None) -> SampledStress:
    n = g.n
    n_sources = min(n, max(2, int(math.isqrt(n_pairs))))
    per = max(1, n_pairs // n_sources)
    sources = rng.choice(n, size=n_sources, replace=False)
    targets = rng.integers(0, n - 1, size=(n_sources, per))
    targets += targets >= sources[:, None]
    d = np.empty((n_sources, per))
    for start in range(0, n_sources, 64):
        stop = min(start + 64, n_sources)
        rows = multi_source_distances(g, sources[start:stop], weighted)
        d[start:stop] = np.take_along_axis(rows, targets[start:stop], axis=1)
    slot = np.repeat(np.arange(n_sources), per)
    i = np.repeat(sources, per)
    j = targets.ravel()
    d = d.ravel()
    if not np.all(np.isfinite(d)):
        raise ValueError("sampled pairs include disconnected vertices")
    return SampledStress(n, i, j, d, d ** -alpha, slot, n_sources)


def stress_evaluator(g: Graph, alpha: float = 2.0, weighted: bool | None = None,
                     dists: DistanceTable | None = None, exact_max_n: int = EXACT_MAX_N,
                     n_pairs: int = SAMPLE_PAIRS, seed: int = 0):
    """Exact evaluator when ``g.n <= exact_max_n``, sampled otherwise."""
    if g.n <= exact_max_n:
        return ExactStress(dists if dists is not None else all_pairs(g, weighted), alpha)
    return sampled_stress(g, n_pairs, np.random.default_rng(seed), alpha, weighted)
