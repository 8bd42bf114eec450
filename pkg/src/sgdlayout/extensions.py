"""Focus constraints and colour embeddings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DistanceTable, Graph
from .sgd import LayoutResult, SgdParams, run_sgd
from .stress import TermList, check_alpha


def apply_focus(terms: TermList, focus: int) -> TermList:
    """Infinite weight on both sides of every term touching ``focus``."""
    hit = (terms.i == focus) | (terms.j == focus)
    w_ij = np.where(hit, np.inf, terms.w_ij)
    w_ji = np.where(hit, np.inf, terms.w_ji)
    return terms.with_weights(w_ij, w_ji)


def jaccard_distances(g: Graph) -> DistanceTable:
    """``1 - |N(i) & N(j)| / |N(i) | N(j)|`` for all pairs; 1 when both neighbourhoods are empty."""
    A = g.to_scipy(weighted=False)
    A.data[:] = 1.0
    inter = (A @ A.T).toarray()
    deg = np.asarray(A.sum(axis=1)).ravel()
    i, j = np.triu_indices(g.n, k=1)
    common = inter[i, j]
    union = deg[i] + deg[j] - common
    with np.errstate(invalid="ignore", divide="ignore"):
        d = np.where(union > 0, 1.0 - common / np.where(union > 0, union, 1.0), 1.0)
    return DistanceTable(g.n, d)


@dataclass(frozen=True)
class ColorEmbedding:
    rgb: np.ndarray  # (n, 3) in [0, 1]

    def hex(self) -> list[str]:
        levels = np.clip(np.rint(self.rgb * 255), 0, 255).astype(int)
        return ["#%02x%02x%02x" % tuple(row) for row in levels]


def dissimilarity_terms(dists: DistanceTable, alpha: float = 2.0) -> TermList:
    """Terms for an arbitrary dissimilarity table; zero-distance pairs become
    infinite-weight constraints that pull the two vertices together."""
    check_alpha(alpha)
    i, j = dists.pairs()
    d = np.asarray(dists.values, dtype=np.float64)
    with np.errstate(divide="ignore"):
        w = np.where(d > 0, d ** -alpha, np.inf)
    return TermList(i, j, d, w, w.copy())


def minmax_unit(X: np.ndarray) -> np.ndarray:
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo
    out = np.full_like(X, 0.5)
    ok = span > 0
    out[:, ok] = (X[:, ok] - lo[ok]) / span[ok]
    return np.clip(out, 0.0, 1.0)


def embed_rgb(g: Graph, params: SgdParams = SgdParams()) -> tuple[ColorEmbedding, LayoutResult]:
    """Embed Jaccard dissimilarities in 3D and scale each axis onto ``[0, 1]``."""
    terms = dissimilarity_terms(jaccard_distances(g), params.alpha)
    if len(terms.finite_weights()) == 0:
        result = LayoutResult(np.zeros((g.n, 3)))
        return ColorEmbedding(np.full((g.n, 3), 0.5)), result
    p = SgdParams(**{**params.__dict__, "dim": 3})
    result = run_sgd(terms, g.n, p)
    return ColorEmbedding(minmax_unit(result.X)), result
