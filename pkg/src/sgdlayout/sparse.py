"""Pivot-based sparse stress approximation laid out by SGD.

Only edges and vertex-to-pivot pairs become terms. Each vertex belongs to
the region of its closest pivot; a pivot term ``(i, p)`` stands in for the
pairs between ``i`` and the members of ``R(p)``, so the weight that moves
``i`` is scaled by::

    s_ip = |{j in R(p) : d_jp <= d_ip / 2}|

The pivot itself is not moved by a non-pivot ``i`` (weight 0 on its side).
When both endpoints are pivots the pair is stored once with each side's own
adapted weight.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graph import DisconnectedGraphError, Graph, multi_source_distances, n_components
from .rng import run_streams
from .sgd import LayoutResult, SgdParams, run_sgd
from .stress import TermList, check_alpha


@dataclass(frozen=True)
class PivotSelection:
    pivots: np.ndarray
    min_dist: np.ndarray
    dist: np.ndarray  # (h, n) distances from each pivot


def select_pivots_maxmin_random(g: Graph, h: int, rng: np.random.Generator,
                                weighted: bool | None = None) -> PivotSelection:
    """First pivot uniform; each next one drawn with probability proportional to
    its current distance from the closest chosen pivot."""
    if not 1 <= h <= g.n:
        raise ValueError(f"pivot count must lie in [1, {g.n}], got {h}")
    comps = n_components(g)
    if comps > 1:
        raise DisconnectedGraphError(comps)
    pivots = [int(rng.integers(g.n))]
    rows = [multi_source_distances(g, pivots, weighted)[0]]
    mins = rows[0].copy()
    for _ in range(1, h):
        cum = np.cumsum(mins)
        pick = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
        pick = min(pick, g.n - 1)
        while mins[pick] == 0:  # guard against landing on a flat cumsum step
            pick -= 1
        pivots.append(pick)
        row = multi_source_distances(g, [pick], weighted)[0]
        rows.append(row)
        np.minimum(mins, row, out=mins)
    return PivotSelection(np.array(pivots, dtype=np.intp), mins, np.vstack(rows))


def maxmin_probabilities(min_dist: np.ndarray) -> np.ndarray:
    """Sampling distribution for the next pivot given running minimum distances."""
    total = min_dist.sum()
    return min_dist / total


@dataclass(frozen=True, eq=False)
class PivotModel:
    pivots: np.ndarray
    region: np.ndarray  # pivot vertex id owning each vertex
    dist: np.ndarray  # (h, n)
    shrink: np.ndarray  # (h, n) s_ip
    terms: TermList
    is_edge: np.ndarray  # bool per term

    @property
    def h(self) -> int:
        return len(self.pivots)

    def region_members(self, p: int) -> np.ndarray:
        return np.flatnonzero(self.region == p)


def assign_regions(dist: np.ndarray, pivots: np.ndarray) -> np.ndarray:
    """Closest pivot per vertex; ties go to the pivot selected first."""
    return pivots[np.argmin(dist, axis=0)]


def shrink_counts(dist: np.ndarray, pivots: np.ndarray, region: np.ndarray) -> np.ndarray:
    """``s[a, i]`` for pivot index ``a``: members of ``R(pivots[a])`` within half of ``d(i, p)``."""
    h, n = dist.shape
    s = np.zeros((h, n), dtype=np.int64)
    for a, p in enumerate(pivots):
        member_d = np.sort(dist[a, region == p])
        s[a] = np.searchsorted(member_d, dist[a] / 2.0, side="right")
    return s


def build_pivot_model(g: Graph, pivots, dist: np.ndarray | None = None,
                      alpha: float = 2.0, weighted: bool | None = None) -> PivotModel:
    check_alpha(alpha)
    pivots = np.asarray(pivots, dtype=np.intp)
    if len(np.unique(pivots)) != len(pivots) or pivots.min() < 0 or pivots.max() >= g.n:
        raise ValueError("pivots must be distinct vertex ids")
    if dist is None:
        dist = multi_source_distances(g, pivots, weighted)
    if not np.all(np.isfinite(dist)):
        raise DisconnectedGraphError(n_components(g))
    region = assign_regions(dist, pivots)
    s = shrink_counts(dist, pivots, region)
    pivot_index = np.full(g.n, -1, dtype=np.intp)
    pivot_index[pivots] = np.arange(len(pivots))

    # edges keep their original symmetric weights
    ei, ej, ed = g.edge_u, g.edge_v, g.edge_len
    ew = ed ** -alpha
    parts_i, parts_j, parts_d, parts_wi, parts_wj = [ei], [ej], [ed], [ew], [ew.copy()]

    adjacency = g.to_scipy(weighted=False).tocsr()
    for a, p in enumerate(pivots):
        others = np.ones(g.n, dtype=bool)
        others[p] = False
        others[adjacency.indices[adjacency.indptr[p]:adjacency.indptr[p + 1]]] = False
        # a pivot-pivot pair is emitted only from the earlier-listed pivot
        other_piv = pivot_index >= 0
        others &= ~other_piv | (pivot_index > a)
        i = np.flatnonzero(others)
        d = dist[a, i]
        w = d ** -alpha
        w_i = s[a, i] * w  # moves i
        w_p = np.zeros_like(w)  # moves p
        b = pivot_index[i]
        both = b >= 0
        w_p[both] = s[b[both], p] * w[both]
        lo = np.minimum(i, p)
        swap = i > p
        parts_i.append(lo)
        parts_j.append(np.maximum(i, p))
        parts_d.append(d)
        parts_wi.append(np.where(swap, w_p, w_i))
        parts_wj.append(np.where(swap, w_i, w_p))
    is_edge = np.zeros(sum(len(x) for x in parts_i), dtype=bool)
    is_edge[:g.m] = True
    terms = TermList(np.concatenate(parts_i), np.concatenate(parts_j), np.concatenate(parts_d),
                     np.concatenate(parts_wi), np.concatenate(parts_wj))
    return PivotModel(pivots, region, dist, s, terms, is_edge)


def sparse_objective(X: np.ndarray, model: PivotModel) -> float:
    """Edge terms counted once, pivot terms with both directed weights summed."""
    t = model.terms
    res = np.linalg.norm(X[t.i] - X[t.j], axis=1) - t.d
    sigma = res * res
    w = np.where(model.is_edge, t.w_ij, t.w_ij + t.w_ji)
    return float((w * sigma).sum())


def layout_sparse_sgd(g: Graph, h: int, params: SgdParams = SgdParams(),
                      weighted: bool | None = None,
                      evaluate: Callable[[np.ndarray], float] | None = None,
                      ) -> tuple[LayoutResult, PivotModel]:
    """Pivot selection, model assembly, then SGD over the adapted terms.

    The trace records ``evaluate(X)`` (e.g. exact full stress) when given,
    otherwise the sparse objective.
    """
    start = time.perf_counter()
    streams = run_streams(params.seed)
    sel = select_pivots_maxmin_random(g, h, streams.pivots, weighted)
    model = build_pivot_model(g, sel.pivots, sel.dist, params.alpha, weighted)
    prep = time.perf_counter() - start
    if evaluate is None:
        evaluate = lambda Y: sparse_objective(Y, model)  # noqa: E731
    result = run_sgd(model.terms, g.n, params, evaluate=evaluate)
    result.preprocess_s = prep
    return result, model
