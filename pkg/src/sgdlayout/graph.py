"""Undirected graphs, shortest paths and connected components."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph


class GraphError(ValueError):
    """Structural problem with a graph (bad vertex ids, non-positive lengths...)."""


class DisconnectedGraphError(GraphError):
    def __init__(self, n_components: int):
        super().__init__(
            f"graph is disconnected ({n_components} connected components); "
            "use the largest component instead"
        )
        self.n_components = n_components


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph stored as a symmetric CSR adjacency.

    Build with :meth:`from_edges`; the constructor expects already-validated
    arrays. ``edges`` holds each undirected edge once with ``u < v``.
    """

    n: int
    edge_u: np.ndarray
    edge_v: np.ndarray
    edge_len: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    lengths: np.ndarray
    _unit: bool = field(default=True, repr=False)

    @classmethod
    def from_edges(cls, n: int, edges, lengths=None) -> "Graph":
        """Build a graph from ``(u, v)`` pairs.

        Self-loops are dropped and duplicate undirected edges merged, keeping
        the first occurrence's length.
        """
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        e = np.asarray(edges, dtype=np.intp).reshape(-1, 2)
        if lengths is None:
            ln = np.ones(len(e))
        else:
            ln = np.asarray(lengths, dtype=np.float64).reshape(-1)
            if len(ln) != len(e):
                raise GraphError("one length per edge required")
        if len(e) and (e.min() < 0 or e.max() >= n):
            raise GraphError(f"vertex ids must lie in [0, {n})")
        if np.any(~np.isfinite(ln)) or np.any(ln <= 0):
            raise GraphError("edge lengths must be finite and positive")
        keep = e[:, 0] != e[:, 1]
        e, ln = e[keep], ln[keep]
        u = np.minimum(e[:, 0], e[:, 1])
        v = np.maximum(e[:, 0], e[:, 1])
        # first occurrence wins
        _, first = np.unique(u * max(n, 1) + v, return_index=True)
        first.sort()
        u, v, ln = u[first], v[first], ln[first]
        order = np.lexsort((v, u))
        u, v, ln = u[order], v[order], ln[order]

        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        vals = np.concatenate([ln, ln])
        order = np.lexsort((cols, rows))
        rows, cols, vals = rows[order], cols[order], vals[order]
        indptr = np.zeros(n + 1, dtype=np.intp)
        np.add.at(indptr, rows + 1, 1)
        indptr = np.cumsum(indptr)
        for a in (u, v, ln, indptr, cols, vals):
            a.flags.writeable = False
        return cls(n, u, v, ln, indptr, cols, vals, bool(np.all(ln == 1.0)))

    @property
    def m(self) -> int:
        return len(self.edge_u)

    @property
    def is_unit(self) -> bool:
        """True when every edge has length 1."""
        return self._unit

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def degree(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.edge_u.tolist(), self.edge_v.tolist()))

    def to_scipy(self, weighted: bool = True) -> sp.csr_matrix:
        data = self.lengths if weighted else np.ones_like(self.lengths)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def subgraph(self, vertices) -> tuple["Graph", np.ndarray]:
        """Induced subgraph on ``vertices`` (relabelled in ascending order)."""
        keep = np.unique(np.asarray(vertices, dtype=np.intp))
        new_id = np.full(self.n, -1, dtype=np.intp)
        new_id[keep] = np.arange(len(keep))
        mask = (new_id[self.edge_u] >= 0) & (new_id[self.edge_v] >= 0)
        edges = np.stack([new_id[self.edge_u[mask]], new_id[self.edge_v[mask]]], axis=1)
        return Graph.from_edges(len(keep), edges, self.edge_len[mask]), keep

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, unit={self.is_unit})"


@dataclass(frozen=True)
class DistanceResult:
    source: int
    dist: np.ndarray


@dataclass(frozen=True)
class DistanceTable:
    """Shortest-path distances for all ``i < j`` in condensed (row-major upper triangle) order."""

    n: int
    values: np.ndarray

    def index(self, i: int, j: int) -> int:
        if i == j:
            raise IndexError("no entry for i == j")
        if i > j:
            i, j = j, i
        return self.n * i - i * (i + 1) // 2 + (j - i - 1)

    def get(self, i: int, j: int) -> float:
        return 0.0 if i == j else float(self.values[self.index(i, j)])

    def pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """Row and column indices matching :attr:`values`."""
        return np.triu_indices(self.n, k=1)

    def max(self) -> float:
        return float(self.values.max()) if len(self.values) else 0.0

    def to_square(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        i, j = self.pairs()
        out[i, j] = self.values
        out[j, i] = self.values
        return out


def _bfs(g: Graph, source: int) -> np.ndarray:
    dist = [-1] * g.n
    dist[source] = 0
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if dist[u] < 0:
                dist[u] = dv
                queue.append(u)
    out = np.asarray(dist, dtype=np.float64)
    out[out < 0] = np.inf
    return out


def _dijkstra(g: Graph, source: int) -> np.ndarray:
    dist = [float("inf")] * g.n
    dist[source] = 0.0
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    lengths = g.lengths.tolist()
    heap = [(0.0, source)]
    done = [False] * g.n
    while heap:
        dv, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            du = dv + lengths[e]
            if du < dist[u]:
                dist[u] = du
                heapq.heappush(heap, (du, u))
    return np.asarray(dist, dtype=np.float64)


def sssp(g: Graph, source: int, weighted: bool = False) -> DistanceResult:
    """Single-source shortest paths: BFS on unit-length graphs unless ``weighted``, else Dijkstra."""
    if not 0 <= source < g.n:
        raise GraphError(f"source {source} out of range for n={g.n}")
    if g.is_unit and not weighted:
        return DistanceResult(source, _bfs(g, source))
    return DistanceResult(source, _dijkstra(g, source))


def multi_source_distances(g: Graph, sources, weighted: bool | None = None) -> np.ndarray:
    """Distance rows ``(len(sources), n)`` computed with scipy's graph routines."""
    if weighted is None:
        weighted = not g.is_unit
    sources = np.asarray(sources, dtype=np.intp)
    if len(sources) == 0:
        return np.zeros((0, g.n))
    return csgraph.shortest_path(
        g.to_scipy(weighted=weighted), method="D", directed=False,
        unweighted=not weighted, indices=sources,
    ).reshape(len(sources), g.n)


def n_components(g: Graph) -> int:
    if g.n == 0:
        return 0
    return csgraph.connected_components(g.to_scipy(), directed=False)[0]


def all_pairs(g: Graph, weighted: bool | None = None, chunk: int = 256) -> DistanceTable:
    """All-pairs shortest-path distances in condensed form.

    Raises :class:`DisconnectedGraphError` when ``g`` is not connected.
    ``weighted=None`` uses edge lengths whenever any differs from 1.
    """
    comps = n_components(g)
    if comps > 1:
        raise DisconnectedGraphError(comps)
    n = g.n
    out = np.empty(n * (n - 1) // 2)
    pos = 0
    for start in range(0, n, chunk):
        rows = multi_source_distances(g, np.arange(start, min(start + chunk, n)), weighted)
        for r, i in enumerate(range(start, min(start + chunk, n))):
            seg = rows[r, i + 1:]
            out[pos:pos + len(seg)] = seg
            pos += len(seg)
    out.flags.writeable = False
    return DistanceTable(n, out)


def largest_component(g: Graph) -> tuple[Graph, np.ndarray]:
    """Induced subgraph on the largest connected component and its original vertex ids.

    Ties go to the component containing the smallest vertex id.
    """
    if g.n == 0:
        raise GraphError("empty graph has no components")
    _, labels = csgraph.connected_components(g.to_scipy(), directed=False)
    sizes = np.bincount(labels)
    candidates = np.flatnonzero(sizes == sizes.max())
    label = min(candidates, key=lambda lab: int(np.flatnonzero(labels == lab)[0]))
    return g.subgraph(np.flatnonzero(labels == label))
