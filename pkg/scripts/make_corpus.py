"""Regenerate the bundled test graphs under tests/data.

Writes ``lesmis.mtx`` (Les Miserables co-appearance network, 77 vertices,
from networkx's copy of the Stanford GraphBase data) and a deterministic
``desk/`` set of small graphs whose shapes cover the collection's usual
families: meshes, grids, trees, sparse near-trees, small-world and random
graphs. ``powergrid_like.mtx`` is a 4941-vertex sparse planar-ish network
used when the real power-grid matrix is not available.

    python3 scripts/make_corpus.py [--out tests/data]
"""

from __future__ import annotations

import argparse
import os

import networkx as nx
import numpy as np
from scipy.sparse.csgraph import minimum_spanning_tree
from scipy.spatial import Delaunay

from sgdlayout.graph import Graph, largest_component
from sgdlayout.mtx import format_matrix_market


def _from_nx(G: nx.Graph) -> Graph:
    nodes = sorted(G.nodes(), key=str) if not all(isinstance(v, int) for v in G) else sorted(G)
    idx = {v: i for i, v in enumerate(nodes)}
    g = Graph.from_edges(len(nodes), [(idx[u], idx[v]) for u, v in G.edges()])
    return largest_component(g)[0]


def _delaunay_edges(pts: np.ndarray) -> np.ndarray:
    tri = Delaunay(pts).simplices
    e = np.vstack([tri[:, [0, 1]], tri[:, [1, 2]], tri[:, [0, 2]]])
    e.sort(axis=1)
    return np.unique(e, axis=0)


def sparse_geometric(n: int, m: int, seed: int) -> Graph:
    """MST of a random Delaunay mesh plus the shortest remaining mesh edges up to ``m``."""
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    e = _delaunay_edges(pts)
    length = np.linalg.norm(pts[e[:, 0]] - pts[e[:, 1]], axis=1)
    from scipy.sparse import coo_matrix
    A = coo_matrix((length, (e[:, 0], e[:, 1])), shape=(n, n)).tocsr()
    T = minimum_spanning_tree(A).tocoo()
    tree = {(min(a, b), max(a, b)) for a, b in zip(T.row.tolist(), T.col.tolist())}
    extra = [tuple(x) for x in e[np.argsort(length)].tolist() if tuple(x) not in tree]
    edges = sorted(tree) + extra[: m - len(tree)]
    return Graph.from_edges(n, edges)


def mesh(n: int, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2)) * [3.0, 1.0]
    return Graph.from_edges(n, _delaunay_edges(pts).tolist())


def desk_graphs() -> dict[str, Graph]:
    out = {
        "karate": _from_nx(nx.karate_club_graph()),
        "florentine": _from_nx(nx.florentine_families_graph()),
        "grid_30x30": _from_nx(nx.convert_node_labels_to_integers(nx.grid_2d_graph(30, 30))),
        "ladder_250": _from_nx(nx.ladder_graph(250)),
        "btree_1023": _from_nx(nx.balanced_tree(2, 9)),
        "tree_500": _from_nx(nx.random_labeled_tree(500, seed=5) if hasattr(nx, "random_labeled_tree")
                             else nx.random_tree(500, seed=5)),
        "smallworld_400": _from_nx(nx.connected_watts_strogatz_graph(400, 4, 0.1, seed=3)),
        "gnp_300": _from_nx(nx.gnp_random_graph(300, 0.02, seed=7)),
        "mesh_1005": mesh(1005, 11),
        "bus_1138": sparse_geometric(1138, 1458, 13),
    }
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "tests", "data"))
    args = ap.parse_args(argv)
    os.makedirs(os.path.join(args.out, "desk"), exist_ok=True)

    def write(path, g, comment):
        with open(path, "w") as fh:
            fh.write(format_matrix_market(g, comment=comment))
        print(f"{path}: n={g.n} m={g.m}")

    write(os.path.join(args.out, "lesmis.mtx"), _from_nx(nx.les_miserables_graph()),
          "Les Miserables character co-appearance (Knuth, Stanford GraphBase)")
    write(os.path.join(args.out, "desk", "lesmis.mtx"), _from_nx(nx.les_miserables_graph()),
          "Les Miserables character co-appearance (Knuth, Stanford GraphBase)")
    for name, g in desk_graphs().items():
        write(os.path.join(args.out, "desk", f"{name}.mtx"), g, f"generated by make_corpus.py: {name}")
    write(os.path.join(args.out, "powergrid_like.mtx"), sparse_geometric(4941, 6594, 17),
          "generated by make_corpus.py: sparse geometric network, power-grid sized")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
