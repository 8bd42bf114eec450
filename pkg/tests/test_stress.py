import math

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from conftest import complete_graph, path_graph, random_connected
from oracles import k4_min_stress
from sgdlayout.graph import DistanceTable, all_pairs
from sgdlayout.rng import unit_direction
from sgdlayout.stress import (Term, TermList, build_terms, constraint_residual, full_stress,
                              stress, term_displacement, term_gradient, term_value)


def _table(ds):
    # n chosen so that len(ds) == n(n-1)/2
    n = int(round((1 + math.sqrt(1 + 8 * len(ds))) / 2))
    return DistanceTable(n, np.asarray(ds, dtype=float))


@pytest.mark.parametrize("d, alpha, w", [(1.0, 2, 1.0), (4.0, 2, 1 / 16), (3.0, 1, 1 / 3), (2.0, 0, 1.0)])
def test_weights(d, alpha, w):
    t = build_terms(_table([d]), alpha)
    assert t.w_ij[0] == pytest.approx(w, rel=1e-15)
    assert t.w_ji[0] == t.w_ij[0]


def test_negative_alpha_rejected():
    with pytest.raises(ValueError):
        build_terms(_table([1.0]), -1)


def test_one_term_per_pair_in_condensed_order():
    t = build_terms(all_pairs(path_graph(4)))
    assert list(zip(t.i.tolist(), t.j.tolist())) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert t.d.tolist() == [1, 2, 3, 1, 2, 1]
    assert t.i.flags.c_contiguous and t.w_ij.dtype == np.float64


def test_p2_stress_examples():
    t = build_terms(all_pairs(path_graph(2)))
    assert stress(np.array([[0.0, 0.0], [1.0, 0.0]]), t) == 0.0
    assert stress(np.array([[0.0, 0.0], [3.0, 0.0]]), t) == 4.0


def test_k4_oracle_positive_and_unbeaten(rng):
    best = k4_min_stress()
    # the unit tetrahedron does not fit in the plane; the best planar layout is a
    # square of side (2 + sqrt2)/4 with stress 3 - 2*sqrt2
    assert best > 0.1
    assert best == pytest.approx(3 - 2 * math.sqrt(2), abs=1e-9)
    t = build_terms(all_pairs(complete_graph(4)))
    for _ in range(200):
        assert stress(rng.random((4, 2)) * 2, t) >= best - 1e-12


def test_infinite_weights_excluded_and_reported_separately():
    t = TermList.from_terms([Term(0, 1, 1.0, np.inf, np.inf), Term(0, 2, 1.0, 1.0, 1.0)])
    X = np.array([[0.0, 0.0], [3.0, 0.0], [0.0, 2.0]])
    assert stress(X, t) == 1.0
    assert constraint_residual(X, t) == 4.0


def test_stress_zero_iff_satisfied(rng):
    X = rng.random((6, 2))
    diff = X[:, None] - X[None]
    D = np.sqrt((diff ** 2).sum(-1))
    i, j = np.triu_indices(6, 1)
    t = TermList(i, j, D[i, j], np.ones(15), np.ones(15))
    assert stress(X, t) == pytest.approx(0.0, abs=1e-28)
    X[0] += 0.01
    assert stress(X, t) > 0


def test_full_stress_matches_term_stress(rng):
    g = random_connected(30, 20, rng)
    d = all_pairs(g)
    X = rng.random((30, 2)) * 5
    assert full_stress(X, d) == pytest.approx(stress(X, build_terms(d)), rel=1e-13)
    assert full_stress(X, d, alpha=1) == pytest.approx(stress(X, build_terms(d, 1)), rel=1e-13)


def test_displacement_examples():
    X = np.array([[0.0, 0.0], [2.0, 0.0]])
    assert term_displacement(X, Term(0, 1, 1.0, 1, 1)).tolist() == [-0.5, 0.0]
    assert term_displacement(X, Term(0, 1, 2.0, 1, 1)).tolist() == [0.0, 0.0]
    Y = np.array([[0.0, 0.0], [0.0, 0.5]])
    r = term_displacement(Y, Term(0, 1, 1.0, 1, 1))
    assert r.tolist() == [0.0, 0.25]
    # subtracting r from X_i and adding to X_j pushes them apart to distance d
    assert np.linalg.norm((Y[0] - r) - (Y[1] + r)) == pytest.approx(1.0)


def test_coincident_pair_uses_seeded_direction():
    X = np.zeros((2, 2))
    with pytest.raises(ValueError):
        term_displacement(X, Term(0, 1, 1.0, 1, 1))
    s1 = np.array([7], dtype=np.uint64)
    s2 = np.array([7], dtype=np.uint64)
    r = term_displacement(X, Term(0, 1, 1.0, 1, 1), s1)
    u = np.asarray(unit_direction(s2, 2))
    assert np.allclose(r, -0.5 * u)
    assert np.linalg.norm(u) == pytest.approx(1.0)
    assert np.all(np.isfinite(r))


def test_gradient_examples():
    X = np.array([[0.0, 0.0], [2.0, 0.0]])
    assert term_gradient(X, Term(0, 1, 1.0, 1, 1)).tolist() == [-2.0, 0.0]
    assert term_gradient(X, Term(0, 1, 2.0, 1, 1)).tolist() == [0.0, 0.0]


def _fd_gradient(X, term, h=1e-6):
    g = np.zeros_like(X)
    for v in range(X.shape[0]):
        for c in range(X.shape[1]):
            Xp = X.copy(); Xp[v, c] += h
            Xm = X.copy(); Xm[v, c] -= h
            g[v, c] = (term_value(Xp, term) - term_value(Xm, term)) / (2 * h)
    return g


def test_gradient_matches_central_differences_100_terms(rng):
    worst = 0.0
    for _ in range(100):
        X = rng.random((10, 2)) * 4
        i, j = rng.choice(10, 2, replace=False)
        term = Term(int(min(i, j)), int(max(i, j)), float(rng.uniform(0.5, 5)),
                    float(rng.uniform(0.05, 2)), 1.0)
        fd = _fd_gradient(X, term)
        g = term_gradient(X, term)
        analytic = np.zeros_like(X)
        analytic[term.i] = g
        analytic[term.j] = -g
        # every other vertex has zero gradient
        others = np.setdiff1d(np.arange(10), [term.i, term.j])
        assert np.all(np.abs(fd[others]) < 1e-9)
        for v in (term.i, term.j):
            for c in range(2):
                if abs(analytic[v, c]) > 1e-6:
                    worst = max(worst, abs(fd[v, c] - analytic[v, c]) / abs(analytic[v, c]))
                else:
                    assert abs(fd[v, c] - analytic[v, c]) < 1e-7
    assert worst < 1e-5


def test_rigid_motion_invariance(rng):
    g = random_connected(25, 15, rng)
    t = build_terms(all_pairs(g))
    for dim in (2, 3):
        X = rng.random((25, dim)) * 3
        base = stress(X, t)
        for _ in range(20):
            if dim == 2:
                a = rng.uniform(0, 2 * math.pi)
                R = np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])
            else:
                R = Rotation.random(random_state=int(rng.integers(1 << 31))).as_matrix()
            Y = X @ R.T + rng.normal(size=dim) * 10
            assert stress(Y, t) == pytest.approx(base, abs=1e-9)


def test_python_and_compiled_agree(rng):
    from sgdlayout._backend import available_backends
    if "compiled" not in available_backends():
        pytest.skip("compiled kernels not built")
    g = random_connected(40, 30, rng)
    d = all_pairs(g)
    t = build_terms(d)
    X = rng.random((40, 2))
    assert stress(X, t, "compiled") == stress(X, t, "python")
    assert full_stress(X, d, 2.0, "compiled") == full_stress(X, d, 2.0, "python")
