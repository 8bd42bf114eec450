"""Stress objective over pairwise terms.

A term ``(i, j, d, w_ij, w_ji)`` asks for ``||X_i - X_j|| = d``. ``w_ij``
governs how far ``X_i`` moves on a step and ``w_ji`` how far ``X_j`` does;
in the full model the two are equal and ``w_ij`` is also the weight of the
term in the stress sum. An infinite weight turns the term into a hard
constraint: it is always stepped fully and is reported as a constraint
residual rather than as stress.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import get_kernels
from .graph import DistanceTable
from .rng import unit_direction

DEGENERATE_EPS = 1e-9


@dataclass(frozen=True)
class Term:
    i: int
    j: int
    d: float
    w_ij: float
    w_ji: float


@dataclass(frozen=True, eq=False)
class TermList:
    """Structure-of-arrays term storage; iteration order is the array order."""

    i: np.ndarray
    j: np.ndarray
    d: np.ndarray
    w_ij: np.ndarray
    w_ji: np.ndarray

    def __post_init__(self):
        arrays = [np.ascontiguousarray(self.i, dtype=np.intp),
                  np.ascontiguousarray(self.j, dtype=np.intp)]
        arrays += [np.ascontiguousarray(a, dtype=np.float64) for a in (self.d, self.w_ij, self.w_ji)]
        if len({len(a) for a in arrays}) != 1:
            raise ValueError("term arrays must share a length")
        for name, a in zip(("i", "j", "d", "w_ij", "w_ji"), arrays):
            object.__setattr__(self, name, a)

    @classmethod
    def from_terms(cls, terms) -> "TermList":
        terms = list(terms)
        return cls(
            np.array([t.i for t in terms], dtype=np.intp),
            np.array([t.j for t in terms], dtype=np.intp),
            np.array([t.d for t in terms], dtype=np.float64),
            np.array([t.w_ij for t in terms], dtype=np.float64),
            np.array([t.w_ji for t in terms], dtype=np.float64),
        )

    def __len__(self) -> int:
        return len(self.i)

    def __getitem__(self, t: int) -> Term:
        return Term(int(self.i[t]), int(self.j[t]), float(self.d[t]),
                    float(self.w_ij[t]), float(self.w_ji[t]))

    def __iter__(self):
        for t in range(len(self)):
            yield self[t]

    def with_weights(self, w_ij, w_ji) -> "TermList":
        return TermList(self.i, self.j, self.d, w_ij, w_ji)

    def finite_weights(self) -> np.ndarray:
        """All finite, strictly positive directed weights."""
        w = np.concatenate([self.w_ij, self.w_ji])
        return w[np.isfinite(w) & (w > 0)]

    def tuples(self) -> list[tuple[int, int, float, float, float]]:
        return list(zip(self.i.tolist(), self.j.tolist(), self.d.tolist(),
                        self.w_ij.tolist(), self.w_ji.tolist()))


def check_alpha(alpha: float) -> None:
    if alpha < 0:
        raise ValueError(f"weight exponent must be non-negative, got {alpha}")


def build_terms(dists: DistanceTable, alpha: float = 2.0) -> TermList:
    """One term per unordered pair, weights ``d**-alpha`` on both sides."""
    check_alpha(alpha)
    d = np.asarray(dists.values, dtype=np.float64)
    if np.any(d <= 0) or np.any(~np.isfinite(d)):
        raise ValueError("all distances must be finite and positive")
    i, j = dists.pairs()
    w = d ** -alpha
    return TermList(i, j, d, w, w.copy())


def stress(X: np.ndarray, terms: TermList, backend: str | None = None) -> float:
    """Weighted stress over finite-weight terms (``w_ij`` side)."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    total, _ = get_kernels(backend).term_stress(X, terms.i, terms.j, terms.d, terms.w_ij)
    return total


def constraint_residual(X: np.ndarray, terms: TermList, backend: str | None = None) -> float:
    """Sum of squared distance errors over infinite-weight terms."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    _, pinned = get_kernels(backend).term_stress(X, terms.i, terms.j, terms.d, terms.w_ij)
    return pinned


def full_stress(X: np.ndarray, dists: DistanceTable, alpha: float = 2.0,
                backend: str | None = None) -> float:
    """Stress over every vertex pair without materializing a term list."""
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.shape[0] != dists.n:
        raise ValueError("layout and distance table disagree on n")
    return get_kernels(backend).condensed_stress(X, np.ascontiguousarray(dists.values), float(alpha))


def _direction(X: np.ndarray, i: int, j: int, state: np.ndarray | None) -> tuple[np.ndarray, float]:
    diff = X[i] - X[j]
    norm = math.sqrt(float(diff @ diff))
    if norm < DEGENERATE_EPS:
        if state is None:
            raise ValueError(f"vertices {i} and {j} coincide; pass a degenerate-direction state")
        return np.asarray(unit_direction(state, X.shape[1])), norm
    return diff / norm, norm


def term_displacement(X: np.ndarray, term: Term, state: np.ndarray | None = None) -> np.ndarray:
    """Half the distance error along the unit vector from ``X_j`` to ``X_i``.

    Subtracting it from ``X_i`` and adding it to ``X_j`` satisfies the term.
    Coincident vertices use a random direction drawn from ``state``.
    """
    unit, norm = _direction(X, term.i, term.j, state)
    return (norm - term.d) / 2.0 * unit


def term_gradient(X: np.ndarray, term: Term, state: np.ndarray | None = None) -> np.ndarray:
    """Gradient of ``w_ij (||X_i - X_j|| - d)**2`` with respect to ``X_i``; ``X_j``'s is its negation."""
    return 4.0 * term.w_ij * term_displacement(X, term, state)


def term_value(X: np.ndarray, term: Term) -> float:
    res = float(np.linalg.norm(X[term.i] - X[term.j])) - term.d
    return term.w_ij * res * res
