"""Stochastic gradient descent on stress with the step multiplier capped at 1."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from ._backend import get_kernels
from .graph import Graph, all_pairs
from .rng import random_layout, run_streams
from .schedule import Schedule, schedule_convergent, schedule_fixed
from .stress import Term, TermList, build_terms, stress, term_displacement


class ShuffleMode(enum.Enum):
    IN_ORDER = "in-order"
    INDICES_ONLY = "indices-only"
    WITH_REPLACEMENT = "with-replacement"
    SHUFFLE_ONCE = "shuffle-once"
    ALTERNATE_TWO = "alternate-two"
    RANDOM_RESHUFFLE = "random-reshuffle"


@dataclass(frozen=True)
class SgdParams:
    """Layout settings. ``t_max=None`` means 15 (fixed) or 30 (convergent)."""

    schedule: str = "fixed"
    t_max: int | None = None
    eps: float = 0.1
    delta: float = 0.03
    shuffle: ShuffleMode = ShuffleMode.RANDOM_RESHUFFLE
    seed: int = 0
    dim: int = 2
    alpha: float = 2.0
    max_iter: int = 1000
    trace: bool = True
    backend: str | None = None

    def __post_init__(self):
        if self.schedule not in ("fixed", "convergent"):
            raise ValueError(f"schedule must be 'fixed' or 'convergent', not {self.schedule!r}")
        if self.t_max is not None and self.t_max < 1:
            raise ValueError("t_max must be at least 1")
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.dim < 1:
            raise ValueError("dim must be at least 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if isinstance(self.shuffle, str):
            object.__setattr__(self, "shuffle", ShuffleMode(self.shuffle))

    @property
    def iterations(self) -> int:
        if self.t_max is not None:
            return self.t_max
        return 15 if self.schedule == "fixed" else 30


@dataclass
class IterationRecord:
    iteration: int
    time_s: float
    max_move: float
    stress: float | None = None


@dataclass
class LayoutResult:
    X: np.ndarray
    trace: list[IterationRecord] = field(default_factory=list)
    iterations: int = 0
    hit_cap: bool = False
    preprocess_s: float = 0.0

    @property
    def final_stress(self) -> float | None:
        for rec in reversed(self.trace):
            if rec.stress is not None:
                return rec.stress
        return None


def mu(weight: float, eta: float) -> float:
    return min(weight * eta, 1.0)


def apply_step(X: np.ndarray, term: Term, eta: float, state: np.ndarray | None = None) -> float:
    """Move ``X_i`` and ``X_j`` towards satisfying ``term``; returns the larger move.

    ``X_i`` moves by ``min(w_ij*eta, 1)`` of the half-error vector and
    ``X_j`` by ``min(w_ji*eta, 1)`` in the opposite direction.
    """
    if eta <= 0:
        raise ValueError("eta must be positive")
    r = term_displacement(X, term, state)
    mu_i = mu(term.w_ij, eta)
    mu_j = mu(term.w_ji, eta)
    X[term.i] -= mu_i * r
    X[term.j] += mu_j * r
    return max(mu_i, mu_j) * float(np.linalg.norm(r))


def shuffle_terms(terms: TermList, n: int, mode: ShuffleMode,
                  rng: np.random.Generator) -> Iterator[np.ndarray]:
    """Yield the term visiting order for iterations 0, 1, 2, ...

    ``INDICES_ONLY`` relabels vertices by one random permutation and then visits
    terms in lexicographic order of their relabelled ``(min, max)`` endpoints.
    """
    m = len(terms)
    mode = ShuffleMode(mode)
    if mode is ShuffleMode.IN_ORDER:
        order = np.arange(m, dtype=np.intp)
        while True:
            yield order
    elif mode is ShuffleMode.INDICES_ONLY:
        perm = rng.permutation(n)
        a, b = perm[terms.i], perm[terms.j]
        order = np.lexsort((np.maximum(a, b), np.minimum(a, b))).astype(np.intp)
        while True:
            yield order
    elif mode is ShuffleMode.WITH_REPLACEMENT:
        while True:
            yield rng.integers(0, m, size=m).astype(np.intp)
    elif mode is ShuffleMode.SHUFFLE_ONCE:
        order = rng.permutation(m).astype(np.intp)
        while True:
            yield order
    elif mode is ShuffleMode.ALTERNATE_TWO:
        first = rng.permutation(m).astype(np.intp)
        second = rng.permutation(m).astype(np.intp)
        while True:
            yield first
            yield second
    else:
        while True:
            order = np.arange(m, dtype=np.intp)
            rng.shuffle(order)
            yield order


def make_schedule(terms: TermList, params: SgdParams) -> Schedule:
    if params.schedule == "fixed":
        return schedule_fixed(terms, params.iterations, params.eps)
    return schedule_convergent(terms, params.iterations, params.eps)


def run_sgd(terms: TermList, n: int, params: SgdParams,
            X0: np.ndarray | None = None,
            evaluate: Callable[[np.ndarray], float] | None = None,
            schedule: Schedule | None = None) -> LayoutResult:
    """Iterate capped-step SGD over an arbitrary term list.

    ``evaluate`` maps a layout to the stress value recorded in the trace;
    by default it is the stress of ``terms`` itself. It is called at iteration
    boundaries only and its cost is excluded from the recorded times.
    """
    kernels = get_kernels(params.backend)
    streams = run_streams(params.seed)
    if X0 is None:
        X = random_layout(streams.init, n, params.dim)
    else:
        X = np.array(X0, dtype=np.float64, order="C", copy=True)
    if schedule is None:
        schedule = make_schedule(terms, params)
    if evaluate is None:
        evaluate = lambda Y: stress(Y, terms, params.backend)  # noqa: E731
    orders = shuffle_terms(terms, n, params.shuffle, streams.shuffle)
    limit = schedule.t_max if schedule.kind == "fixed" else params.max_iter
    result = LayoutResult(X)
    elapsed = 0.0
    for t in range(limit):
        eta = schedule(t)
        order = next(orders)
        start = time.perf_counter()
        move = kernels.sgd_iteration(X, terms.i, terms.j, terms.d, terms.w_ij, terms.w_ji,
                                     order, eta, streams.degenerate)
        elapsed += time.perf_counter() - start
        converged = schedule.kind == "convergent" and move < params.delta
        last = converged or t == limit - 1
        value = evaluate(X) if (params.trace or last) else None
        result.trace.append(IterationRecord(t + 1, elapsed, move, value))
        result.iterations = t + 1
        if converged:
            break
    else:
        result.hit_cap = schedule.kind == "convergent"
    return result


def layout_sgd(g: Graph, params: SgdParams = SgdParams(), weighted: bool | None = None) -> LayoutResult:
    """Shortest paths, full term list, then SGD from a random unit-square start."""
    start = time.perf_counter()
    terms = build_terms(all_pairs(g, weighted), params.alpha)
    prep = time.perf_counter() - start
    result = run_sgd(terms, g.n, params)
    result.preprocess_s = prep
    return result
