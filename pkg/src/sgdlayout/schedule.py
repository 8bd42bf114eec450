"""Step-size annealing schedules."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .stress import TermList


def eta_bounds(terms: TermList, eps: float = 0.1) -> tuple[float, float]:
    """``(1 / w_min, eps / w_max)`` over finite, positive weights."""
    w = terms.finite_weights()
    if len(w) == 0:
        raise ValueError("bounds need at least one finite, positive weight")
    return 1.0 / float(w.min()), eps / float(w.max())


def decay_rate(eta_max: float, eta_min: float, t_max: int) -> float:
    if t_max < 2:
        raise ValueError("t_max must be at least 2")
    if eta_max <= eta_min:
        return 0.0
    return math.log(eta_max / eta_min) / (t_max - 1)


@dataclass(frozen=True)
class Schedule:
    """Step size as a function of the 0-based iteration index.

    ``kind="fixed"`` has ``t_max`` entries decaying exponentially from
    ``eta_max`` to ``eta_min``. ``kind="convergent"`` follows the same
    exponential until iteration ``tau`` and then ``eta_cross / (1 + lam*(t - tau))``
    forever, where ``eta_cross = 1 / w_max``.
    """

    kind: str
    eta_max: float
    eta_min: float
    lam: float
    t_max: int
    tau: int | None = None
    eta_cross: float | None = None

    def __call__(self, t: int) -> float:
        if t < 0:
            raise IndexError("iteration index must be non-negative")
        if self.kind == "fixed":
            if t >= self.t_max:
                raise IndexError(f"fixed schedule has {self.t_max} iterations")
            if self.lam == 0.0:
                return max(self.eta_max, self.eta_min)
            return self.eta_max * math.exp(-self.lam * t)
        if t < self.tau:
            return self.eta_max * math.exp(-self.lam * t)
        return self.eta_cross / (1.0 + self.lam * (t - self.tau))

    def values(self, count: int | None = None) -> np.ndarray:
        if count is None:
            if self.kind != "fixed":
                raise ValueError("convergent schedule is unbounded; pass a count")
            count = self.t_max
        return np.array([self(t) for t in range(count)])

    def __len__(self) -> int:
        if self.kind != "fixed":
            raise TypeError("convergent schedule is unbounded")
        return self.t_max


def schedule_fixed(terms: TermList, t_max: int = 15, eps: float = 0.1) -> Schedule:
    eta_max, eta_min = eta_bounds(terms, eps)
    return Schedule("fixed", eta_max, eta_min, decay_rate(eta_max, eta_min, t_max), t_max)


def schedule_convergent(terms: TermList, t_max: int = 30, eps: float = 0.1) -> Schedule:
    eta_max, eta_min = eta_bounds(terms, eps)
    lam = decay_rate(eta_max, eta_min, t_max)
    w_max = float(terms.finite_weights().max())
    eta_cross = 1.0 / w_max
    if lam == 0.0 or eta_max <= eta_cross:
        tau = 0
    else:
        x = math.log(eta_max * w_max) / lam
        tau = math.ceil(x)
        # a float that lands just above an integer still means that integer
        if tau - x > 1.0 - 1e-9:
            tau -= 1
    return Schedule("convergent", eta_max, eta_min, lam, t_max, tau, eta_cross)
