"""Seeded random streams.

Every layout run derives its randomness from one integer seed. The seed is
fed to :class:`numpy.random.SeedSequence` and spawned into independent child
sequences, one per purpose, always in the same order:

====  ============  ==================================================
idx   name          used for
====  ============  ==================================================
0     ``init``      initial vertex positions in the unit square
1     ``shuffle``   term orderings (permutations, draws with replacement)
2     ``degenerate`` replacement directions for coincident vertex pairs
3     ``pivots``    pivot sampling for the sparse model
====  ============  ==================================================

The first, second and fourth streams drive :class:`numpy.random.Generator`
objects on top of PCG64. The degenerate stream seeds a SplitMix64 state that
both the compiled and the pure-Python kernels advance identically, so the two
backends draw the same directions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
STREAM_NAMES = ("init", "shuffle", "degenerate", "pivots")


@dataclass(frozen=True)
class RunStreams:
    init: np.random.Generator
    shuffle: np.random.Generator
    degenerate: np.ndarray  # shape (1,), uint64 SplitMix64 state
    pivots: np.random.Generator


def run_streams(seed: int) -> RunStreams:
    children = np.random.SeedSequence(seed).spawn(len(STREAM_NAMES))
    state = children[2].generate_state(1, dtype=np.uint64)
    return RunStreams(
        init=np.random.Generator(np.random.PCG64(children[0])),
        shuffle=np.random.Generator(np.random.PCG64(children[1])),
        degenerate=np.array(state, dtype=np.uint64),
        pivots=np.random.Generator(np.random.PCG64(children[3])),
    )


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state; returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def unit_direction(state: np.ndarray, k: int) -> list[float]:
    """Uniform random unit vector in ``k`` dimensions, by rejection from the cube.

    ``state`` is a one-element uint64 array advanced in place.
    """
    s = int(state[0])
    while True:
        v = []
        for _ in range(k):
            s, z = splitmix64_next(s)
            v.append((z >> 11) * (1.0 / 9007199254740992.0) * 2.0 - 1.0)
        norm2 = 0.0
        for c in v:
            norm2 += c * c
        if 1e-12 < norm2 <= 1.0:
            break
    state[0] = s
    norm = math.sqrt(norm2)
    return [c / norm for c in v]


def random_layout(rng: np.random.Generator, n: int, k: int = 2) -> np.ndarray:
    """Positions drawn uniformly from the unit square (cube for ``k=3``)."""
    return rng.random((n, k))
