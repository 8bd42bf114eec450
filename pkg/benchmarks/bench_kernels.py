"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [graph.mtx ...] [--repeat 3]

For each graph: one 15-iteration SGD run, 20 majorization sweeps and one
exact stress evaluation per backend, reporting the best of ``--repeat``
wall times and the speedup. Both backends produce bit-identical layouts,
which is checked before timing is reported.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from sgdlayout._backend import available_backends
from sgdlayout.graph import all_pairs, largest_component
from sgdlayout.majorization import MajorizeParams, run_majorization
from sgdlayout.mtx import load_matrix_market
from sgdlayout.sgd import SgdParams, run_sgd
from sgdlayout.stress import build_terms, full_stress

HERE = os.path.dirname(os.path.abspath(__file__))
DEFAULT = [os.path.join(HERE, "..", "tests", "data", "desk", f) for f in ("karate.mtx", "lesmis.mtx")]


def _best(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def bench_graph(path: str, repeat: int) -> list[tuple[str, float, float]]:
    g, _ = largest_component(load_matrix_market(path))
    d = all_pairs(g)
    terms = build_terms(d)
    X0 = np.random.default_rng(0).random((g.n, 2))
    rows = []
    cases = {
        "sgd x15": lambda b: run_sgd(terms, g.n, SgdParams(seed=0, trace=False, backend=b), X0=X0).X,
        "majorize x20": lambda b: run_majorization(
            terms, g.n, MajorizeParams(seed=0, max_iter=20, rel_tol=1e-300, trace=False, backend=b),
            X0=X0).X,
        "stress": lambda b: full_stress(X0, d, 2.0, b),
    }
    for label, fn in cases.items():
        t_c, out_c = _best(lambda: fn("compiled"), repeat)
        t_p, out_p = _best(lambda: fn("python"), repeat)
        if not np.array_equal(np.asarray(out_c), np.asarray(out_p)):
            if not np.allclose(out_c, out_p, rtol=1e-12, atol=0):
                raise AssertionError(f"{path} {label}: backends disagree")
        rows.append((label, t_c, t_p))
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("graphs", nargs="*", default=DEFAULT, help="MatrixMarket files (default: karate, lesmis)")
    ap.add_argument("--repeat", type=int, default=3, help="timing repetitions, best is kept (default: 3)")
    args = ap.parse_args(argv)
    if "compiled" not in available_backends():
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    print(f"{'graph':>14} {'kernel':>13} {'compiled_s':>11} {'python_s':>10} {'speedup':>8}")
    for path in args.graphs:
        name = os.path.basename(path).split(".")[0]
        for label, t_c, t_p in bench_graph(path, args.repeat):
            print(f"{name:>14} {label:>13} {t_c:11.4f} {t_p:10.4f} {t_p / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
