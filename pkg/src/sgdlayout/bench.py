"""Batch layout experiments with per-iteration CSV traces."""

from __future__ import annotations

import csv
import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, all_pairs, largest_component
from .evaluation import EXACT_MAX_N, stress_evaluator
from .majorization import MajorizeParams, run_majorization
from .mtx import load_matrix_market
from .sgd import LayoutResult, SgdParams, ShuffleMode, run_sgd
from .sparse import layout_sparse_sgd
from .stress import build_terms

log = logging.getLogger(__name__)

ALGORITHMS = ("sgd", "sparse-sgd", "majorization")
TRACE_HEADER = ["graph", "algo", "run", "seed", "iteration", "time_s", "stress", "max_move"]
SUMMARY_HEADER = ["graph", "algo", "status", "n", "runs", "mean_stress", "min_stress",
                  "max_stress", "cv_stress", "norm_mean", "norm_min", "norm_max",
                  "mean_iterations", "mean_time_s", "message"]


@dataclass
class RunConfig:
    inputs: list[str]
    algorithms: list[str] = field(default_factory=lambda: ["sgd"])
    schedule: str = "fixed"
    t_max: int | None = None
    eps: float = 0.1
    delta: float = 0.03
    pivots: int = 200
    runs: int = 1
    base_seed: int = 0
    shuffle: str = "random-reshuffle"
    dim: int = 2
    rel_tol: float = 1e-5
    max_iter: int = 1000
    largest_component: bool = False
    weighted: bool = False
    trace: bool = True
    include_preprocessing: bool = False
    jobs: int = 1
    backend: str | None = None

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            raise ValueError(f"unknown algorithm(s) {bad}; choose from {list(ALGORITHMS)}")

    def seed(self, run: int) -> int:
        return self.base_seed + run

    def sgd_params(self, run: int) -> SgdParams:
        return SgdParams(schedule=self.schedule, t_max=self.t_max, eps=self.eps, delta=self.delta,
                         shuffle=ShuffleMode(self.shuffle), seed=self.seed(run), dim=self.dim,
                         max_iter=self.max_iter, trace=self.trace, backend=self.backend)

    def majorize_params(self, run: int) -> MajorizeParams:
        return MajorizeParams(rel_tol=self.rel_tol, max_iter=self.max_iter, seed=self.seed(run),
                              dim=self.dim, trace=self.trace, backend=self.backend)


@dataclass
class RunOutcome:
    graph: str
    algo: str
    run: int
    seed: int
    result: LayoutResult
    final_stress: float
    offset_s: float = 0.0


@dataclass
class GraphSummary:
    graph: str
    algo: str
    status: str
    n: int = 0
    runs: int = 0
    mean_stress: float = math.nan
    min_stress: float = math.nan
    max_stress: float = math.nan
    cv_stress: float = math.nan
    norm_mean: float = math.nan
    norm_min: float = math.nan
    norm_max: float = math.nan
    mean_iterations: float = math.nan
    mean_time_s: float = math.nan
    message: str = ""


@dataclass
class BenchResult:
    outcomes: list[RunOutcome]
    summaries: list[GraphSummary]

    @property
    def errors(self) -> list[GraphSummary]:
        return [s for s in self.summaries if s.status != "ok"]


def graph_name(path: str) -> str:
    base = os.path.basename(path)
    for suffix in (".gz", ".bz2", ".mtx"):
        if base.endswith(suffix):
            base = base[: -len(suffix)]
    return base


def load_graph(path: str, weighted: bool = False, largest: bool = False) -> Graph:
    g = load_matrix_market(path, weighted=weighted)
    if largest:
        g, _ = largest_component(g)
    return g


class _Prepared:
    """Per-graph shortest paths and terms, shared across runs."""

    def __init__(self, g: Graph, need_terms: bool):
        start = time.perf_counter()
        self.g = g
        self.dists = all_pairs(g) if need_terms or g.n <= EXACT_MAX_N else None
        self.terms = build_terms(self.dists) if need_terms else None
        self.prep_s = time.perf_counter() - start
        self.evaluate = stress_evaluator(g, dists=self.dists)


def _run_one(name: str, prep: _Prepared, algo: str, run: int, cfg: RunConfig) -> RunOutcome:
    g = prep.g
    if algo == "sgd":
        res = run_sgd(prep.terms, g.n, cfg.sgd_params(run), evaluate=prep.evaluate)
        res.preprocess_s = prep.prep_s
    elif algo == "majorization":
        res = run_majorization(prep.terms, g.n, cfg.majorize_params(run))
        res.preprocess_s = prep.prep_s
    else:
        res, _ = layout_sparse_sgd(g, min(cfg.pivots, g.n), cfg.sgd_params(run),
                                   weighted=cfg.weighted or None, evaluate=prep.evaluate)
    final = res.final_stress
    if final is None:
        final = prep.evaluate(res.X)
    offset = res.preprocess_s if cfg.include_preprocessing else 0.0
    return RunOutcome(name, algo, run, cfg.seed(run), res, final, offset)


def _summarize(name: str, n: int, algo: str, outs: list[RunOutcome], best: float) -> GraphSummary:
    s = np.array([o.final_stress for o in outs])
    mean = float(s.mean())
    return GraphSummary(
        name, algo, "ok", n, len(outs), mean, float(s.min()), float(s.max()),
        float(s.std() / mean) if mean > 0 else 0.0,
        mean / best if best > 0 else math.nan,
        float(s.min()) / best if best > 0 else math.nan,
        float(s.max()) / best if best > 0 else math.nan,
        float(np.mean([o.result.iterations for o in outs])),
        float(np.mean([o.result.trace[-1].time_s + o.offset_s for o in outs])),
    )


def run_benchmark(cfg: RunConfig) -> BenchResult:
    """Run every (graph, algorithm, seed) combination.

    Runs are independent, so ``jobs > 1`` only changes wall time, never results.
    Graphs that fail to load or lay out yield an error summary and the batch
    carries on.
    """
    outcomes: list[RunOutcome] = []
    summaries: list[GraphSummary] = []
    for path in cfg.inputs:
        name = graph_name(path)
        tasks = [(algo, run) for algo in cfg.algorithms for run in range(cfg.runs)]
        try:
            g = load_graph(path, cfg.weighted, cfg.largest_component)
            prep = _Prepared(g, any(a != "sparse-sgd" for a in cfg.algorithms))
            if cfg.jobs > 1:
                with ThreadPoolExecutor(cfg.jobs) as pool:
                    outs = list(pool.map(lambda ar: _run_one(name, prep, ar[0], ar[1], cfg), tasks))
            else:
                outs = [_run_one(name, prep, a, r, cfg) for a, r in tasks]
        except (OSError, ValueError) as exc:
            log.error("%s: %s", path, exc)
            for algo in cfg.algorithms:
                summaries.append(GraphSummary(name, algo, "error", message=f"{path}: {exc}"))
            continue
        outcomes.extend(outs)
        best = min(o.final_stress for o in outs)
        for algo in cfg.algorithms:
            summaries.append(_summarize(name, g.n, algo, [o for o in outs if o.algo == algo], best))
    return BenchResult(outcomes, summaries)


def trace_rows(outcomes: list[RunOutcome]):
    for o in outcomes:
        for rec in o.result.trace:
            yield [o.graph, o.algo, o.run, o.seed, rec.iteration,
                   f"{rec.time_s + o.offset_s:.6f}",
                   "" if rec.stress is None else repr(float(rec.stress)),
                   repr(float(rec.max_move))]


def write_trace_csv(outcomes: list[RunOutcome], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(TRACE_HEADER)
    w.writerows(trace_rows(outcomes))


def write_summary_csv(summaries: list[GraphSummary], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SUMMARY_HEADER)
    for s in summaries:
        w.writerow([getattr(s, k) if not isinstance(getattr(s, k), float) else f"{getattr(s, k):.9g}"
                    for k in SUMMARY_HEADER])
