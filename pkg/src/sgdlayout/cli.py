"""``sgdlayout`` command line: ``layout``, ``bench`` and ``render``."""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import bench
from .extensions import apply_focus, embed_rgb
from .graph import GraphError, all_pairs
from .mtx import MatrixMarketError
from .sgd import ShuffleMode, run_sgd
from .stress import build_terms
from .svg import emit_svg

log = logging.getLogger("sgdlayout")


def _add_common(p: argparse.ArgumentParser, multi_algo: bool = False) -> None:
    if multi_algo:
        p.add_argument("--algo", default="sgd",
                       help="comma-separated algorithms: sgd, sparse-sgd, majorization (default: sgd)")
    else:
        p.add_argument("--algo", default="sgd", choices=bench.ALGORITHMS,
                       help="layout algorithm (default: sgd)")
    p.add_argument("--schedule", default="fixed", choices=("fixed", "convergent"),
                   help="step-size schedule for the SGD variants (default: fixed)")
    p.add_argument("--iter", dest="t_max", type=int, default=None,
                   help="schedule length t_max (default: 15 fixed, 30 convergent)")
    p.add_argument("--eps", type=float, default=0.1, help="final step multiplier target (default: 0.1)")
    p.add_argument("--delta", type=float, default=0.03,
                   help="convergence threshold on the largest single move (default: 0.03)")
    p.add_argument("--pivots", type=int, default=200, help="pivot count for sparse-sgd (default: 200)")
    p.add_argument("--shuffle", default="random-reshuffle", choices=[m.value for m in ShuffleMode],
                   help="term ordering strategy (default: random-reshuffle)")
    p.add_argument("--dim", type=int, default=2, help="output dimensions (default: 2)")
    p.add_argument("--rel-tol", type=float, default=1e-5,
                   help="majorization relative stress-decrease threshold (default: 1e-5)")
    p.add_argument("--max-iter", type=int, default=1000,
                   help="iteration cap for convergent SGD and majorization (default: 1000)")
    p.add_argument("--largest-component", action="store_true",
                   help="lay out only the largest connected component")
    p.add_argument("--weighted", action="store_true",
                   help="use absolute matrix values as edge lengths")
    p.add_argument("--no-trace", action="store_true",
                   help="skip per-iteration stress evaluation (final stress only)")
    p.add_argument("--backend", choices=("compiled", "python"), default=None,
                   help="kernel backend (default: compiled when built)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sgdlayout", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("layout", help="lay out one graph")
    p.add_argument("graph", help="MatrixMarket file (.mtx, .mtx.gz)")
    _add_common(p)
    p.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
    p.add_argument("--focus", type=int, default=None,
                   help="vertex whose distances are enforced exactly (sgd only)")
    p.add_argument("--colors", choices=("jaccard",), default=None,
                   help="colour vertices by a 3D embedding of Jaccard dissimilarity")
    p.add_argument("--svg", help="write the drawing here")
    p.add_argument("--csv", help="write the per-iteration trace here")
    p.add_argument("--out", help="write coordinates here (CSV, one row per vertex)")

    p = sub.add_parser("bench", help="repeated runs over several graphs")
    p.add_argument("graphs", nargs="+", help="MatrixMarket files")
    _add_common(p, multi_algo=True)
    p.add_argument("--runs", type=int, default=25, help="runs per graph and algorithm (default: 25)")
    p.add_argument("--seed", type=int, default=0, help="base seed; run r uses seed+r (default: 0)")
    p.add_argument("--csv", help="write the combined per-iteration trace here")
    p.add_argument("--summary", help="write the per-graph summary here")
    p.add_argument("--jobs", type=int, default=1, help="parallel runs (default: 1)")
    p.add_argument("--include-preprocessing", action="store_true",
                   help="add shortest-path preprocessing time to the reported times")
    p.add_argument("--normalize", action="store_true",
                   help="print stress normalized by the best run on each graph")

    p = sub.add_parser("render", help="draw saved coordinates")
    p.add_argument("graph", help="MatrixMarket file")
    p.add_argument("coords", help="coordinate CSV written by `layout --out`")
    p.add_argument("--svg", required=True, help="output SVG path")
    p.add_argument("--colors", choices=("jaccard",), default=None, help="colour vertices")
    p.add_argument("--seed", type=int, default=0, help="seed for the colour embedding")
    p.add_argument("--largest-component", action="store_true")
    p.add_argument("--weighted", action="store_true")
    return parser


def _config(args, inputs, algorithms, runs=1, jobs=1) -> bench.RunConfig:
    return bench.RunConfig(
        inputs=inputs, algorithms=algorithms, schedule=args.schedule, t_max=args.t_max,
        eps=args.eps, delta=args.delta, pivots=args.pivots, runs=runs, base_seed=args.seed,
        shuffle=args.shuffle, dim=args.dim, rel_tol=args.rel_tol, max_iter=args.max_iter,
        largest_component=args.largest_component, weighted=args.weighted,
        trace=not args.no_trace, include_preprocessing=getattr(args, "include_preprocessing", False),
        jobs=jobs, backend=args.backend)


def _colors(g, seed):
    from .sgd import SgdParams
    emb, _ = embed_rgb(g, SgdParams(seed=seed))
    return emb.hex()


def _write_svg(path, X, g, colors=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_svg(X, g, colors))


def cmd_layout(args) -> int:
    cfg = _config(args, [args.graph], [args.algo])
    g = bench.load_graph(args.graph, args.weighted, args.largest_component)
    if args.focus is not None:
        if args.algo != "sgd":
            raise ValueError("--focus is only supported with --algo sgd")
        if not 0 <= args.focus < g.n:
            raise ValueError(f"focus vertex {args.focus} out of range for n={g.n}")
        terms = apply_focus(build_terms(all_pairs(g)), args.focus)
        result = run_sgd(terms, g.n, cfg.sgd_params(0))
        outcome = bench.RunOutcome(bench.graph_name(args.graph), "sgd", 0, args.seed,
                                   result, result.final_stress)
    else:
        res = bench.run_benchmark(cfg)
        if res.errors:
            raise ValueError(res.errors[0].message)
        outcome = res.outcomes[0]
    result = outcome.result
    print(f"{outcome.graph}: n={g.n} m={g.m} algo={outcome.algo} iterations={result.iterations} "
          f"stress={outcome.final_stress:.6g} time_s={result.trace[-1].time_s:.3f}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            bench.write_trace_csv([outcome], fh)
    if args.out:
        np.savetxt(args.out, result.X, delimiter=",", fmt="%.17g")
    if args.svg:
        colors = _colors(g, args.seed) if args.colors else None
        _write_svg(args.svg, result.X, g, colors)
    return 0


def cmd_bench(args) -> int:
    algos = [a.strip() for a in args.algo.split(",") if a.strip()]
    cfg = _config(args, args.graphs, algos, args.runs, args.jobs)
    res = bench.run_benchmark(cfg)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            bench.write_trace_csv(res.outcomes, fh)
    if args.summary:
        with open(args.summary, "w", newline="") as fh:
            bench.write_summary_csv(res.summaries, fh)
    for s in res.summaries:
        if s.status != "ok":
            print(f"{s.graph:>20} {s.algo:>13}  ERROR {s.message}")
        elif args.normalize:
            print(f"{s.graph:>20} {s.algo:>13}  mean={s.norm_mean:.4f} min={s.norm_min:.4f} "
                  f"max={s.norm_max:.4f} iters={s.mean_iterations:.1f} time_s={s.mean_time_s:.3f}")
        else:
            print(f"{s.graph:>20} {s.algo:>13}  mean={s.mean_stress:.6g} min={s.min_stress:.6g} "
                  f"max={s.max_stress:.6g} cv={s.cv_stress:.4f} iters={s.mean_iterations:.1f} "
                  f"time_s={s.mean_time_s:.3f}")
    if res.errors:
        print(f"sgdlayout: {len({e.graph for e in res.errors})} graph(s) failed", file=sys.stderr)
        return 1
    return 0


def cmd_render(args) -> int:
    g = bench.load_graph(args.graph, args.weighted, args.largest_component)
    X = np.loadtxt(args.coords, delimiter=",", ndmin=2)
    if X.shape[0] != g.n:
        raise ValueError(f"{args.coords} has {X.shape[0]} rows but the graph has {g.n} vertices")
    colors = _colors(g, args.seed) if args.colors else None
    _write_svg(args.svg, X, g, colors)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"layout": cmd_layout, "bench": cmd_bench, "render": cmd_render}[args.command]
    try:
        return handler(args)
    except (OSError, ValueError, GraphError, MatrixMarketError) as exc:
        print(f"sgdlayout {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
