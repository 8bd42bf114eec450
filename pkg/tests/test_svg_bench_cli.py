import csv
import io
import os
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from conftest import DATA, path_graph
from sgdlayout import bench
from sgdlayout.cli import build_parser, main
from sgdlayout.graph import Graph
from sgdlayout.mtx import format_matrix_market, load_matrix_market
from sgdlayout.sgd import SgdParams, layout_sgd
from sgdlayout.svg import emit_svg

SVG = "{http://www.w3.org/2000/svg}"
DESK = os.path.join(DATA, "desk")


def _write(tmp_path, name, g):
    p = tmp_path / name
    p.write_text(format_matrix_market(g))
    return str(p)


# ---- SVG ------------------------------------------------------------------

def _parse(doc):
    root = ET.fromstring(doc.encode())
    return root, root.findall(f".//{SVG}line"), root.findall(f".//{SVG}circle")


def test_svg_p2():
    root, lines, circles = _parse(emit_svg(np.array([[0.0, 0.0], [1.0, 0.0]]), path_graph(2)))
    assert len(lines) == 1 and len(circles) == 2
    assert root.get("version") == "1.1"


def test_svg_no_edges():
    _, lines, circles = _parse(emit_svg(np.random.default_rng(0).random((4, 2)), Graph.from_edges(4, [])))
    assert lines == [] and len(circles) == 4


def test_svg_viewbox_margin_and_radius():
    X = np.array([[0.0, 0.0], [10.0, 0.0], [10.0, 4.0]])
    root, _, circles = _parse(emit_svg(X, path_graph(3)))
    x0, y0, w, h = map(float, root.get("viewBox").split())
    assert (x0, y0, w, h) == pytest.approx((-0.5, -0.5, 11.0, 5.0))
    assert float(circles[0].get("r")) == pytest.approx(0.004 * 11.0)


def test_svg_colors_and_validation():
    X = np.array([[0.0, 0.0], [1.0, 1.0]])
    _, _, circles = _parse(emit_svg(X, path_graph(2), colors=["#ff0000", "#00ff00"]))
    assert [c.get("fill") for c in circles] == ["#ff0000", "#00ff00"]
    with pytest.raises(ValueError):
        emit_svg(np.array([[0.0, np.nan], [1.0, 1.0]]), path_graph(2))
    with pytest.raises(ValueError):
        emit_svg(X, path_graph(2), colors=["#ff0000"])


def test_svg_well_formed_on_mesh():
    g = load_matrix_market(os.path.join(DESK, "mesh_1005.mtx"))
    res = layout_sgd(g, SgdParams(seed=0, trace=False))
    _, lines, circles = _parse(emit_svg(res.X, g))
    assert len(lines) == g.m and len(circles) == g.n


# ---- batch runner ---------------------------------------------------------

def _csv_rows(outcomes):
    buf = io.StringIO()
    bench.write_trace_csv(outcomes, buf)
    return list(csv.reader(io.StringIO(buf.getvalue())))


def test_one_run_p3_has_t_max_rows(tmp_path):
    path = _write(tmp_path, "p3.mtx", path_graph(3))
    res = bench.run_benchmark(bench.RunConfig([path]))
    rows = _csv_rows(res.outcomes)
    assert rows[0] == ["graph", "algo", "run", "seed", "iteration", "time_s", "stress", "max_move"]
    assert len(rows) == 1 + 15
    assert [int(r[4]) for r in rows[1:]] == list(range(1, 16))
    times = [float(r[5]) for r in rows[1:]]
    assert times == sorted(times)


def _strip_time(rows):
    return [r[:5] + r[6:] for r in rows]


def test_identical_config_identical_csv(tmp_path):
    path = _write(tmp_path, "g.mtx", path_graph(12))
    cfg = dict(algorithms=["sgd", "majorization", "sparse-sgd"], runs=3, pivots=4, base_seed=7)
    a = _csv_rows(bench.run_benchmark(bench.RunConfig([path], **cfg)).outcomes)
    b = _csv_rows(bench.run_benchmark(bench.RunConfig([path], **cfg)).outcomes)
    assert _strip_time(a) == _strip_time(b)


def test_parallel_matches_sequential():
    paths = [os.path.join(DESK, f) for f in ("karate.mtx", "florentine.mtx")]
    cfg = dict(algorithms=["sgd", "majorization"], runs=4)
    seq = bench.run_benchmark(bench.RunConfig(paths, **cfg))
    par = bench.run_benchmark(bench.RunConfig(paths, jobs=4, **cfg))
    key = lambda o: (o.graph, o.algo, o.seed)
    assert {key(o): o.final_stress for o in seq.outcomes} == {key(o): o.final_stress for o in par.outcomes}
    assert _strip_time(_csv_rows(seq.outcomes)) == _strip_time(_csv_rows(par.outcomes))


def test_seeds_follow_run_index(tmp_path):
    path = _write(tmp_path, "g.mtx", path_graph(6))
    res = bench.run_benchmark(bench.RunConfig([path], runs=3, base_seed=10))
    assert [o.seed for o in res.outcomes] == [10, 11, 12]


def test_summary_normalization():
    path = os.path.join(DESK, "lesmis.mtx")
    res = bench.run_benchmark(bench.RunConfig([path], ["sgd", "majorization"], runs=3, trace=False))
    best = min(o.final_stress for o in res.outcomes)
    for s in res.summaries:
        outs = [o.final_stress for o in res.outcomes if o.algo == s.algo]
        assert s.mean_stress == pytest.approx(np.mean(outs))
        assert s.norm_mean == pytest.approx(np.mean(outs) / best)
        assert s.norm_min >= 1.0
    assert min(s.norm_min for s in res.summaries) == 1.0
    buf = io.StringIO()
    bench.write_summary_csv(res.summaries, buf)
    assert buf.getvalue().splitlines()[0].split(",") == bench.SUMMARY_HEADER


def test_errors_do_not_stop_batch(tmp_path):
    good = _write(tmp_path, "good.mtx", path_graph(4))
    split = _write(tmp_path, "split.mtx", Graph.from_edges(4, [(0, 1), (2, 3)]))
    missing = str(tmp_path / "missing.mtx")
    res = bench.run_benchmark(bench.RunConfig([missing, split, good], ["sgd", "sparse-sgd"], pivots=2))
    status = {(s.graph, s.algo): s.status for s in res.summaries}
    assert status[("missing", "sgd")] == "error" and status[("split", "sparse-sgd")] == "error"
    assert status[("good", "sgd")] == "ok" and status[("good", "sparse-sgd")] == "ok"
    assert "missing.mtx" in res.errors[0].message
    # the flag lays out the largest component instead of failing
    res = bench.run_benchmark(bench.RunConfig([split], largest_component=True))
    assert not res.errors


def test_preprocessing_offset(tmp_path):
    path = _write(tmp_path, "g.mtx", path_graph(30))
    res = bench.run_benchmark(bench.RunConfig([path], include_preprocessing=True))
    o = res.outcomes[0]
    assert o.offset_s == o.result.preprocess_s > 0
    assert float(_csv_rows([o])[1][5]) >= o.offset_s - 1e-6


def test_config_validation():
    with pytest.raises(ValueError):
        bench.RunConfig(["x"], runs=0)
    with pytest.raises(ValueError):
        bench.RunConfig(["x"], ["cholesky"])


# ---- CLI ------------------------------------------------------------------

def test_cli_layout_writes_svg(tmp_path, capsys):
    g = _write(tmp_path, "graph.mtx", path_graph(8))
    out = tmp_path / "out.svg"
    assert main(["layout", g, "--algo", "sgd", "--iter", "15", "--seed", "1", "--svg", str(out)]) == 0
    _, lines, circles = _parse(out.read_text())
    assert len(lines) == 7 and len(circles) == 8
    assert "iterations=15" in capsys.readouterr().out


def test_cli_layout_outputs_and_render(tmp_path):
    g = os.path.join(DESK, "karate.mtx")
    coords, trace, svg = tmp_path / "x.csv", tmp_path / "t.csv", tmp_path / "r.svg"
    assert main(["layout", g, "--seed", "2", "--out", str(coords), "--csv", str(trace)]) == 0
    X = np.loadtxt(coords, delimiter=",")
    assert X.shape == (34, 2)
    assert np.array_equal(X, layout_sgd(load_matrix_market(g), SgdParams(seed=2)).X)
    assert trace.read_text().splitlines()[0] == ",".join(bench.TRACE_HEADER)
    assert main(["render", g, str(coords), "--svg", str(svg), "--colors", "jaccard"]) == 0
    _, _, circles = _parse(svg.read_text())
    assert len({c.get("fill") for c in circles}) > 1


def test_cli_focus_and_algorithms(tmp_path, capsys):
    g = _write(tmp_path, "g.mtx", path_graph(10))
    assert main(["layout", g, "--focus", "3"]) == 0
    assert main(["layout", g, "--algo", "majorization"]) == 0
    assert main(["layout", g, "--algo", "sparse-sgd", "--pivots", "3", "--schedule", "convergent"]) == 0
    assert main(["layout", g, "--algo", "majorization", "--focus", "1"]) == 1
    assert "--focus" in capsys.readouterr().err


def test_cli_bench_combined_csv(tmp_path):
    graphs = [_write(tmp_path, f"g{k}.mtx", path_graph(5 + k)) for k in range(2)]
    out = tmp_path / "out.csv"
    summary = tmp_path / "summary.csv"
    assert main(["bench", *graphs, "--runs", "3", "--algo", "sgd,majorization",
                 "--csv", str(out), "--summary", str(summary)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert {(r["graph"], r["algo"]) for r in rows} == {(f"g{k}", a) for k in range(2)
                                                       for a in ("sgd", "majorization")}
    assert {r["run"] for r in rows} == {"0", "1", "2"}
    assert len(list(csv.DictReader(summary.open()))) == 4


def test_cli_missing_file(tmp_path, capsys):
    path = str(tmp_path / "missing.mtx")
    assert main(["layout", path]) != 0
    assert path in capsys.readouterr().err
    assert main(["bench", path, "--runs", "1"]) != 0


def test_cli_unknown_flag_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["layout", "g.mtx", "--bogus"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_help_lists_every_flag():
    parser = build_parser()
    subs = parser._subparsers._group_actions[0].choices
    for name, sub in subs.items():
        text = sub.format_help()
        for action in sub._actions:
            for flag in action.option_strings:
                assert flag in text, (name, flag)


def test_console_entry_point(tmp_path):
    g = _write(tmp_path, "g.mtx", path_graph(4))
    run = subprocess.run([sys.executable, "-m", "sgdlayout.cli", "layout", g], capture_output=True, text=True)
    assert run.returncode == 0 and "n=4" in run.stdout
    run = subprocess.run([sys.executable, "-m", "sgdlayout.cli", "layout", g, "--nope"],
                         capture_output=True, text=True)
    assert run.returncode == 2
