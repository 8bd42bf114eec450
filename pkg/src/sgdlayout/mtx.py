"""MatrixMarket coordinate files as undirected graphs."""

from __future__ import annotations

import bz2
import gzip
import io
import os
from typing import IO, Iterable

from .graph import Graph, GraphError

FIELDS = ("pattern", "real", "integer")
SYMMETRIES = ("symmetric", "general")


class MatrixMarketError(ValueError):
    """Malformed MatrixMarket input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class StructuralError(MatrixMarketError):
    pass


def _lines(source) -> Iterable[str]:
    if isinstance(source, bytes):
        source = source.decode("utf-8", errors="replace")
    if isinstance(source, str):
        return io.StringIO(source)
    if isinstance(source, io.TextIOBase):
        return source
    return io.TextIOWrapper(source, encoding="utf-8", errors="replace")


def parse_matrix_market(source: bytes | str | IO, weighted: bool = False) -> Graph:
    """Read the nonzero pattern of a square coordinate matrix as a graph.

    Entry values become edge lengths (absolute value) only when ``weighted``;
    otherwise every edge has length 1. Self-loops are dropped, duplicate
    entries merged and ``general`` matrices symmetrized by union.
    """
    lines = iter(_lines(source))
    lineno = 0
    header = None
    for raw in lines:
        lineno += 1
        header = raw.strip()
        break
    if not header:
        raise MatrixMarketError("empty input", 1)
    tokens = header.split()
    if len(tokens) != 5 or tokens[0].lower() != "%%matrixmarket" or tokens[1].lower() != "matrix":
        raise MatrixMarketError("expected '%%MatrixMarket matrix coordinate <field> <symmetry>'", lineno)
    fmt, fld, sym = (t.lower() for t in tokens[2:])
    if fmt != "coordinate":
        raise MatrixMarketError(f"unsupported format {fmt!r}; only coordinate is read", lineno)
    if fld not in FIELDS:
        raise MatrixMarketError(f"unsupported field {fld!r}", lineno)
    if sym not in SYMMETRIES:
        raise MatrixMarketError(f"unsupported symmetry {sym!r}", lineno)
    if weighted and fld == "pattern":
        raise MatrixMarketError("pattern matrix carries no values for edge lengths", lineno)

    size = None
    for raw in lines:
        lineno += 1
        s = raw.strip()
        if not s or s.startswith("%"):
            continue
        parts = s.split()
        try:
            size = tuple(int(p) for p in parts)
        except ValueError:
            raise MatrixMarketError(f"bad size line {s!r}", lineno) from None
        if len(size) != 3 or min(size) < 0:
            raise MatrixMarketError(f"bad size line {s!r}", lineno)
        break
    if size is None:
        raise MatrixMarketError("missing size line", lineno)
    rows, cols, nnz = size
    if rows != cols:
        raise StructuralError(f"matrix is {rows}x{cols}, not square", lineno)

    need = 2 if fld == "pattern" else 3
    edges = []
    lengths = []
    count = 0
    for raw in lines:
        lineno += 1
        s = raw.strip()
        if not s or s.startswith("%"):
            continue
        parts = s.split()
        if len(parts) < need:
            raise MatrixMarketError(f"entry needs {need} fields, got {len(parts)}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
            value = float(parts[2]) if need == 3 else 1.0
        except ValueError:
            raise MatrixMarketError(f"bad entry {s!r}", lineno) from None
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise MatrixMarketError(f"index ({i}, {j}) outside {rows}x{cols}", lineno)
        count += 1
        if i == j:
            continue
        if weighted:
            if value == 0:
                raise MatrixMarketError("zero entry cannot be an edge length", lineno)
            lengths.append(abs(value))
        edges.append((i - 1, j - 1))
    if count != nnz:
        raise MatrixMarketError(f"expected {nnz} entries, found {count}", lineno)
    try:
        return Graph.from_edges(rows, edges, lengths if weighted else None)
    except GraphError as exc:
        raise StructuralError(str(exc)) from exc


def load_matrix_market(path: str | os.PathLike, weighted: bool = False) -> Graph:
    """Read a ``.mtx`` file, transparently decompressing ``.gz`` / ``.bz2``."""
    path = os.fspath(path)
    opener = gzip.open if path.endswith(".gz") else bz2.open if path.endswith(".bz2") else open
    with opener(path, "rb") as fh:
        return parse_matrix_market(fh.read(), weighted=weighted)


def format_matrix_market(g: Graph, weighted: bool = False, comment: str | None = None) -> str:
    """Lower-triangle symmetric coordinate text for ``g``."""
    fld = "real" if weighted else "pattern"
    out = [f"%%MatrixMarket matrix coordinate {fld} symmetric"]
    if comment:
        out += [f"% {line}" for line in comment.splitlines()]
    out.append(f"{g.n} {g.n} {g.m}")
    for u, v, ln in zip(g.edge_u.tolist(), g.edge_v.tolist(), g.edge_len.tolist()):
        out.append(f"{v + 1} {u + 1} {ln!r}" if weighted else f"{v + 1} {u + 1}")
    return "\n".join(out) + "\n"
