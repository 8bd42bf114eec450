"""Node-link diagrams as SVG 1.1."""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

import numpy as np

from .graph import Graph


def _f(x: float) -> str:
    return f"{x:.6g}"


def emit_svg(X: np.ndarray, g: Graph, colors: list[str] | None = None,
             margin: float = 0.05, radius_frac: float = 0.004,
             stroke: str = "#999999", fill: str = "#1f3b73") -> str:
    """Render ``X`` (first two columns) with edges as lines and vertices as circles.

    The viewBox is the layout bounding box padded by ``margin`` of its larger
    side; circle radius is ``radius_frac`` of the larger viewBox side.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] != g.n or X.shape[1] < 2:
        raise ValueError("layout must be an (n, >=2) array matching the graph")
    if not np.all(np.isfinite(X)):
        raise ValueError("layout has non-finite coordinates")
    if colors is not None and len(colors) != g.n:
        raise ValueError("one colour per vertex required")
    if g.n:
        lo = X[:, :2].min(axis=0)
        hi = X[:, :2].max(axis=0)
    else:
        lo = hi = np.zeros(2)
    size = hi - lo
    extent = max(float(size.max()), 1e-9) if g.n else 1.0
    pad = margin * extent
    x0, y0 = lo - pad
    w, h = size + 2 * pad
    w, h = max(w, 2 * pad), max(h, 2 * pad)
    r = radius_frac * max(w, h)
    sw = r / 2

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(w)} {_f(h)}">',
        f'<g stroke={quoteattr(stroke)} stroke-width="{_f(sw)}">',
    ]
    for u, v in zip(g.edge_u.tolist(), g.edge_v.tolist()):
        out.append(f'<line x1="{_f(X[u, 0])}" y1="{_f(X[u, 1])}" '
                   f'x2="{_f(X[v, 0])}" y2="{_f(X[v, 1])}"/>')
    out.append("</g>")
    out.append(f"<g fill={quoteattr(fill)}>")
    for i in range(g.n):
        attr = f" fill={quoteattr(colors[i])}" if colors is not None else ""
        out.append(f'<circle cx="{_f(X[i, 0])}" cy="{_f(X[i, 1])}" r="{_f(r)}"{attr}/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
