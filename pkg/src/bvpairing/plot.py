"""Self-contained SVG drawings of functions, fields and measures.

Coordinates are converted to floats only here, for drawing.
"""

from __future__ import annotations

from html import escape

from .core import PiecewiseAffine
from .measure import SignedMeasure

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf")


def svg_plot(
    functions: dict[str, PiecewiseAffine] | None = None,
    measures: dict[str, SignedMeasure] | None = None,
    width: int = 640,
    height: int = 360,
    title: str = "",
) -> str:
    """Piecewise paths for functions and densities; atoms as vertical impulses."""
    functions = functions or {}
    measures = measures or {}
    xs, ys = [], [0.0]
    for f in list(functions.values()) + [m.density for m in measures.values()]:
        xs += [float(k) for k in f.knots]
        ys += [float(v) for v in f.lo_values + f.hi_values]
    for m in measures.values():
        xs += [float(m.domain.a), float(m.domain.b)]
        ys += [float(w) for _, w in m.atoms]
    if not xs:
        xs = [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 1, y1 + 1
    pad = 40
    sx = (width - 2 * pad) / (x1 - x0)
    sy = (height - 2 * pad) / (y1 - y0)

    def X(x):
        return pad + (float(x) - x0) * sx

    def Y(y):
        return height - pad - (float(y) - y0) * sy

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{Y(0):.2f}" x2="{width - pad}" y2="{Y(0):.2f}" stroke="#999" stroke-width="1"/>',
    ]
    if title:
        out.append(f'<text x="{pad}" y="20" font-family="sans-serif" font-size="14">{escape(title)}</text>')
    legend_y = 20
    for n, (name, f) in enumerate(list(functions.items()) + [(k, m.density) for k, m in measures.items()]):
        color = PALETTE[n % len(PALETTE)]
        d = " ".join(
            f"M{X(l):.2f},{Y(vl):.2f} L{X(h):.2f},{Y(vh):.2f}" for l, h, vl, vh in f.pieces()
        )
        out.append(f'<path d="{d}" fill="none" stroke="{color}" stroke-width="2"/>')
        if name in measures:
            for x, w in measures[name].atoms:
                out.append(
                    f'<line x1="{X(x):.2f}" y1="{Y(0):.2f}" x2="{X(x):.2f}" y2="{Y(w):.2f}" '
                    f'stroke="{color}" stroke-width="3"/>'
                )
                out.append(f'<circle cx="{X(x):.2f}" cy="{Y(w):.2f}" r="4" fill="{color}"/>')
        out.append(
            f'<text x="{width - pad - 120}" y="{legend_y}" font-family="sans-serif" '
            f'font-size="12" fill="{color}">{escape(name)}</text>'
        )
        legend_y += 14
    out.append("</svg>")
    return "\n".join(out) + "\n"
