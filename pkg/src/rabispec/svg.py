"""Tiny dependency-free SVG line-plot writer."""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
DASHES = ["", "6,3", "2,2", "8,3,2,3", "4,4", "1,3"]


def _ticks(lo, hi, n=5):
    if hi <= lo:
        return [lo]
    return list(np.linspace(lo, hi, n))


def line_plot(
    path,
    x,
    series: dict[str, np.ndarray],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    vlines=(),
    hlines=(),
    width: int = 640,
    height: int = 360,
) -> Path:
    """Render one or more series sharing an x axis; ``vlines``/``hlines`` are dotted guides."""
    x = np.asarray(x, dtype=float)
    ml, mr, mt, mb = 64, 16, 28, 44
    pw, ph = width - ml - mr, height - mt - mb
    ys = [np.asarray(v, dtype=float) for v in series.values()]
    x0, x1 = (float(x.min()), float(x.max())) if x.size else (0.0, 1.0)
    finite = [y[np.isfinite(y)] for y in ys if y.size]
    y0 = min([0.0] + [float(y.min()) for y in finite if y.size])
    y1 = max([1e-300] + [float(y.max()) for y in finite if y.size])
    if x1 == x0:
        x1 = x0 + 1.0
    y1 = y1 * 1.05 if y1 > 0 else 1.0

    def px(v):
        return ml + (v - x0) / (x1 - x0) * pw

    def py(v):
        return mt + ph - (v - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<text x="{px(t):.2f}" y="{mt + ph + 14}" text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{ml - 4}" y="{py(t) + 4:.2f}" text-anchor="end">{t:.3g}</text>')
    for v in vlines:
        if x0 <= v <= x1:
            out.append(
                f'<line x1="{px(v):.2f}" y1="{mt}" x2="{px(v):.2f}" y2="{mt + ph}" '
                'stroke="gray" stroke-dasharray="2,3"/>'
            )
    for v in hlines:
        if y0 <= v <= y1:
            out.append(
                f'<line x1="{ml}" y1="{py(v):.2f}" x2="{ml + pw}" y2="{py(v):.2f}" '
                'stroke="gray" stroke-dasharray="2,3"/>'
            )
    for k, (name, y) in enumerate(zip(series, ys)):
        if not x.size:
            continue
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y) if np.isfinite(b))
        dash = DASHES[k % len(DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        color = COLORS[k % len(COLORS)]
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2"{dash_attr} points="{pts}"/>')
        out.append(
            f'<text x="{ml + pw - 4}" y="{mt + 14 + 13 * k}" text-anchor="end" fill="{color}">'
            f"{escape(name)}</text>"
        )
    out.append(f'<text x="{ml + pw / 2}" y="{mt - 10}" text-anchor="middle">{escape(title)}</text>')
    out.append(f'<text x="{ml + pw / 2}" y="{height - 8}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="14" y="{mt + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 14 {mt + ph / 2})">{escape(ylabel)}</text>'
    )
    out.append("</svg>")
    path = Path(path)
    path.write_text("\n".join(out) + "\n")
    return path
