"""Static SVG figures: raster component maps and error curves."""

from __future__ import annotations

import colorsys
from fractions import Fraction
from typing import Sequence

import numpy as np


def _palette(k: int) -> list[str]:
    out = []
    for i in range(k):
        r, g, b = colorsys.hsv_to_rgb((i * 0.618034) % 1.0, 0.55, 0.9)
        out.append(f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}")
    return out


def components_svg(labels: np.ndarray, count: int, cell: int = 6, title: str = "") -> str:
    """One rect per set cell, colored by component; row 0 is drawn at the bottom."""
    rows, cols = labels.shape
    w, h = cols * cell, rows * cell
    colors = _palette(count)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h + 16}" viewBox="0 0 {w} {h + 16}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff" stroke="#999999"/>',
    ]
    for j in range(rows):
        for i in range(cols):
            lab = int(labels[j, i])
            if lab:
                y = (rows - 1 - j) * cell
                parts.append(f'<rect x="{i * cell}" y="{y}" width="{cell}" height="{cell}" fill="{colors[lab - 1]}"/>')
    parts.append(f'<text x="2" y="{h + 12}" font-size="10" font-family="monospace">'
                 f'{title} components={count}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def error_curves_svg(levels: Sequence[int], series: dict[str, Sequence[Fraction]],
                     bound: Sequence[Fraction] | None = None, width: int = 360, height: int = 220) -> str:
    """Max error per level on a log2 axis; zeros are pinned to the floor."""
    pad = 30
    floor = -(max(levels) + 2)

    def ly(v):
        if v <= 0:
            return floor
        return max(floor, float(np.log2(float(v))))

    def sx(n):
        span = max(levels) - min(levels) or 1
        return pad + (n - min(levels)) * (width - 2 * pad) / span

    def sy(v):
        return pad + (0 - v) * (height - 2 * pad) / (0 - floor)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
             f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
             f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="#000"/>',
             f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="#000"/>']
    curves = dict(series)
    if bound is not None:
        curves["bound"] = bound
    for (name, vals), color in zip(curves.items(), _palette(len(curves))):
        pts = " ".join(f"{sx(n):.1f},{sy(ly(v)):.1f}" for n, v in zip(levels, vals))
        dash = ' stroke-dasharray="4 3"' if name == "bound" else ""
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>')
    for k, (name, color) in enumerate(zip(curves, _palette(len(curves)))):
        parts.append(f'<text x="{width - pad - 90}" y="{pad + 12 * k}" font-size="10" fill="{color}" '
                     f'font-family="monospace">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
