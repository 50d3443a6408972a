"""Bare-bones SVG line and bar charts; the CSV files are the real output."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

_W, _H, _PAD = 640, 400, 50
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _scale(vals, lo, hi, a, b):
    span = hi - lo if hi > lo else 1.0
    return a + (np.asarray(vals, dtype=float) - lo) * (b - a) / span


def _frame(title: str, xlo, xhi, ylo, yhi) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{_W / 2}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        f'<rect x="{_PAD}" y="{_PAD}" width="{_W - 2 * _PAD}" height="{_H - 2 * _PAD}" '
        'fill="none" stroke="black"/>',
        f'<text x="{_PAD}" y="{_H - 20}" font-size="11">{xlo:.4g}</text>',
        f'<text x="{_W - _PAD}" y="{_H - 20}" font-size="11" text-anchor="end">{xhi:.4g}</text>',
        f'<text x="5" y="{_H - _PAD}" font-size="11">{ylo:.4g}</text>',
        f'<text x="5" y="{_PAD + 10}" font-size="11">{yhi:.4g}</text>',
    ]


def line_plot(path, series: Mapping[str, tuple[Sequence, Sequence]], title: str = "") -> Path:
    xs = np.concatenate([np.asarray(x, float) for x, _ in series.values()])
    ys = np.concatenate([np.asarray(y, float) for _, y in series.values()])
    xlo, xhi, ylo, yhi = xs.min(), xs.max(), ys.min(), ys.max()
    out = _frame(title, xlo, xhi, ylo, yhi)
    for i, (name, (x, y)) in enumerate(series.items()):
        px = _scale(x, xlo, xhi, _PAD, _W - _PAD)
        py = _scale(y, ylo, yhi, _H - _PAD, _PAD)
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
        color = _COLORS[i % len(_COLORS)]
        out.append(f'<polyline fill="none" stroke="{color}" points="{pts}"/>')
        out.append(
            f'<text x="{_W - _PAD - 5}" y="{_PAD + 15 * (i + 1)}" font-size="11" '
            f'text-anchor="end" fill="{color}">{name}</text>'
        )
    out.append("</svg>")
    path = Path(path)
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return path


def bar_plot(path, x: Sequence, heights: Sequence, title: str = "") -> Path:
    x = np.asarray(x, float)
    h = np.asarray(heights, float)
    xlo, xhi = x.min() - 0.5, x.max() + 0.5
    out = _frame(title, xlo, xhi, 0.0, h.max() if h.size else 1.0)
    width = (_W - 2 * _PAD) / max(xhi - xlo, 1.0)
    px = _scale(x - 0.5, xlo, xhi, _PAD, _W - _PAD)
    top = _scale(h, 0.0, h.max() if h.size and h.max() > 0 else 1.0, _H - _PAD, _PAD)
    for a, b in zip(px, top):
        out.append(
            f'<rect x="{a:.2f}" y="{b:.2f}" width="{width:.2f}" '
            f'height="{_H - _PAD - b:.2f}" fill="{_COLORS[0]}"/>'
        )
    out.append("</svg>")
    path = Path(path)
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return path
