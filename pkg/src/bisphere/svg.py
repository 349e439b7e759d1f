"""Minimal self-contained SVG line chart."""

from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

MARGIN_LEFT = 70
MARGIN_RIGHT = 20
MARGIN_TOP = 20
MARGIN_BOTTOM = 50
TICKS = 5


def _nice_range(lo: float, hi: float) -> tuple[float, float]:
    if hi > lo:
        return lo, hi
    pad = abs(lo) * 0.05 or 1.0
    return lo - pad, hi + pad


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def line_chart(xs: Sequence[float], ys: Sequence[float], x_label: str = "d", y_label: str = "Q1",
               width: int = 800, height: int = 500) -> str:
    """A single polyline of ys against xs with labelled axes and tick values."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need at least two points with matching lengths")
    if width <= MARGIN_LEFT + MARGIN_RIGHT or height <= MARGIN_TOP + MARGIN_BOTTOM:
        raise ValueError("chart is too small for its margins")
    if not all(math.isfinite(v) for v in list(xs) + list(ys)):
        raise ValueError("chart data must be finite")
    x_lo, x_hi = _nice_range(min(xs), max(xs))
    y_lo, y_hi = _nice_range(min(ys), max(ys))
    plot_w = width - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = height - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h

    path = " ".join(f"{'M' if i == 0 else 'L'}{px(x):.2f},{py(y):.2f}"
                    for i, (x, y) in enumerate(zip(xs, ys)))
    x0, y0 = MARGIN_LEFT, MARGIN_TOP + plot_h
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{MARGIN_TOP}" stroke="black"/>',
    ]
    for i in range(TICKS + 1):
        xv = x_lo + (x_hi - x_lo) * i / TICKS
        yv = y_lo + (y_hi - y_lo) * i / TICKS
        parts.append(f'<text x="{px(xv):.2f}" y="{y0 + 16}" font-size="11" '
                     f'text-anchor="middle">{_fmt(xv)}</text>')
        parts.append(f'<text x="{x0 - 6}" y="{py(yv) + 4:.2f}" font-size="11" '
                     f'text-anchor="end">{_fmt(yv)}</text>')
    parts += [
        f'<text x="{x0 + plot_w / 2:.2f}" y="{height - 12}" font-size="14" '
        f'text-anchor="middle">{escape(x_label)}</text>',
        f'<text x="16" y="{MARGIN_TOP + plot_h / 2:.2f}" font-size="14" text-anchor="middle" '
        f'transform="rotate(-90 16 {MARGIN_TOP + plot_h / 2:.2f})">{escape(y_label)}</text>',
        f'<path d="{path}" fill="none" stroke="#1f5fbf" stroke-width="1.5"/>',
        '</svg>',
    ]
    return "\n".join(parts) + "\n"
