"""Minimal standalone SVG line plots (no plotting library needed)."""

from __future__ import annotations

from typing import Mapping, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .numerics import DomainError

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
_DASHES = ["", "6,4", "2,3", "8,3,2,3"]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def render_svg(
    table: Mapping[str, Sequence[float]],
    x_key: str,
    y_keys: Sequence[str],
    title: str = "",
    width: int = 640,
    height: int = 420,
) -> str:
    """SVG text with axes, one polyline per y column and a legend."""
    if not y_keys:
        raise DomainError("nothing to plot: no series given")
    x = np.asarray(table[x_key], dtype=float)
    ys = [np.asarray(table[k], dtype=float) for k in y_keys]
    if x.size == 0 or any(y.size == 0 for y in ys):
        raise DomainError("nothing to plot: empty series")
    if any(y.shape != x.shape for y in ys):
        raise DomainError("series lengths differ")
    if not (np.all(np.isfinite(x)) and all(np.all(np.isfinite(y)) for y in ys)):
        raise DomainError("series contain non-finite values")

    left, right, top, bottom = 60, 20, 30 if title else 15, 40
    pw, ph = width - left - right, height - top - bottom
    x0, x1 = float(x.min()), float(x.max())
    y0 = min(float(y.min()) for y in ys)
    y1 = max(float(y.max()) for y in ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def px(v):
        return left + (v - x0) / (x1 - x0) * pw

    def py(v):
        return top + (y1 - v) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>')
    # axes
    out.append(f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>')
    out.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>')
    for v in np.linspace(x0, x1, 5):
        out.append(f'<line x1="{_fmt(px(v))}" y1="{top + ph}" x2="{_fmt(px(v))}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{_fmt(px(v))}" y="{top + ph + 18}" text-anchor="middle" font-size="11">{v:.4g}</text>')
    for v in np.linspace(y0, y1, 5):
        out.append(f'<line x1="{left - 5}" y1="{_fmt(py(v))}" x2="{left}" y2="{_fmt(py(v))}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{_fmt(py(v) + 4)}" text-anchor="end" font-size="11">{v:.3g}</text>')
    out.append(f'<text x="{left + pw / 2}" y="{height - 5}" text-anchor="middle" font-size="12">{escape(x_key)}</text>')
    for i, (key, y) in enumerate(zip(y_keys, ys)):
        color = _COLORS[i % len(_COLORS)]
        dash = _DASHES[i % len(_DASHES)]
        pts = " ".join(f"{_fmt(px(a))},{_fmt(py(b))}" for a, b in zip(x, y))
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2"{dash_attr} points="{pts}"/>')
        ly = top + 14 + 16 * i
        out.append(f'<line x1="{left + pw - 150}" y1="{ly}" x2="{left + pw - 125}" y2="{ly}" stroke="{color}"{dash_attr}/>')
        out.append(f'<text x="{left + pw - 120}" y="{ly + 4}" font-size="11">{escape(key)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def plot_svg(table: Mapping[str, Sequence[float]], path: str, x_key: str | None = None,
             y_keys: Sequence[str] | None = None, title: str = "") -> None:
    """Write an SVG of the y columns against ``x_key`` (default: first column)."""
    from .io import atomic_write_text

    keys = list(table)
    if not keys:
        raise DomainError("nothing to plot: empty table")
    x_key = x_key or keys[0]
    if y_keys is None:
        y_keys = [k for k in keys if k != x_key]
    atomic_write_text(path, render_svg(table, x_key, y_keys, title))
