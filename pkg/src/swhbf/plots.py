"""Minimal deterministic SVG plotting.

Hand-rolled so that figure files are byte-stable across runs: no timestamps,
no library version strings, fixed float formatting. Only what the harness
needs: multi-series line plots with axes, ticks, and a legend.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

_WIDTH = 880
_HEIGHT = 520
_MARGIN_LEFT = 80
_MARGIN_RIGHT = 200
_MARGIN_TOP = 50
_MARGIN_BOTTOM = 70

_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)


def _fmt(x: float) -> str:
    return f"{float(x):.2f}"


def _tick_label(x: float) -> str:
    return f"{float(x):.6g}"


def _axis_range(values: np.ndarray) -> tuple[float, float]:
    lo = float(np.min(values))
    hi = float(np.max(values))
    if hi <= lo:
        pad = 0.5 if lo == 0 else abs(lo) * 0.05 + 1e-12
        return lo - pad, hi + pad
    return lo, hi


def svg_line_plot(
    series,
    path,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
) -> Path:
    """Write a line plot to ``path``.

    Args:
        series: iterable of ``(label, xs, ys)`` triples.
        path: output file; parent directories must exist.

    Returns:
        The output path.
    """
    series = [(str(label), np.asarray(xs, float), np.asarray(ys, float)) for label, xs, ys in series]
    if not series or any(xs.size == 0 or xs.size != ys.size for _, xs, ys in series):
        raise ValueError("each series needs matching, non-empty x and y arrays")
    x_lo, x_hi = _axis_range(np.concatenate([xs for _, xs, _ in series]))
    y_lo, y_hi = _axis_range(np.concatenate([ys for _, _, ys in series]))

    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def px(x: float) -> float:
        return _MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _MARGIN_TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_MARGIN_LEFT}" y="{_MARGIN_TOP}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#333333" stroke-width="1"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_WIDTH // 2}" y="28" text-anchor="middle" '
            f'font-family="sans-serif" font-size="16">{title}</text>'
        )
    for tick in np.linspace(x_lo, x_hi, 6):
        x = px(float(tick))
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(_MARGIN_TOP + plot_h)}" '
            f'x2="{_fmt(x)}" y2="{_fmt(_MARGIN_TOP + plot_h + 5)}" stroke="#333333"/>'
        )
        parts.append(
            f'<text x="{_fmt(x)}" y="{_fmt(_MARGIN_TOP + plot_h + 20)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_tick_label(tick)}</text>'
        )
    for tick in np.linspace(y_lo, y_hi, 6):
        y = py(float(tick))
        parts.append(
            f'<line x1="{_fmt(_MARGIN_LEFT - 5)}" y1="{_fmt(y)}" '
            f'x2="{_fmt(_MARGIN_LEFT)}" y2="{_fmt(y)}" stroke="#333333"/>'
        )
        parts.append(
            f'<text x="{_fmt(_MARGIN_LEFT - 9)}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_tick_label(tick)}</text>'
        )
    if xlabel:
        parts.append(
            f'<text x="{_MARGIN_LEFT + plot_w // 2}" y="{_HEIGHT - 22}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{xlabel}</text>'
        )
    if ylabel:
        cy = _MARGIN_TOP + plot_h // 2
        parts.append(
            f'<text x="22" y="{cy}" text-anchor="middle" font-family="sans-serif" '
            f'font-size="13" transform="rotate(-90 22 {cy})">{ylabel}</text>'
        )
    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        ly = _MARGIN_TOP + 16 + 18 * i
        lx = _WIDTH - _MARGIN_RIGHT + 14
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{lx + 30}" y="{ly}" font-family="sans-serif" font-size="12">{label}</text>'
        )
    parts.append("</svg>")
    out = Path(path)
    out.write_text("\n".join(parts) + "\n", encoding="utf-8")
    return out
