"""Minimal hand-rolled SVG rendering for the CLT figure.

Only rect/polyline/line/text primitives, no plotting dependency.  All
coordinates are formatted with fixed precision so the same inputs always
produce identical bytes.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

__all__ = ["histogram_kde_svg"]

WIDTH, HEIGHT = 640, 440
MARGIN_LEFT, MARGIN_RIGHT = 64, 20
MARGIN_TOP, MARGIN_BOTTOM = 36, 48


def _fmt(v: float) -> str:
    return format(float(v), ".2f")


def _ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / (count - 1)
    mag = 10.0 ** np.floor(np.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * mag
        if step >= raw:
            break
    first = np.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(float(t))
        t += step
    return ticks


def histogram_kde_svg(
    sample,
    bins: int = 20,
    title: str = "standardized Zagreb indices",
) -> str:
    """Density-scaled histogram with a KDE polyline, as an SVG string."""
    from .experiments import histogram, kde  # local import to avoid a cycle

    x = np.asarray(sample, dtype=float)
    if x.size == 0:
        raise DomainError("cannot plot an empty sample")
    counts, edges = histogram(x, bins)
    grid, density = kde(x) if x.std(ddof=1) > 0 else (edges, np.zeros_like(edges))
    width = edges[1] - edges[0] if len(edges) > 1 else 1.0
    bar_density = counts / (len(x) * width) if width > 0 else counts.astype(float)

    x_lo = min(float(edges[0]), float(grid[0]))
    x_hi = max(float(edges[-1]), float(grid[-1]))
    y_hi = max(float(bar_density.max()), float(density.max()), 1e-9) * 1.08

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(v: float) -> float:
        return MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def sy(v: float) -> float:
        return MARGIN_TOP + (1.0 - v / y_hi) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}"'
        f' viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="22" text-anchor="middle"'
        f' font-family="sans-serif" font-size="14">{title}</text>',
    ]
    for i, d in enumerate(bar_density):
        x0, x1 = sx(float(edges[i])), sx(float(edges[i + 1]))
        y0 = sy(float(d))
        parts.append(
            f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(x1 - x0)}"'
            f' height="{_fmt(sy(0.0) - y0)}" fill="#cfd8e6" stroke="#7a8aa0"'
            f' stroke-width="0.5"/>'
        )
    points = " ".join(
        f"{_fmt(sx(float(gx)))},{_fmt(sy(float(gy)))}" for gx, gy in zip(grid, density)
    )
    parts.append(
        f'<polyline points="{points}" fill="none" stroke="#1f4e9c" stroke-width="2.5"/>'
    )
    axis_y = sy(0.0)
    parts.append(
        f'<line x1="{_fmt(MARGIN_LEFT)}" y1="{_fmt(axis_y)}"'
        f' x2="{_fmt(WIDTH - MARGIN_RIGHT)}" y2="{_fmt(axis_y)}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{_fmt(MARGIN_LEFT)}" y1="{_fmt(MARGIN_TOP)}"'
        f' x2="{_fmt(MARGIN_LEFT)}" y2="{_fmt(axis_y)}" stroke="black"/>'
    )
    for t in _ticks(x_lo, x_hi):
        px = sx(t)
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{_fmt(axis_y)}" x2="{_fmt(px)}"'
            f' y2="{_fmt(axis_y + 5)}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(px)}" y="{_fmt(axis_y + 20)}" text-anchor="middle"'
            f' font-family="sans-serif" font-size="11">{t:g}</text>'
        )
    for t in _ticks(0.0, y_hi, count=5):
        py = sy(t)
        parts.append(
            f'<line x1="{_fmt(MARGIN_LEFT - 5)}" y1="{_fmt(py)}"'
            f' x2="{_fmt(MARGIN_LEFT)}" y2="{_fmt(py)}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(MARGIN_LEFT - 9)}" y="{_fmt(py + 4)}" text-anchor="end"'
            f' font-family="sans-serif" font-size="11">{t:g}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
