"""Tiny dependency-free SVG line plots.

One polyline per series over a shared numeric x-axis; coordinates are
formatted with fixed decimals so output is byte-stable and diffable.
"""

from __future__ import annotations

WIDTH, HEIGHT = 720, 480
MARGIN = 60
PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2",
)


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def polyline_plot(series: dict, xlabel: str, ylabel: str, title: str) -> str:
    """series: name -> list[(x, y)] of floats, x strictly increasing."""
    pts = [p for pairs in series.values() for p in pairs]
    if not pts:
        raise ValueError("nothing to plot")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def sx(x):
        return MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2 * MARGIN)

    def sy(y):
        return HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2 * MARGIN)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" font-size="15" '
        f'font-family="monospace">{title}</text>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<text x="{WIDTH // 2}" y="{HEIGHT - 18}" text-anchor="middle" font-size="12" '
        f'font-family="monospace">{xlabel}</text>',
        f'<text x="18" y="{HEIGHT // 2}" text-anchor="middle" font-size="12" '
        f'font-family="monospace" transform="rotate(-90 18 {HEIGHT // 2})">{ylabel}</text>',
        f'<text x="{MARGIN}" y="{HEIGHT - MARGIN + 16}" font-size="10" '
        f'font-family="monospace">{x0:.6g}</text>',
        f'<text x="{WIDTH - MARGIN}" y="{HEIGHT - MARGIN + 16}" text-anchor="end" '
        f'font-size="10" font-family="monospace">{x1:.6g}</text>',
        f'<text x="{MARGIN - 4}" y="{HEIGHT - MARGIN}" text-anchor="end" font-size="10" '
        f'font-family="monospace">{y0:.6g}</text>',
        f'<text x="{MARGIN - 4}" y="{MARGIN + 4}" text-anchor="end" font-size="10" '
        f'font-family="monospace">{y1:.6g}</text>',
    ]
    for i, (name, pairs) in enumerate(series.items()):
        color = PALETTE[i % len(PALETTE)]
        path = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in pairs)
        lines.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{path}"/>')
        ly = MARGIN + 14 * (i + 1)
        lines.append(
            f'<line x1="{WIDTH - MARGIN - 110}" y1="{ly - 4}" x2="{WIDTH - MARGIN - 90}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="2"/>'
        )
        lines.append(
            f'<text x="{WIDTH - MARGIN - 84}" y="{ly}" font-size="11" '
            f'font-family="monospace">{name}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
