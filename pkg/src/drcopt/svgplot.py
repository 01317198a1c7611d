"""Minimal dependency-free SVG line charts for the experiment outputs."""

from __future__ import annotations

from dataclasses import dataclass, field

WIDTH, HEIGHT = 640, 420
MARGIN = 60


@dataclass(frozen=True)
class Series:
    label: str
    points: list[tuple[float, float]]
    color: str = "black"
    dash: str = ""  # SVG stroke-dasharray, empty for solid


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def write_line_chart(
    path,
    series: list[Series],
    x_label: str = "",
    y_label: str = "",
    title: str = "",
) -> None:
    xs = [p[0] for s in series for p in s.points]
    ys = [p[1] for s in series for p in s.points]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo, y_hi = y_lo - pad, y_hi + pad

    def sx(x):
        return MARGIN + (x - x_lo) / (x_hi - x_lo) * (WIDTH - 2 * MARGIN)

    def sy(y):
        return HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - 2 * MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2}" y="24" text-anchor="middle" font-size="14">{title}</text>'
        )
    if x_label:
        parts.append(
            f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" text-anchor="middle" '
            f'font-size="12">{x_label}</text>'
        )
    if y_label:
        parts.append(
            f'<text x="16" y="{HEIGHT / 2}" text-anchor="middle" font-size="12" '
            f'transform="rotate(-90 16 {HEIGHT / 2})">{y_label}</text>'
        )
    for t in _ticks(x_lo, x_hi):
        parts.append(
            f'<text x="{sx(t):.1f}" y="{HEIGHT - MARGIN + 16}" text-anchor="middle" '
            f'font-size="10">{t:g}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        parts.append(
            f'<text x="{MARGIN - 6}" y="{sy(t) + 3:.1f}" text-anchor="end" '
            f'font-size="10">{t:.4g}</text>'
        )
    for idx, s in enumerate(series):
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in s.points)
        dash = f' stroke-dasharray="{s.dash}"' if s.dash else ""
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{s.color}" stroke-width="1.5"{dash}/>'
        )
        ly = MARGIN + 16 * idx
        parts.append(
            f'<line x1="{WIDTH - MARGIN - 130}" y1="{ly}" x2="{WIDTH - MARGIN - 105}" '
            f'y2="{ly}" stroke="{s.color}" stroke-width="1.5"{dash}/>'
        )
        parts.append(
            f'<text x="{WIDTH - MARGIN - 100}" y="{ly + 4}" font-size="11">{s.label}</text>'
        )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
