"""SVG rendering of point sets.  This is the only place exact coordinates are
rounded, and only for display."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .kernel import Line, Point

SIZE = 480
PAD = 0.1


def _bounds(pts: list[Point]) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    if not pts:
        return Fraction(-1), Fraction(-1), Fraction(1), Fraction(1)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or Fraction(2)
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    half = span / 2
    return cx - half, cy - half, cx + half, cy + half


def _clip(ln: Line, box) -> Optional[tuple[tuple[float, float], tuple[float, float]]]:
    a, b, c = ln
    x0, y0, x1, y1 = box
    hits = []
    if b:
        for x in (x0, x1):
            y = Fraction(-a * x - c, b)
            if y0 <= y <= y1:
                hits.append((x, y))
    if a:
        for y in (y0, y1):
            x = Fraction(-b * y - c, a)
            if x0 <= x <= x1:
                hits.append((x, y))
    hits = sorted(set(hits))
    if len(hits) < 2:
        return None
    return hits[0], hits[-1]


def emit_svg(
    s: Iterable[Point],
    highlights: Iterable[Point] = (),
    lines: Iterable[Line] = (),
    viewport: Optional[tuple] = None,
) -> str:
    """Original points solid black, highlighted points gray, lines thin.

    ``viewport`` is ``(xmin, ymin, xmax, ymax)``; by default it is a square
    around every point with a margin.
    """
    base = sorted(set(s))
    extra = sorted(set(highlights) - set(base))
    if viewport is None:
        x0, y0, x1, y1 = _bounds(base + extra)
        m = (x1 - x0) * Fraction(PAD)
        viewport = (x0 - m, y0 - m, x1 + m, y1 + m)
    x0, y0, x1, y1 = (Fraction(v) for v in viewport)
    sx = SIZE / float(x1 - x0)
    sy = SIZE / float(y1 - y0)

    def px(p) -> str:
        # flip y so the figure reads with y pointing up
        return f'{float(p[0] - x0) * sx:.3f}" cy="{float(y1 - p[1]) * sy:.3f}'

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    for ln in lines:
        seg = _clip(ln, (x0, y0, x1, y1))
        if seg is None:
            continue
        (ax, ay), (bx, by) = seg
        out.append(
            f'<line x1="{float(ax - x0) * sx:.3f}" y1="{float(y1 - ay) * sy:.3f}" '
            f'x2="{float(bx - x0) * sx:.3f}" y2="{float(y1 - by) * sy:.3f}" '
            'stroke="#888" stroke-width="0.8"/>'
        )
    for p in base:
        out.append(f'<circle cx="{px(p)}" r="4" fill="black"/>')
    for p in extra:
        out.append(f'<circle cx="{px(p)}" r="4" fill="#999" stroke="black" stroke-width="0.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
