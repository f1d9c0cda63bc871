"""Static SVG strips: a coloring drawn left to right, cuts as vertical ticks."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .coloring import StepColoring
from .exact_lp import format_rational

PALETTE = ("#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
           "#42d4f4", "#f032e6", "#bfef45", "#fabed4", "#469990")


def render_strip(f: StepColoring, lo: Fraction, hi: Fraction, cuts: Sequence[Fraction] = (),
                 assignment: Optional[Sequence[int]] = None, width: int = 800, height: int = 60) -> str:
    lo, hi = Fraction(lo), Fraction(hi)
    span = hi - lo
    pad = 10

    def px(x) -> float:
        return pad + float((Fraction(x) - lo) / span) * width

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 2 * pad}" height="{height + 40}">']
    for a, b, c in f.segments(lo, hi):
        out.append(f'<rect x="{px(a):.4f}" y="{pad}" width="{max(px(b) - px(a), 0.01):.4f}" '
                   f'height="{height}" fill="{PALETTE[(c - 1) % len(PALETTE)]}"><title>'
                   f'[{format_rational(a)}, {format_rational(b)}) color {c}</title></rect>')
    for x in cuts:
        out.append(f'<line x1="{px(x):.4f}" y1="{pad - 5}" x2="{px(x):.4f}" y2="{pad + height + 5}" '
                   'stroke="black" stroke-width="2"/>')
    if assignment is not None:
        for (a, b), part in zip(_pairs(cuts), assignment):
            out.append(f'<text x="{(px(a) + px(b)) / 2:.4f}" y="{pad + height + 22}" '
                       f'text-anchor="middle" font-size="12">{part}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _pairs(cuts: Sequence[Fraction]) -> Sequence[Tuple[Fraction, Fraction]]:
    return list(zip(cuts, cuts[1:]))
