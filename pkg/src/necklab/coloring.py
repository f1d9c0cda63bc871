"""Step colorings of the real line and their color measures.

A :class:`StepColoring` colors a finite window ``[x_0, x_m)`` cell by cell
(half-open cells, so a breakpoint takes the color of the cell to its right)
and paints everything outside the window with ``default_color``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .exact_lp import as_rational, format_rational

Interval = Tuple[Fraction, Fraction]


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class StepColoring:
    k: int
    breakpoints: Tuple[Fraction, ...]
    cell_colors: Tuple[int, ...]
    default_color: int = 1

    def __post_init__(self):
        bps = tuple(as_rational(x) for x in self.breakpoints)
        colors = tuple(int(c) for c in self.cell_colors)
        if self.k < 1:
            raise ColoringError("color count must be positive")
        if len(colors) != max(len(bps) - 1, 0):
            raise ColoringError("need exactly one color per cell")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ColoringError("breakpoints must be strictly increasing")
        for c in colors + (self.default_color,):
            if not 1 <= c <= self.k:
                raise ColoringError(f"color {c} out of range 1..{self.k}")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "cell_colors", colors)

    @classmethod
    def constant(cls, color: int, k: int) -> "StepColoring":
        return cls(k, (), (), color)

    @classmethod
    def from_cells(cls, cells: Iterable[Tuple[object, object, int]], k: int, default: int = 1) -> "StepColoring":
        """Build from contiguous ``(start, end, color)`` triples."""
        cells = [(as_rational(a), as_rational(b), int(c)) for a, b, c in cells]
        if not cells:
            return cls.constant(default, k)
        for (a, b, _), (c, _, _) in zip(cells, cells[1:]):
            if b != c:
                kind = "overlap" if c < b else "gap"
                raise ColoringError(f"cells have a {kind} at {format_rational(b)}")
        bps = [cells[0][0]] + [b for _, b, _ in cells]
        return cls(k, tuple(bps), tuple(c for _, _, c in cells), default)

    @property
    def cells(self) -> List[Tuple[Fraction, Fraction, int]]:
        return list(zip(self.breakpoints, self.breakpoints[1:], self.cell_colors))

    def color_at(self, x) -> int:
        x = as_rational(x)
        bps = self.breakpoints
        if not self.cell_colors or x < bps[0] or x >= bps[-1]:
            return self.default_color
        lo, hi = 0, len(bps) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if bps[mid] <= x:
                lo = mid
            else:
                hi = mid
        return self.cell_colors[lo]

    def segments(self, lo, hi) -> List[Tuple[Fraction, Fraction, int]]:
        """Monochromatic pieces tiling ``[lo, hi]``, equal neighbours merged."""
        lo, hi = as_rational(lo), as_rational(hi)
        if lo >= hi:
            return []
        cuts = [lo] + [x for x in self.breakpoints if lo < x < hi] + [hi]
        out: List[Tuple[Fraction, Fraction, int]] = []
        for a, b in zip(cuts, cuts[1:]):
            c = self.color_at(a)
            if out and out[-1][2] == c:
                out[-1] = (out[-1][0], b, c)
            else:
                out.append((a, b, c))
        return out

    def canonicalize(self) -> "StepColoring":
        """Merge equal neighbours and drop edge cells painted in the default color."""
        cells = self.segments(self.breakpoints[0], self.breakpoints[-1]) if self.cell_colors else []
        while cells and cells[0][2] == self.default_color:
            cells.pop(0)
        while cells and cells[-1][2] == self.default_color:
            cells.pop()
        return StepColoring.from_cells(cells, self.k, self.default_color)

    def relabel(self, perm: Sequence[int]) -> "StepColoring":
        """Apply the color permutation ``c -> perm[c - 1]``."""
        return StepColoring(self.k, self.breakpoints, tuple(perm[c - 1] for c in self.cell_colors),
                            perm[self.default_color - 1])

    def reflect(self, center=0) -> "StepColoring":
        """Mirror image about ``center`` (cells keep their half-open convention)."""
        center = as_rational(center)
        bps = tuple(2 * center - x for x in reversed(self.breakpoints))
        return StepColoring(self.k, bps, tuple(reversed(self.cell_colors)), self.default_color)

    def support_radius(self) -> int:
        """Smallest integer n >= 1 with every breakpoint inside [-n, n]."""
        if not self.breakpoints:
            return 1
        r = max(abs(self.breakpoints[0]), abs(self.breakpoints[-1]))
        return max(1, math.ceil(r))


@dataclass(frozen=True)
class RationalEnclosure:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty enclosure")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def interval_family(members: Iterable[Tuple[object, object]]) -> Tuple[Interval, ...]:
    """Validate a family of closed intervals with pairwise disjoint interiors."""
    out = sorted((as_rational(a), as_rational(b)) for a, b in members)
    for a, b in out:
        if a >= b:
            raise ColoringError(f"degenerate member [{format_rational(a)}, {format_rational(b)}]")
    for (_, b), (c, _) in zip(out, out[1:]):
        if c < b:
            raise ColoringError("family members overlap")
    return tuple(out)


def _check_color(f: StepColoring, i: int):
    if not 1 <= i <= f.k:
        raise ColoringError(f"color {i} out of range 1..{f.k}")


def color_measure(f: StepColoring, family: Iterable[Tuple[object, object]], i: int) -> Fraction:
    """Lebesgue measure of the color-``i`` points lying in the union of ``family``."""
    _check_color(f, i)
    total = Fraction(0)
    for a, b in interval_family(family):
        for lo, hi, c in f.segments(a, b):
            if c == i:
                total += hi - lo
    return total


def measure_vector(f: StepColoring, family: Iterable[Tuple[object, object]]) -> Tuple[Fraction, ...]:
    out = [Fraction(0)] * f.k
    for a, b in interval_family(family):
        for lo, hi, c in f.segments(a, b):
            out[c - 1] += hi - lo
    return tuple(out)


def _disagreement(f: StepColoring, g: StepColoring, lo: Fraction, hi: Fraction) -> Fraction:
    cuts = sorted({lo, hi} | {x for x in f.breakpoints + g.breakpoints if lo < x < hi})
    return sum((b - a for a, b in zip(cuts, cuts[1:]) if f.color_at(a) != g.color_at(a)), Fraction(0))


def _same_k(f: StepColoring, g: StepColoring):
    if f.k != g.k:
        raise ColoringError(f"mismatched color counts {f.k} and {g.k}")


def window_distance(f: StepColoring, g: StepColoring, n: int) -> Fraction:
    """Normalized disagreement ``lambda{x in [-n, n] : f(x) != g(x)} / n``."""
    _same_k(f, g)
    if n < 1:
        raise ColoringError("window radius must be a positive integer")
    return _disagreement(f, g, Fraction(-n), Fraction(n)) / n


def metric_distance(f: StepColoring, g: StepColoring, precision_bits: int = 32) -> RationalEnclosure:
    """Enclose ``sum_{n>=1} d_n(f, g) / 2^(n+1)`` to width at most ``2^-precision_bits``.

    Past the radius ``n0`` that contains every breakpoint of both colorings,
    the disagreement measure grows as ``A + B (n - n0)`` with ``B`` either 0
    or 2, so the tail is ``B/2^(M+1) + beta * sum_{n>M} 1/(n 2^(n+1))``.
    The last sum is bracketed by its first term and ``1/((M+1) 2^(M+1))``.
    """
    _same_k(f, g)
    if precision_bits < 1:
        raise ColoringError("precision_bits must be positive")
    n0 = max(f.support_radius(), g.support_radius())
    area = _disagreement(f, g, Fraction(-n0), Fraction(n0))
    growth = 2 if f.default_color != g.default_color else 0
    beta = area - growth * n0
    target = Fraction(1, 2 ** precision_bits)

    partial = Fraction(0)
    m = 0
    while True:
        m += 1
        if m <= n0:
            d_m = _disagreement(f, g, Fraction(-m), Fraction(m)) / m
        else:
            d_m = growth + beta / m
        partial += d_m / 2 ** (m + 1)
        if m < n0:
            continue
        upper = Fraction(1, (m + 1) * 2 ** (m + 1))
        lower = Fraction(1, (m + 1) * 2 ** (m + 2))
        if abs(beta) * (upper - lower) <= target:
            break
    base = partial + Fraction(growth, 2 ** (m + 1))
    ends = (base + beta * lower, base + beta * upper)
    return RationalEnclosure(min(ends), max(ends))


def make_interval_coloring(n: int, block_colors: Sequence[int], k: int, default: int = 1) -> StepColoring:
    """Equal half-open blocks tiling ``[-n, n)``, one color each."""
    if not block_colors:
        raise ColoringError("block list is empty")
    if n < 1:
        raise ColoringError("window radius must be a positive integer")
    N = len(block_colors)
    width = Fraction(2 * n, N)
    bps = tuple(-n + j * width for j in range(N + 1))
    return StepColoring(k, bps, tuple(block_colors), default)


def is_interval_coloring(g: StepColoring, n: int) -> bool:
    """Membership in I_n: some equal-length block partition of [-n, n) is monochromatic."""
    inner = [x for x in g.breakpoints if -n < x < n]
    if not inner:
        return True
    # the coarsest admissible block count is the lcm of the denominators of (x + n) / (2n)
    N = math.lcm(*(((x + n) / (2 * n)).denominator for x in inner))
    width = Fraction(2 * n, N)
    return all(len({c for _, _, c in g.segments(-n + j * width, -n + (j + 1) * width)}) == 1 for j in range(N))


def approximate_by_interval_coloring(f: StepColoring, n: int, eps, t: int = 1,
                                     precision_bits: int = 40) -> StepColoring:
    """An interval coloring on ``[-n, n]`` within metric distance ``eps`` of ``f``.

    Starts from ``N = ceil(8 t n / eps)`` blocks colored by the color of ``f``
    at each block midpoint, keeps ``f`` outside the window, and doubles ``N``
    until the enclosure of ``d(f, g)`` certifies ``hi < eps``.
    """
    eps = as_rational(eps)
    if eps <= 0:
        raise ColoringError("eps must be positive")
    if n < 1 or t < 1:
        raise ColoringError("n and t must be positive integers")
    N = math.ceil(8 * t * n / eps)
    while True:
        g = _blocks_with_outside(f, n, N)
        if metric_distance(f, g, precision_bits).hi < eps:
            return g
        N *= 2


def _blocks_with_outside(f: StepColoring, n: int, N: int) -> StepColoring:
    width = Fraction(2 * n, N)
    inside = [(-n + j * width, -n + (j + 1) * width) for j in range(N)]
    cells = [(a, b, f.color_at((a + b) / 2)) for a, b in inside]
    left = [c for c in f.segments(min(f.breakpoints[0], -n), -n)] if f.breakpoints else []
    right = [c for c in f.segments(n, max(f.breakpoints[-1], n))] if f.breakpoints else []
    return StepColoring.from_cells(left + cells + right, f.k, f.default_color)


# -- canonical text format ---------------------------------------------------

def format_coloring(f: StepColoring) -> str:
    lines = [f"coloring k={f.k} default={f.default_color}"]
    for a, b, c in f.cells:
        lines.append(f"cell {format_rational(a)} {format_rational(b)} {c}")
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> StepColoring:
    header = None
    cells = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if header is None:
                if parts[0] != "coloring":
                    raise ColoringError("missing 'coloring' header")
                opts = dict(p.split("=", 1) for p in parts[1:])
                header = (int(opts["k"]), int(opts["default"]))
            elif parts[0] == "cell" and len(parts) == 4:
                cells.append((as_rational(parts[1]), as_rational(parts[2]), int(parts[3])))
            else:
                raise ColoringError(f"unrecognized record {line!r}")
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise ColoringError(f"line {lineno}: {exc}") from exc
    if header is None:
        raise ColoringError("empty coloring file")
    k, default = header
    for a, b, _ in cells:
        if a >= b:
            raise ColoringError(f"empty cell [{format_rational(a)}, {format_rational(b)})")
    return StepColoring.from_cells(cells, k, default)
