"""Exact search for fair splittings of step-colored necklaces.

Every query reduces to finitely many linear feasibility problems: once each
cut point is pinned to a monochromatic segment, the measure of every color
on every piece is an affine function of the cut positions.  The search
enumerates segment placements and part assignments in a fixed order, rejects
most of them with cheap integer interval bounds, and hands the survivors to
:func:`necklab.exact_lp.solve_feasibility`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .coloring import StepColoring, color_measure, interval_family
from .exact_lp import FeasibilitySystem, as_rational, eq, ge, le, solve_feasibility

# Strict cut ordering without a granularity bound is approximated by this
# fraction of the shortest segment.
STRICT_SLACK_BITS = 20


class SplitError(ValueError):
    pass


@dataclass(frozen=True)
class Splitting:
    cuts: Tuple[Fraction, ...]
    assignment: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.cuts) - 2

    @property
    def pieces(self) -> List[Tuple[Fraction, Fraction]]:
        return list(zip(self.cuts, self.cuts[1:]))

    @property
    def granularity(self) -> Fraction:
        return min(b - a for a, b in self.pieces)

    def part(self, p: int) -> List[Tuple[Fraction, Fraction]]:
        return [piece for piece, a in zip(self.pieces, self.assignment) if a == p]


@dataclass(frozen=True)
class FamilyPartition:
    members: Tuple[Tuple[Fraction, Fraction], ...]
    assignment: Tuple[int, ...]

    @property
    def endpoints(self) -> List[Fraction]:
        return sorted({x for m in self.members for x in m})

    def part(self, p: int) -> List[Tuple[Fraction, Fraction]]:
        return [m for m, a in zip(self.members, self.assignment) if a == p]


@dataclass(frozen=True)
class SplitResult:
    found: bool
    witness: Optional[object] = None
    interval: Optional[Tuple[Fraction, Fraction]] = None


def is_fair(f: StepColoring, parts: Sequence[Sequence[Tuple[Fraction, Fraction]]]) -> bool:
    """True when every part holds the same measure of every color (recomputed from scratch)."""
    pieces = [m for part in parts for m in part]
    if not pieces or any(not part for part in parts):
        return False
    q = len(parts)
    for c in range(1, f.k + 1):
        total = color_measure(f, pieces, c)
        if any(q * color_measure(f, part, c) != total for part in parts):
            return False
    return True


def verify_splitting(f: StepColoring, s: Splitting, q: int) -> bool:
    if any(a >= b for a, b in s.pieces) or len(s.assignment) != len(s.pieces):
        return False
    return is_fair(f, [s.part(p) for p in range(1, q + 1)])


def verify_family(f: StepColoring, fp: FamilyPartition, q: int) -> bool:
    interval_family(fp.members)
    return is_fair(f, [fp.part(p) for p in range(1, q + 1)])


# -- search engine -----------------------------------------------------------

class _Segments:
    """Window decomposition with integer-scaled prefix measures per color."""

    def __init__(self, f: StepColoring, lo: Fraction, hi: Fraction, extra: Sequence[Fraction] = ()):
        self.k = f.k
        self.segs = f.segments(lo, hi)
        self.lo = [a for a, _, _ in self.segs]
        self.hi = [b for _, b, _ in self.segs]
        self.color = [c for _, _, c in self.segs]
        dens = [x.denominator for s in self.segs for x in s[:2]] + [Fraction(x).denominator for x in extra]
        self.scale = math.lcm(*dens)
        self.ilo = [int(x * self.scale) for x in self.lo]
        self.ihi = [int(x * self.scale) for x in self.hi]
        # prefix[s][c]: measure of color c+1 on [window start, lo_s]
        self.prefix: List[List[int]] = []
        acc = [0] * self.k
        self.exact_prefix: List[List[Fraction]] = []
        eacc = [Fraction(0)] * self.k
        for (a, b, c), ia, ib in zip(self.segs, self.ilo, self.ihi):
            self.prefix.append(list(acc))
            self.exact_prefix.append(list(eacc))
            acc[c - 1] += ib - ia
            eacc[c - 1] += b - a

    def __len__(self):
        return len(self.segs)

    def cum(self, s: int, x: int) -> List[int]:
        """Scaled prefix measure vector at scaled position ``x`` inside segment ``s``."""
        out = list(self.prefix[s])
        out[self.color[s] - 1] += x - self.ilo[s]
        return out


@dataclass
class _Problem:
    segs: _Segments
    npoints: int
    fixed: Dict[int, Tuple[int, Fraction]]      # point -> (segment, value)
    gaps: List[Fraction]                        # min distance between consecutive points
    pieces: List[Tuple[int, int]]               # (left point, right point)
    q: int
    target: Optional[List[int]] = None          # scaled per-color totals for fixed-interval mode


def _placements(pb: _Problem) -> Iterator[Tuple[int, ...]]:
    segs = pb.segs
    m = len(segs)
    igaps = [int(g * segs.scale) if (g * segs.scale).denominator == 1 else None for g in pb.gaps]
    sgaps = [g * segs.scale for g in pb.gaps]
    chosen: List[int] = []

    def rec(j: int, start: int, earliest):
        if j == pb.npoints:
            yield tuple(chosen)
            return
        if j in pb.fixed:
            options = [pb.fixed[j][0]] if pb.fixed[j][0] >= start else []
        else:
            options = range(start, m)
        for s in options:
            lo, hi = segs.ilo[s], segs.ihi[s]
            if j in pb.fixed:
                lo = hi = pb.fixed[j][1] * segs.scale
            if earliest is not None and earliest > hi:
                if j in pb.fixed:
                    return
                continue
            e = lo if earliest is None or earliest < lo else earliest
            nxt = None
            if j + 1 < pb.npoints:
                g = igaps[j] if igaps[j] is not None else sgaps[j]
                nxt = e + g
            chosen.append(s)
            yield from rec(j + 1, s, nxt)
            chosen.pop()

    yield from rec(0, 0, None)


def _piece_bounds(pb: _Problem, placement: Tuple[int, ...]):
    segs = pb.segs
    lo_cum, hi_cum = [], []
    for j, s in enumerate(placement):
        if j in pb.fixed:
            x = int(pb.fixed[j][1] * segs.scale)
            v = segs.cum(s, x)
            lo_cum.append(v)
            hi_cum.append(v)
        else:
            lo_cum.append(segs.cum(s, segs.ilo[s]))
            hi_cum.append(segs.cum(s, segs.ihi[s]))
    mins, maxs = [], []
    for left, right in pb.pieces:
        mins.append([max(0, a - b) for a, b in zip(lo_cum[right], hi_cum[left])])
        maxs.append([a - b for a, b in zip(hi_cum[right], lo_cum[left])])
    return mins, maxs


def _assignments(pb: _Problem, mins, maxs, prune: bool = True) -> Iterator[Tuple[int, ...]]:
    """Canonical part labelings (first occurrences in order 1, 2, ..., q) passing interval bounds."""
    q, k, npieces = pb.q, pb.segs.k, len(pb.pieces)
    target = pb.target if prune else None
    lo_sum = [[0] * k for _ in range(q)]
    hi_sum = [[0] * k for _ in range(q)]
    labels: List[int] = []

    def rec(i: int, used: int):
        if i == npieces:
            if used < q:
                return
            for c in range(k if prune else 0):
                if target is not None:
                    if any(q * hi_sum[p][c] < target[c] for p in range(q)):
                        return
                elif max(lo_sum[p][c] for p in range(q)) > min(hi_sum[p][c] for p in range(q)):
                    return
            yield tuple(labels)
            return
        if q - used > npieces - i:
            return
        for p in range(min(used + 1, q)):
            mn = mins[i]
            if target is not None and any(q * (lo_sum[p][c] + mn[c]) > target[c] for c in range(k)):
                continue
            mx = maxs[i]
            for c in range(k):
                lo_sum[p][c] += mn[c]
                hi_sum[p][c] += mx[c]
            labels.append(p + 1)
            yield from rec(i + 1, max(used, p + 1))
            labels.pop()
            for c in range(k):
                lo_sum[p][c] -= mn[c]
                hi_sum[p][c] -= mx[c]

    yield from rec(0, 0)


def _affine_measure(pb: _Problem, placement, j: int, c: int):
    """Prefix measure of color ``c`` at point ``j`` as (coefficients, constant)."""
    segs = pb.segs
    s = placement[j]
    const = segs.exact_prefix[s][c - 1]
    if j in pb.fixed:
        if segs.color[s] == c:
            const += pb.fixed[j][1] - segs.lo[s]
        return {}, const
    if segs.color[s] == c:
        return {j: Fraction(1)}, const - segs.lo[s]
    return {}, const


def _system(pb: _Problem, placement, labels) -> FeasibilitySystem:
    segs = pb.segs
    free = [j for j in range(pb.npoints) if j not in pb.fixed]
    cons = []
    for j in free:
        s = placement[j]
        cons.append(ge({j: 1}, segs.lo[s]))
        cons.append(le({j: 1}, segs.hi[s]))

    def value(j):
        return ({}, pb.fixed[j][1]) if j in pb.fixed else ({j: Fraction(1)}, Fraction(0))

    for j, g in enumerate(pb.gaps):
        (ca, ka), (cb, kb) = value(j), value(j + 1)
        coeffs = dict(cb)
        for v, x in ca.items():
            coeffs[v] = coeffs.get(v, 0) - x
        cons.append(ge(coeffs, g - kb + ka))
    for c in range(1, segs.k + 1):
        per_part = []
        for p in range(1, pb.q + 1):
            coeffs: Dict[int, Fraction] = {}
            const = Fraction(0)
            for (left, right), lab in zip(pb.pieces, labels):
                if lab != p:
                    continue
                for j, sign in ((right, 1), (left, -1)):
                    cf, k0 = _affine_measure(pb, placement, j, c)
                    for v, x in cf.items():
                        coeffs[v] = coeffs.get(v, 0) + sign * x
                    const += sign * k0
            per_part.append((coeffs, const))
        for (c1, k1), (c2, k2) in zip(per_part, per_part[1:]):
            coeffs = dict(c1)
            for v, x in c2.items():
                coeffs[v] = coeffs.get(v, 0) - x
            cons.append(eq(coeffs, k2 - k1))
    return FeasibilitySystem(tuple(free), tuple(cons))


def _solve(pb: _Problem, prune: bool = True):
    """First (placement, labels, point values) in enumeration order, or None."""
    for placement in _placements(pb):
        mins, maxs = _piece_bounds(pb, placement)
        for labels in _assignments(pb, mins, maxs, prune):
            res = solve_feasibility(_system(pb, placement, labels))
            if res.feasible:
                points = [pb.fixed[j][1] if j in pb.fixed else res.witness[j] for j in range(pb.npoints)]
                return placement, labels, points
    return None


def _check_q(q: int):
    if q < 2:
        raise SplitError("need at least two parts")


def _strict_slack(segs: _Segments) -> Fraction:
    shortest = min(b - a for a, b in zip(segs.lo, segs.hi))
    return shortest / 2 ** STRICT_SLACK_BITS


def _split_problem(segs: _Segments, r: int, q: int, gap: Fraction,
                   fixed: Optional[Tuple[Fraction, Fraction]] = None) -> _Problem:
    npoints = r + 2
    fixed_map = {}
    target = None
    if fixed is not None:
        a, b = fixed
        fixed_map = {0: (0, a), npoints - 1: (len(segs) - 1, b)}
        target = [sum(segs.ihi[s] - segs.ilo[s] for s in range(len(segs)) if segs.color[s] == c)
                  for c in range(1, segs.k + 1)]
    pieces = [(i, i + 1) for i in range(r + 1)]
    return _Problem(segs, npoints, fixed_map, [gap] * (r + 1), pieces, q, target)


def find_fair_splitting(coloring: StepColoring, a, b, q: int = 2, max_size: int = 1,
                        granularity=None, min_size: int = 1, prune: bool = True) -> SplitResult:
    """Fair ``q``-splitting of ``[a, b]`` with at most ``max_size`` cuts.

    Sizes are tried in increasing order; within a size the first witness in
    lexicographic (placement, assignment) order is returned.  Without a
    granularity bound, strictness of the cuts is enforced through a gap of
    ``shortest segment / 2**20``.  ``prune=False`` skips the interval-bound
    rejection and sends every candidate to the exact solver.
    """
    a, b = as_rational(a), as_rational(b)
    if a >= b:
        raise SplitError("need a < b")
    _check_q(q)
    if max_size < 1:
        raise SplitError("max_size must be at least 1")
    segs = _Segments(coloring, a, b, () if granularity is None else (as_rational(granularity),))
    gap = _strict_slack(segs) if granularity is None else as_rational(granularity)
    for r in range(min_size, max_size + 1):
        pb = _split_problem(segs, r, q, gap, fixed=(a, b))
        hit = _solve(pb, prune)
        if hit is not None:
            _, labels, points = hit
            s = Splitting(tuple(points), labels)
            _assert_sound(verify_splitting(coloring, s, q), s)
            return SplitResult(True, s, (a, b))
    return SplitResult(False)


def min_splitting_size(coloring: StepColoring, a, b, q: int = 2, limit: Optional[int] = None) -> int:
    """Fewest cuts admitting a fair ``q``-splitting of ``[a, b]``.

    The search never needs more than ``(q - 1) * k`` cuts; ``limit`` only
    overrides that ceiling.
    """
    cap = limit if limit is not None else (q - 1) * coloring.k
    for r in range(1, cap + 1):
        if find_fair_splitting(coloring, a, b, q, max_size=r, min_size=r).found:
            return r
    raise SplitError(f"no fair splitting with at most {cap} cuts")


def membership_B(coloring: StepColoring, n: int, r: int, granularity=None, q: int = 2,
                 prune: bool = True) -> SplitResult:
    """Does some interval inside ``[-n, n]`` have a fair splitting of size exactly ``r``
    whose pieces are all at least ``granularity`` (default ``1/n``) long?"""
    if n < 1 or r < 1:
        raise SplitError("n and r must be positive")
    _check_q(q)
    gamma = Fraction(1, n) if granularity is None else as_rational(granularity)
    if gamma <= 0:
        raise SplitError("granularity must be positive")
    segs = _Segments(coloring, Fraction(-n), Fraction(n), (gamma,))
    hit = _solve(_split_problem(segs, r, q, gamma), prune)
    if hit is None:
        return SplitResult(False)
    _, labels, points = hit
    s = Splitting(tuple(points), labels)
    _assert_sound(verify_splitting(coloring, s, q) and s.granularity >= gamma, s)
    return SplitResult(True, s, (points[0], points[-1]))


def membership_B_union(coloring: StepColoring, n: int, t: int, granularity=None) -> SplitResult:
    """Membership in the union over r = 1..t."""
    for r in range(1, t + 1):
        res = membership_B(coloring, n, r, granularity)
        if res.found:
            return res
    return SplitResult(False)


def _member_sets(npoints: int, q: int) -> Iterator[Tuple[int, ...]]:
    # Members always include the outermost gaps: a family whose extreme
    # points bound no member is the same family with fewer points.
    ngaps = npoints - 1
    for mask in range(1 << ngaps):
        if ngaps > 0 and not (mask & 1 and mask >> (ngaps - 1) & 1):
            continue
        members = tuple(g for g in range(ngaps) if mask >> g & 1)
        if len(members) >= q:
            yield members


def find_fair_family_partition(coloring: StepColoring, n: int, max_endpoints: int, q: int = 2,
                               granularity=None, prune: bool = True) -> SplitResult:
    """Family of intervals inside ``[-n, n]`` with at most ``max_endpoints`` endpoints
    and members at least ``granularity`` long, admitting a fair ``q``-partition."""
    if max_endpoints < 2:
        raise SplitError("need at least two endpoints")
    _check_q(q)
    gamma = Fraction(1, n) if granularity is None else as_rational(granularity)
    if gamma <= 0:
        raise SplitError("granularity must be positive")
    segs = _Segments(coloring, Fraction(-n), Fraction(n), (gamma,))
    for npoints in range(2, max_endpoints + 1):
        for members in _member_sets(npoints, q):
            gaps = [gamma if g in members else Fraction(0) for g in range(npoints - 1)]
            pb = _Problem(segs, npoints, {}, gaps, [(g, g + 1) for g in members], q)
            hit = _solve(pb, prune)
            if hit is not None:
                _, labels, points = hit
                fam = FamilyPartition(tuple((points[g], points[g + 1]) for g in members), labels)
                _assert_sound(verify_family(coloring, fam, q), fam)
                return SplitResult(True, fam, (points[0], points[-1]))
    return SplitResult(False)


def _assert_sound(ok: bool, witness):
    if not ok:  # pragma: no cover - would indicate a solver bug
        raise AssertionError(f"solver produced an unfair witness {witness!r}")
