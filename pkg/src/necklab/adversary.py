"""Colorings built to defeat short fair splittings.

An equal-block interval coloring is perturbed by inserting, at the start of
every block, a short run of pieces in colors ``1..k``.  The piece lengths
are dyadic and pairwise distinct per color, so no two disjoint sets of
small pieces of one color can carry the same total length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .coloring import StepColoring, make_interval_coloring
from .exact_lp import as_rational


class AdversaryError(ValueError):
    pass


def distinct_subset_sum_lengths(N: int, k: int, delta) -> Tuple[Tuple[Fraction, ...], ...]:
    """``lengths[i][m] = delta * 2**-(i*k + m + 1)`` (zero-based ``i``, ``m``)."""
    delta = as_rational(delta)
    if N < 1 or k < 1:
        raise AdversaryError("N and k must be positive")
    if delta <= 0:
        raise AdversaryError("delta must be positive")
    return tuple(tuple(delta / 2 ** (i * k + m + 1) for m in range(k)) for i in range(N))


def has_distinct_subset_sums(values: Sequence[Fraction]) -> bool:
    """No two different index subsets of ``values`` share a sum."""
    vals = sorted(values)
    running = Fraction(0)
    superincreasing = True
    for v in vals:
        if v <= running:
            superincreasing = False
            break
        running += v
    if superincreasing:
        return True
    if len(vals) > 22:
        raise AdversaryError("too many values for exhaustive subset-sum check")
    sums = {Fraction(0)}
    for v in vals:
        shifted = {s + v for s in sums}
        if shifted & sums:
            return False
        sums |= shifted
    return True


@dataclass(frozen=True)
class PerturbationPlan:
    n: int
    N: int
    k: int
    delta: Fraction
    eps: Fraction
    lengths: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "delta", as_rational(self.delta))
        object.__setattr__(self, "eps", as_rational(self.eps))
        if len(self.lengths) != self.N or any(len(row) != self.k for row in self.lengths):
            raise AdversaryError("lengths must form an N x k matrix")
        if not self.delta < min(self.eps / (2 * self.N), Fraction(self.n, self.N ** 2)):
            raise AdversaryError("delta violates delta < min(eps/2N, n/N^2)")
        for row in self.lengths:
            if any(x <= 0 for x in row):
                raise AdversaryError("piece lengths must be positive")
            if sum(row) > self.delta:
                raise AdversaryError("pieces of one block exceed delta")
        if self.N <= 22:
            for m in range(self.k):
                if not has_distinct_subset_sums([row[m] for row in self.lengths]):
                    raise AdversaryError(f"color {m + 1} lengths have colliding subset sums")

    @property
    def block_length(self) -> Fraction:
        return Fraction(2 * self.n, self.N)

    def prefix_length(self, i: int) -> Fraction:
        """Length of the perturbed prefix S_i of block ``i`` (zero-based)."""
        return sum(self.lengths[i], Fraction(0))


def make_plan(n: int, N: int, k: int, delta, eps) -> PerturbationPlan:
    return PerturbationPlan(n, N, k, delta, eps, distinct_subset_sum_lengths(N, k, delta))


def perturb_interval_coloring(g: StepColoring, plan: PerturbationPlan) -> StepColoring:
    """Replace the head of each block of ``g`` by pieces colored ``1..k`` in order.

    The result keeps ``g`` outside ``[-n, n]`` and is returned uncanonicalized,
    so the window holds exactly ``N (k + 1)`` cells.
    """
    n, N = plan.n, plan.N
    if g.k != plan.k:
        raise AdversaryError("color count of g does not match the plan")
    L = plan.block_length
    cells = []
    for i in range(N):
        a = -n + i * L
        block = g.segments(a, a + L)
        if len(block) != 1:
            raise AdversaryError(f"g is not monochromatic on block {i + 1} of {N}")
        x = a
        for m, ell in enumerate(plan.lengths[i]):
            cells.append((x, x + ell, m + 1))
            x += ell
        cells.append((x, a + L, block[0][2]))
    left = g.segments(g.breakpoints[0], -n) if g.breakpoints and g.breakpoints[0] < -n else []
    right = g.segments(n, g.breakpoints[-1]) if g.breakpoints and g.breakpoints[-1] > n else []
    return StepColoring.from_cells(left + cells + right, g.k, g.default_color)


def _power_of_two_floor(x: Fraction) -> Fraction:
    p = Fraction(1)
    while p > x:
        p /= 2
    while p * 2 <= x:
        p *= 2
    return p


def build_avoider(t: int, n: int, N: int, eps=1) -> StepColoring:
    """A ``(t + 3)``-coloring with no fair splitting of size at most ``t`` and
    granularity at least ``1/n`` on any interval inside ``[-n, n]``.

    Needs ``N > n**2`` so that every block is shorter than ``2/n``.
    """
    eps = as_rational(eps)
    if t < 1:
        raise AdversaryError("t must be at least 1")
    if n < 1:
        raise AdversaryError("n must be positive")
    if N <= n * n:
        raise AdversaryError("need N > n^2")
    if eps <= 0:
        raise AdversaryError("eps must be positive")
    k = t + 3
    g = make_interval_coloring(n, [j % k + 1 for j in range(N)], k, default=1)
    return perturb_interval_coloring(g, plan_for(t, n, N, eps))


def plan_for(t: int, n: int, N: int, eps=1) -> PerturbationPlan:
    """The plan :func:`build_avoider` uses for the same arguments."""
    eps = as_rational(eps)
    delta = _power_of_two_floor(min(eps / (2 * N), Fraction(n, N * N)) / 2)
    return make_plan(n, N, t + 3, delta, eps)

