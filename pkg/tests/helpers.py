"""Random instance generators shared by the test modules."""

from fractions import Fraction

from necklab.coloring import StepColoring


def random_coloring(rng, max_cells, k, lo=0, hi=1, grid=60, default=1):
    """Step coloring of ``[lo, hi]`` with breakpoints on a ``1/grid`` lattice."""
    lo, hi = Fraction(lo), Fraction(hi)
    m = rng.randint(1, max_cells)
    pts = sorted(rng.sample(range(1, grid), m - 1))
    bps = [lo] + [lo + (hi - lo) * Fraction(p, grid) for p in pts] + [hi]
    return StepColoring(k, bps, [rng.randint(1, k) for _ in range(m)], default)


def random_beads(rng, k, max_len, q=2):
    """Bead word over ``k`` letters whose color counts are divisible by ``q``."""
    half = rng.randint(1, max_len // q)
    base = [rng.randint(1, k) for _ in range(half)]
    beads = base * q
    rng.shuffle(beads)
    return tuple(beads)


def contiguous_blocks(k):
    """``k`` equal blocks of distinct colors on ``[0, 1]``."""
    return StepColoring(k, [Fraction(j, k) for j in range(k + 1)], list(range(1, k + 1)), 1)
