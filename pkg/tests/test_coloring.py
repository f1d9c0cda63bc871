import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_coloring
from necklab.coloring import (ColoringError, StepColoring, approximate_by_interval_coloring,
                              color_measure, format_coloring, is_interval_coloring,
                              make_interval_coloring, measure_vector, metric_distance, parse_coloring,
                              window_distance)

TWO_BLOCK = StepColoring.from_cells([(0, 1, 1), (1, 2, 2)], 2, default=1)
THIRDS = StepColoring.from_cells([(0, F(1, 3), 1), (F(1, 3), 1, 2), (1, 2, 1)], 2)


def test_color_measure_examples():
    assert color_measure(TWO_BLOCK, [(0, 2)], 1) == 1
    assert color_measure(TWO_BLOCK, [(0, F(1, 2)), (F(3, 2), 2)], 2) == F(1, 2)
    assert color_measure(THIRDS, [(F(1, 4), F(3, 2))], 1) == F(7, 12)


def test_color_measure_counts_default_outside_window():
    assert color_measure(TWO_BLOCK, [(-3, 0)], 1) == 3
    assert color_measure(TWO_BLOCK, [(1, 5)], 1) == 3


def test_color_out_of_range():
    with pytest.raises(ColoringError):
        color_measure(TWO_BLOCK, [(0, 1)], 3)


def test_overlapping_family_rejected():
    with pytest.raises(ColoringError):
        color_measure(TWO_BLOCK, [(0, 1), (F(1, 2), 2)], 1)


def test_window_distance_examples():
    one, two = StepColoring.constant(1, 2), StepColoring.constant(2, 2)
    assert window_distance(TWO_BLOCK, TWO_BLOCK, 3) == 0
    for n in (1, 2, 5):
        assert window_distance(one, two, n) == 2
    differ = StepColoring.from_cells([(0, 1, 2)], 2)
    assert window_distance(one, differ, 2) == F(1, 2)


def test_window_distance_mismatched_k():
    with pytest.raises(ColoringError):
        window_distance(StepColoring.constant(1, 2), StepColoring.constant(1, 3), 1)


def _series_oracle(terms=60):
    """Plain float partial sum of sum 1/(n 2^(n+1)); truncation error < 2^-60."""
    return sum(1.0 / (n * 2.0 ** (n + 1)) for n in range(1, terms + 1))


def test_metric_examples():
    one, two = StepColoring.constant(1, 2), StepColoring.constant(2, 2)
    assert metric_distance(TWO_BLOCK, TWO_BLOCK, 20) == metric_distance(TWO_BLOCK, TWO_BLOCK, 20)
    enc = metric_distance(TWO_BLOCK, TWO_BLOCK, 20)
    assert (enc.lo, enc.hi) == (0, 0)
    enc = metric_distance(one, two, 20)
    assert enc.width <= F(1, 2 ** 20) and 1 in enc
    differ = StepColoring.from_cells([(0, 1, 2)], 2)
    enc = metric_distance(one, differ, 40)
    oracle = _series_oracle()
    assert abs(oracle - math.log(2) / 2) < 1e-10
    assert float(enc.lo) - 1e-10 <= oracle <= float(enc.hi) + 1e-10
    assert enc.width <= F(1, 2 ** 40)


def test_metric_tail_with_different_defaults():
    # f = 1 everywhere, g = 2 outside [-1, 1] and 1 inside: d_n = 2 - 2/n for n >= 1
    f = StepColoring.constant(1, 2)
    g = StepColoring.from_cells([(-1, 1, 1)], 2, default=2)
    oracle = sum((2 - 2 / n) / 2 ** (n + 1) for n in range(1, 80))
    enc = metric_distance(f, g, 30)
    assert float(enc.lo) - 1e-12 <= oracle <= float(enc.hi) + 1e-12
    assert abs(oracle - (1 - math.log(2))) < 1e-12


@pytest.mark.parametrize("bits", [1, 8, 20, 45])
def test_metric_width_bound(bits, rng):
    for _ in range(5):
        f = random_coloring(rng, 6, 3, lo=-3, hi=2)
        g = random_coloring(rng, 6, 3, lo=-1, hi=4, default=rng.randint(1, 3))
        assert metric_distance(f, g, bits).width <= F(1, 2 ** bits)


def test_metric_symmetry_and_triangle(rng):
    for _ in range(30):
        f, g, h = (random_coloring(rng, 6, 3, lo=-2, hi=2, default=rng.randint(1, 3)) for _ in range(3))
        fg, gf = metric_distance(f, g, 24), metric_distance(g, f, 24)
        assert fg == gf
        assert metric_distance(f, h, 24).lo <= fg.hi + metric_distance(g, h, 24).hi


def test_identity_of_indiscernibles(rng):
    for _ in range(40):
        f = random_coloring(rng, 5, 2, lo=-1, hi=1)
        # refine f with a redundant breakpoint and default-colored margins
        cells = [(-2, -1, f.default_color)] + f.cells
        a, b, c = cells[1]
        cells[1:2] = [(a, (a + b) / 2, c), ((a + b) / 2, b, c)]
        g = StepColoring.from_cells(cells, f.k, f.default_color)
        enc = metric_distance(f, g, 20)
        assert (enc.lo, enc.hi) == (0, 0)
        assert f.canonicalize() == g.canonicalize()
        h = random_coloring(rng, 5, 2, lo=-1, hi=1)
        zero = metric_distance(f, h, 20) == metric_distance(f, f, 20)
        assert zero == (f.canonicalize() == h.canonicalize())


def test_canonicalize_idempotent(rng):
    for _ in range(50):
        f = random_coloring(rng, 8, 3, lo=-2, hi=2)
        once = f.canonicalize()
        assert once.canonicalize() == once


def test_window_distance_range(rng):
    for _ in range(50):
        f = random_coloring(rng, 8, 3, lo=-3, hi=3, default=rng.randint(1, 3))
        g = random_coloring(rng, 8, 3, lo=-2, hi=4, default=rng.randint(1, 3))
        for n in (1, 2, 5):
            assert 0 <= window_distance(f, g, n) <= 2


intervals = st.tuples(st.integers(-40, 40), st.integers(1, 40)).map(lambda t: (F(t[0], 10), F(t[0] + t[1], 10)))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 6), intervals, st.integers(1, 40))
def test_additivity_and_totality(seed, interval, gap):
    rng = random.Random(seed)
    f = random_coloring(rng, 8, 3, lo=-2, hi=3, default=rng.randint(1, 3))
    a, b = interval
    second = (b + F(gap, 20), b + F(gap, 20) + F(1, 3))
    for i in range(1, 4):
        joint = color_measure(f, [interval, second], i)
        assert joint == color_measure(f, [interval], i) + color_measure(f, [second], i)
    assert sum(color_measure(f, [interval], i) for i in range(1, 4)) == b - a
    assert sum(measure_vector(f, [interval, second])) == (b - a) + F(1, 3)


def test_make_interval_coloring_examples():
    g = make_interval_coloring(1, (1, 2), 2)
    assert g.breakpoints == (-1, 0, 1) and g.cell_colors == (1, 2)
    g = make_interval_coloring(2, (1, 1, 2, 3), 3)
    assert [b - a for a, b, _ in g.cells] == [1, 1, 1, 1]
    with pytest.raises(ColoringError):
        make_interval_coloring(1, (), 2)


def test_approx_of_interval_coloring_is_exact():
    f = make_interval_coloring(1, (1, 2, 2, 1), 2)  # 4 blocks; 16 is a multiple
    g = approximate_by_interval_coloring(f, 1, F(1, 2), 1)
    enc = metric_distance(f, g, 30)
    assert (enc.lo, enc.hi) == (0, 0)
    assert len(g.cell_colors) == 16


def test_approx_of_constant():
    f = StepColoring.constant(1, 3)
    g = approximate_by_interval_coloring(f, 2, F(1, 3), 2)
    assert set(g.cell_colors) == {1}
    assert metric_distance(f, g, 20).hi == 0


def test_approx_two_halves():
    f = StepColoring.from_cells([(-1, 0, 1), (0, 1, 2)], 2)
    g = approximate_by_interval_coloring(f, 1, F(1, 2), 1)
    assert len(g.cell_colors) == 16
    assert is_interval_coloring(g, 1)
    assert metric_distance(f, g, 30).hi < F(1, 2)


def test_approx_block_count_and_membership(rng):
    for _ in range(10):
        f = random_coloring(rng, 8, 3, lo=F(-3, 2), hi=F(3, 2))
        eps = F(rng.randint(1, 4), 8)
        g = approximate_by_interval_coloring(f, 1, eps, 1)
        inside = [c for c in g.cells if -1 <= c[0] and c[1] <= 1]
        assert len(inside) >= math.ceil(8 / eps)
        assert is_interval_coloring(g, 1)
        assert metric_distance(f, g, 30).hi < eps


def test_approx_rejects_nonpositive_eps():
    with pytest.raises(ColoringError):
        approximate_by_interval_coloring(StepColoring.constant(1, 2), 1, 0, 1)


def test_text_round_trip(rng):
    for _ in range(20):
        f = random_coloring(rng, 8, 4, lo=F(-7, 3), hi=F(5, 2), default=rng.randint(1, 4))
        assert parse_coloring(format_coloring(f)) == f
    assert parse_coloring("coloring k=3 default=2\n") == StepColoring.constant(2, 3)


def test_text_format_layout():
    text = format_coloring(THIRDS)
    assert text.splitlines() == ["coloring k=2 default=1", "cell 0 1/3 1", "cell 1/3 1 2", "cell 1 2 1"]


@pytest.mark.parametrize("text", [
    "coloring k=2 default=1\ncell 0 1 1\ncell 1/2 2 2\n",        # overlap
    "coloring k=2 default=1\ncell 0 1 1\ncell 3/2 2 2\n",        # gap
    "coloring k=2 default=1\ncell 0 1 3\n",                      # color out of range
    "cell 0 1 1\n",                                              # no header
    "coloring k=2 default=1\ncell 1 1 1\n",                      # empty cell
    "coloring k=2 default=1\ncell 0 1/0 1\n",                    # zero denominator
    "",
])
def test_parser_rejects(text):
    with pytest.raises(ColoringError):
        parse_coloring(text)


def test_relabel_and_reflect_preserve_measure_totals(rng):
    f = random_coloring(rng, 8, 3)
    perm = [2, 3, 1]
    g = f.relabel(perm)
    for i in range(1, 4):
        assert color_measure(g, [(0, 1)], perm[i - 1]) == color_measure(f, [(0, 1)], i)
    r = f.reflect(F(1, 2))
    for i in range(1, 4):
        assert color_measure(r, [(0, F(1, 3))], i) == color_measure(f, [(F(2, 3), 1)], i)
