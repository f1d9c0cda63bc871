import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from necklab.exact_lp import (ExactLPError, FeasibilitySystem, LinearConstraint, eq, ge, le,
                              rat_normalize, solve_feasibility, verify_witness)


@pytest.mark.parametrize("num, den, expected", [(2, 4, F(1, 2)), (0, 5, F(0)), (3, -6, F(-1, 2))])
def test_rat_normalize(num, den, expected):
    r = rat_normalize(num, den)
    assert r == expected
    assert r.denominator > 0
    assert (r.numerator, r.denominator) == (expected.numerator, expected.denominator)


def test_rat_normalize_zero_denominator():
    with pytest.raises(ExactLPError, match="zero denominator"):
        rat_normalize(1, 0)


def test_unit_box():
    res = solve_feasibility(FeasibilitySystem(("x",), (ge({"x": 1}, 0), le({"x": 1}, 1))))
    assert res.feasible and res.status == "feasible"
    assert res.witness == {"x": F(1, 2)}


def test_empty_box():
    res = solve_feasibility(FeasibilitySystem(("x",), (ge({"x": 1}, 1), le({"x": 1}, 0))))
    assert not res.feasible and res.witness is None


def test_unique_solution():
    system = FeasibilitySystem(("x", "y"), (eq({"x": 1, "y": 1}, 1), eq({"x": 1, "y": -1}, 0),
                                            ge({"x": 1}, 0)))
    assert solve_feasibility(system).witness == {"x": F(1, 2), "y": F(1, 2)}


def test_half_bounded_picks_integer():
    res = solve_feasibility(FeasibilitySystem(("x",), (ge({"x": 1}, F(5, 2)),)))
    assert res.witness == {"x": F(3)}
    res = solve_feasibility(FeasibilitySystem(("x", "y"), ()))
    assert res.witness == {"x": 0, "y": 0}


def test_inconsistent_equalities():
    system = FeasibilitySystem(("x", "y"), (eq({"x": 1, "y": 1}, 1), eq({"x": 2, "y": 2}, 3)))
    assert not solve_feasibility(system).feasible


def test_undeclared_variable_rejected():
    with pytest.raises(ExactLPError):
        FeasibilitySystem(("x",), (ge({"y": 1}, 0),))
    with pytest.raises(ExactLPError):
        LinearConstraint({"x": 1}, "<")


def _random_system(rng, nvar, ncon, planted=None):
    names = tuple(f"v{i}" for i in range(nvar))
    cons = []
    for _ in range(ncon):
        coeffs = {v: rng.randint(-3, 3) for v in names if rng.random() < 0.6}
        rel = rng.choice(["<=", ">=", "<=", ">=", "="])
        if planted is None:
            const = rng.randint(-4, 4)
        else:
            value = sum(c * planted[v] for v, c in coeffs.items())
            const = value if rel == "=" else value + (rng.randint(0, 2) if rel == "<=" else -rng.randint(0, 2))
        cons.append(LinearConstraint(coeffs, rel, F(const)))
    return FeasibilitySystem(names, tuple(cons))


def _grid_oracle(system, rng, samples=3000, radius=4):
    """Random rational points with denominators <= 64; returns one satisfying point or None."""
    names = system.variables
    small = [F(p, q) for q in (1, 2, 3, 4) for p in range(-radius * q, radius * q + 1)]
    for _ in range(samples):
        if rng.random() < 0.5:
            point = {v: rng.choice(small) for v in names}
        else:
            point = {v: F(rng.randint(-radius * 64, radius * 64), rng.randint(1, 64)) for v in names}
        if verify_witness(system, point):
            return point
    return None


def test_elimination_agrees_with_grid_oracle(seed):
    rng = random.Random(seed)
    checked_feasible = 0
    for trial in range(300):
        nvar = rng.randint(1, 6)
        ncon = rng.randint(1, 12)
        planted = None
        if trial % 2:
            planted = {f"v{i}": F(rng.randint(-6, 6), rng.choice((1, 2, 4))) for i in range(nvar)}
        system = _random_system(rng, nvar, ncon, planted)
        res = solve_feasibility(system)
        if planted is not None:
            assert verify_witness(system, planted)
            assert res.feasible
        if res.feasible:
            assert verify_witness(system, res.witness)
            checked_feasible += 1
        else:
            assert _grid_oracle(system, rng) is None
    assert checked_feasible > 100


def test_two_variable_exhaustive_grid(seed):
    """Dense grid over a box: a hit anywhere forces a feasible verdict."""
    rng = random.Random(seed + 1)
    grid = sorted({F(p, q) for q in range(1, 9) for p in range(-3 * q, 3 * q + 1)})
    for _ in range(40):
        system = _random_system(rng, 2, rng.randint(2, 5))
        boxed = FeasibilitySystem(system.variables, system.constraints + tuple(
            c for v in system.variables for c in (ge({v: 1}, -3), le({v: 1}, 3))))
        hit = any(verify_witness(boxed, {"v0": x, "v1": y}) for x, y in itertools.product(grid, grid))
        res = solve_feasibility(boxed)
        if hit:
            assert res.feasible
        if res.feasible:
            assert verify_witness(boxed, res.witness)


def test_status_independent_of_constraint_order(seed):
    rng = random.Random(seed + 2)
    for _ in range(100):
        system = _random_system(rng, rng.randint(1, 5), rng.randint(1, 10))
        cons = list(system.constraints)
        rng.shuffle(cons)
        shuffled = FeasibilitySystem(system.variables, tuple(cons))
        assert solve_feasibility(system).feasible == solve_feasibility(shuffled).feasible


small_coeff = st.integers(min_value=-3, max_value=3)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(small_coeff, small_coeff, small_coeff, st.sampled_from(["<=", ">=", "="]),
                          st.integers(-5, 5)), min_size=1, max_size=8))
def test_witness_satisfies_every_constraint(rows):
    cons = tuple(LinearConstraint({"x": a, "y": b, "z": c}, rel, F(k)) for a, b, c, rel, k in rows)
    system = FeasibilitySystem(("x", "y", "z"), cons)
    res = solve_feasibility(system)
    assert res.feasible == (res.witness is not None)
    if res.feasible:
        assert all(con.holds(res.witness) for con in system.constraints)
