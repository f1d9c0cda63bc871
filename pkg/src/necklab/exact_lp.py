"""Exact rational linear feasibility.

Equalities are removed by substitution, inequalities by Fourier-Motzkin
elimination.  Everything is done over :class:`fractions.Fraction`, so a
verdict is never subject to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

Rational = Fraction

EQ = "="
LE = "<="
GE = ">="
_RELATIONS = (EQ, LE, GE)


class ExactLPError(ValueError):
    pass


def rat_normalize(numerator: int, denominator: int) -> Fraction:
    if denominator == 0:
        raise ExactLPError("zero denominator")
    return Fraction(numerator, denominator)


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            p, q = text.split("/", 1)
            return rat_normalize(int(p), int(q))
        return Fraction(int(text))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class LinearConstraint:
    """``sum(coefficients[v] * v) <relation> constant``."""

    coefficients: Mapping[Hashable, Fraction]
    relation: str
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ExactLPError(f"unknown relation {self.relation!r}")
        coeffs = {v: Fraction(c) for v, c in self.coefficients.items() if c != 0}
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "constant", Fraction(self.constant))

    def lhs(self, point: Mapping[Hashable, Fraction]) -> Fraction:
        return sum((c * point[v] for v, c in self.coefficients.items()), Fraction(0))

    def holds(self, point: Mapping[Hashable, Fraction]) -> bool:
        value = self.lhs(point)
        if self.relation == EQ:
            return value == self.constant
        if self.relation == LE:
            return value <= self.constant
        return value >= self.constant


@dataclass(frozen=True)
class FeasibilitySystem:
    variables: Tuple[Hashable, ...]
    constraints: Tuple[LinearConstraint, ...] = ()

    def __post_init__(self):
        variables = tuple(self.variables)
        if len(set(variables)) != len(variables):
            raise ExactLPError("duplicate variable ids")
        declared = set(variables)
        for con in self.constraints:
            unknown = set(con.coefficients) - declared
            if unknown:
                raise ExactLPError(f"constraint uses undeclared variables {sorted(map(str, unknown))}")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "constraints", tuple(self.constraints))


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[Dict[Hashable, Fraction]] = field(default=None)

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"


# Internally a row is (coeffs, rhs) meaning  coeffs . x <= rhs  (or == rhs),
# with coeffs a list indexed by variable position.

def _scale_row(coeffs: List[Fraction], rhs: Fraction) -> Tuple[Tuple[Fraction, ...], Fraction]:
    # Positive scaling so that rows with parallel left-hand sides compare equal.
    for c in coeffs:
        if c != 0:
            s = abs(c)
            return tuple(x / s for x in coeffs), rhs / s
    return tuple(coeffs), rhs


def _prune(rows):
    """Drop constant rows (``None`` if one is violated) and dominated duplicates."""
    best: Dict[Tuple[Fraction, ...], Fraction] = {}
    for coeffs, rhs in rows:
        key, r = _scale_row(coeffs, rhs)
        if not any(key):
            if r < 0:
                return None
            continue
        old = best.get(key)
        if old is None or r < old:
            best[key] = r
    return [(list(k), r) for k, r in best.items()]


def _pick(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    if lo is not None and hi is not None:
        return (lo + hi) / 2
    if lo is not None:
        return Fraction(math.ceil(lo))
    if hi is not None:
        return Fraction(math.floor(hi))
    return Fraction(0)


def _bounds(rows, j: int, point: Sequence[Optional[Fraction]]):
    lo = hi = None
    for coeffs, rhs in rows:
        a = coeffs[j]
        if a == 0:
            continue
        rest = rhs - sum(c * point[i] for i, c in enumerate(coeffs) if i != j and c != 0)
        b = rest / a
        if a > 0:
            hi = b if hi is None else min(hi, b)
        else:
            lo = b if lo is None else max(lo, b)
    return lo, hi


def solve_feasibility(system: FeasibilitySystem) -> FeasibilityResult:
    """Decide feasibility exactly and return a witness point when feasible.

    The witness is deterministic: each variable, taken in reverse
    elimination order, sits at the midpoint of its feasible range given the
    variables already fixed (nearest integer on a half-unbounded range,
    zero on a free one).
    """
    names = system.variables
    nvar = len(names)
    index = {v: i for i, v in enumerate(names)}

    equalities = []
    rows = []
    for con in system.constraints:
        coeffs = [Fraction(0)] * nvar
        for v, c in con.coefficients.items():
            coeffs[index[v]] = c
        if con.relation == EQ:
            equalities.append((coeffs, con.constant))
        elif con.relation == LE:
            rows.append((coeffs, con.constant))
        else:
            rows.append(([-c for c in coeffs], -con.constant))

    # Gaussian substitution; pivots[j] = (coeffs, rhs) expresses x_j through later-free vars.
    pivots: Dict[int, Tuple[List[Fraction], Fraction]] = {}
    pivot_order: List[int] = []
    pending = equalities
    while pending:
        coeffs, rhs = pending.pop(0)
        j = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if j is None:
            if rhs != 0:
                return FeasibilityResult(False)
            continue
        a = coeffs[j]
        expr = [-c / a if i != j else Fraction(0) for i, c in enumerate(coeffs)]
        const = rhs / a
        pivots[j] = (expr, const)
        pivot_order.append(j)

        def subst(row, j=j, expr=expr, const=const):
            cs, r = row
            b = cs[j]
            if b == 0:
                return row
            new = [c + b * e for c, e in zip(cs, expr)]
            new[j] = Fraction(0)
            return new, r - b * const

        pending = [subst(row) for row in pending]
        rows = [subst(row) for row in rows]

    free = [i for i in range(nvar) if i not in pivots]
    rows = _prune(rows)
    if rows is None:
        return FeasibilityResult(False)

    # Fourier-Motzkin: eliminate free variables from last to first, keeping
    # the row set that was current before each elimination for back-substitution.
    stages = []
    for j in reversed(free[1:]):
        stages.append((j, rows))
        pos, neg, keep = [], [], []
        for coeffs, rhs in rows:
            if coeffs[j] > 0:
                pos.append((coeffs, rhs))
            elif coeffs[j] < 0:
                neg.append((coeffs, rhs))
            else:
                keep.append((coeffs, rhs))
        for pc, pr in pos:
            for nc, nr in neg:
                a, b = pc[j], -nc[j]
                keep.append(([b * x + a * y for x, y in zip(pc, nc)], b * pr + a * nr))
        rows = _prune(keep)
        if rows is None:
            return FeasibilityResult(False)

    point: List[Optional[Fraction]] = [None] * nvar
    for i in range(nvar):
        if i in pivots:
            continue
        point[i] = Fraction(0)
    if free:
        first = free[0]
        lo, hi = _bounds(rows, first, point)
        if lo is not None and hi is not None and lo > hi:
            return FeasibilityResult(False)
        point[first] = _pick(lo, hi)
    for j, stage_rows in reversed(stages):
        lo, hi = _bounds(stage_rows, j, point)
        if lo is not None and hi is not None and lo > hi:  # pragma: no cover - FM guarantees consistency
            raise AssertionError("back-substitution produced an empty range")
        point[j] = _pick(lo, hi)
    for j in reversed(pivot_order):
        expr, const = pivots[j]
        point[j] = const + sum(e * point[i] for i, e in enumerate(expr) if e != 0)

    witness = {names[i]: point[i] for i in range(nvar)}
    return FeasibilityResult(True, witness)


def verify_witness(system: FeasibilitySystem, witness: Mapping[Hashable, Fraction]) -> bool:
    return all(con.holds(witness) for con in system.constraints)


def eq(coefficients, constant=0) -> LinearConstraint:
    return LinearConstraint(coefficients, EQ, Fraction(constant))


def le(coefficients, constant=0) -> LinearConstraint:
    return LinearConstraint(coefficients, LE, Fraction(constant))


def ge(coefficients, constant=0) -> LinearConstraint:
    return LinearConstraint(coefficients, GE, Fraction(constant))
