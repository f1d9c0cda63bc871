"""Discrete necklaces: squares, abelian powers and bead splittings.

Words are tuples of positive integers; a letter ``c`` of a ``sigma``-letter
alphabet satisfies ``1 <= c <= sigma``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

Word = Tuple[int, ...]


class WordError(ValueError):
    pass


def parikh(w: Sequence[int], i: int, j: int, sigma: Optional[int] = None) -> Tuple[int, ...]:
    """Letter counts of ``w[i:j]``."""
    if not 0 <= i <= j <= len(w):
        raise WordError(f"bad segment [{i}, {j}) for a word of length {len(w)}")
    sigma = sigma if sigma is not None else max(w, default=0)
    counts = [0] * sigma
    for c in w[i:j]:
        counts[c - 1] += 1
    return tuple(counts)


def _prefix_counts(w: Sequence[int], sigma: int) -> List[List[int]]:
    rows = [[0] * sigma]
    for c in w:
        row = list(rows[-1])
        row[c - 1] += 1
        rows.append(row)
    return rows


def find_abelian_power(w: Sequence[int], q: int = 2) -> Optional[Tuple[int, int]]:
    """First ``(position, block_length)`` starting ``q`` adjacent blocks with equal Parikh vectors."""
    if q < 2:
        raise WordError("q must be at least 2")
    sigma = max(w, default=0)
    pre = _prefix_counts(w, sigma)
    n = len(w)
    for pos in range(n):
        for ell in range(1, (n - pos) // q + 1):
            first = [b - a for a, b in zip(pre[pos], pre[pos + ell])]
            if all([b - a for a, b in zip(pre[pos + t * ell], pre[pos + (t + 1) * ell])] == first
                   for t in range(1, q)):
                return pos, ell
    return None


def find_square(w: Sequence[int]) -> Optional[Tuple[int, int]]:
    """First ``(position, block_length)`` of two adjacent identical blocks."""
    w = tuple(w)
    n = len(w)
    for pos in range(n):
        for ell in range(1, (n - pos) // 2 + 1):
            if w[pos:pos + ell] == w[pos + ell:pos + 2 * ell]:
                return pos, ell
    return None


THUE_MORPHISM = {1: (1, 2, 3), 2: (1, 3), 3: (2,)}


def squarefree_ternary(length: int) -> Word:
    """Prefix of the fixed point of 1 -> 123, 2 -> 13, 3 -> 2."""
    if length < 1:
        raise WordError("length must be positive")
    w: Word = (1,)
    while len(w) < length:
        w = tuple(x for c in w for x in THUE_MORPHISM[c])
    return w[:length]


def _abelian_square_suffix(pre: List[List[int]]) -> bool:
    """Does an abelian square end at the last position of the word behind ``pre``?"""
    n = len(pre) - 1
    end = pre[n]
    for ell in range(1, n // 2 + 1):
        mid, start = pre[n - ell], pre[n - 2 * ell]
        if all(e - m == m - s for e, m, s in zip(end, mid, start)):
            return True
    return False


@dataclass(frozen=True)
class SearchReport:
    word: Word
    exhausted: bool
    nodes: int


def _backtrack(sigma: int, target: int, budget: int, violates) -> SearchReport:
    # violates(word, pre) checks only factors ending at the last letter
    best: List[int] = []
    word: List[int] = []
    pre = [[0] * sigma]
    nodes = 0
    stack = [1]
    while stack:
        if len(word) == target or nodes >= budget:
            return SearchReport(tuple(best), False, nodes)
        c = stack[-1]
        if c > sigma:
            stack.pop()
            if word:
                word.pop()
                pre.pop()
                stack[-1] += 1
            continue
        nodes += 1
        row = list(pre[-1])
        row[c - 1] += 1
        word.append(c)
        pre.append(row)
        if violates(word, pre):
            word.pop()
            pre.pop()
            stack[-1] += 1
            continue
        if len(word) > len(best):
            best = list(word)
        stack.append(1)
    return SearchReport(tuple(best), True, nodes)


def backtrack_abelian_squarefree(sigma: int, target_length: int = 10 ** 9,
                                 node_budget: int = 10 ** 7) -> SearchReport:
    """Depth-first search for long abelian-square-free words, letters tried in ascending order.

    ``exhausted`` means the whole tree was visited, so ``len(word)`` is the
    exact maximum.
    """
    if sigma < 1:
        raise WordError("alphabet must be nonempty")
    return _backtrack(sigma, target_length, node_budget, lambda w, pre: _abelian_square_suffix(pre))


@dataclass(frozen=True)
class DiscreteSplit:
    cuts: Tuple[int, ...]
    assignment: Tuple[int, ...]

    def pieces(self, n: int) -> List[Tuple[int, int]]:
        bounds = (0,) + self.cuts + (n,)
        return list(zip(bounds, bounds[1:]))


def _fair_assignment(pieces_counts, totals, q) -> Optional[Tuple[int, ...]]:
    k = len(totals)
    share = [t // q for t in totals]
    load = [[0] * k for _ in range(q)]
    labels: List[int] = []

    def rec(i, used):
        if i == len(pieces_counts):
            return used == q and all(load[p] == share for p in range(q))
        for p in range(min(used + 1, q)):
            cnt = pieces_counts[i]
            if any(load[p][c] + cnt[c] > share[c] for c in range(k)):
                continue
            for c in range(k):
                load[p][c] += cnt[c]
            labels.append(p + 1)
            if rec(i + 1, max(used, p + 1)):
                return True
            labels.pop()
            for c in range(k):
                load[p][c] -= cnt[c]
        return False

    return tuple(labels) if rec(0, 0) else None


def discrete_fair_split(beads: Sequence[int], q: int = 2,
                        max_cuts: Optional[int] = None) -> Optional[DiscreteSplit]:
    """Fewest cuts splitting ``beads`` into ``q`` parts with equal counts of every color.

    Cut positions are gaps between beads (``1 .. len - 1``); the default cut
    budget is ``k (q - 1)`` for ``k`` colors.
    """
    if q < 2:
        raise WordError("q must be at least 2")
    beads = tuple(beads)
    sigma = max(beads, default=0)
    totals = [0] * sigma
    for c in beads:
        totals[c - 1] += 1
    if any(t % q for t in totals):
        raise WordError("counts not divisible by q")
    k = sum(1 for t in totals if t)
    if max_cuts is None:
        max_cuts = k * (q - 1)
    n = len(beads)
    pre = _prefix_counts(beads, sigma)
    for r in range(0, min(max_cuts, n - 1) + 1):
        for cuts in itertools.combinations(range(1, n), r):
            bounds = (0,) + cuts + (n,)
            counts = [[b - a for a, b in zip(pre[x], pre[y])] for x, y in zip(bounds, bounds[1:])]
            labels = _fair_assignment(counts, totals, q)
            if labels is not None:
                return DiscreteSplit(cuts, labels)
    return None


def has_short_splitting(segment: Sequence[int], k: int) -> bool:
    """Can ``segment`` be fairly 2-split with at most ``k`` cuts?"""
    counts = Counter(segment)
    if any(v % 2 for v in counts.values()):
        return False
    return discrete_fair_split(segment, 2, max_cuts=k) is not None


def _splittable_suffix(k: int):
    def violates(word, pre):
        n = len(word)
        end = pre[n]
        for start in range(n - 2, -1, -2):
            if any((e - s) % 2 for e, s in zip(end, pre[start])):
                continue
            if has_short_splitting(word[start:], k):
                return True
        return False
    return violates


def discrete_avoider_search(k: int, length: int, node_budget: int = 10 ** 6) -> SearchReport:
    """Backtracking search over ``k + 3`` letters for a word in which no factor
    has a fair 2-splitting with at most ``k`` cuts."""
    if k < 1:
        raise WordError("k must be at least 1")
    return _backtrack(k + 3, length, node_budget, _splittable_suffix(k))


def format_word(w: Sequence[int]) -> str:
    return " ".join(str(c) for c in w)


def parse_words(text: str) -> List[Word]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            try:
                word = tuple(int(x) for x in line.split())
            except ValueError as exc:
                raise WordError(f"bad word line {line!r}") from exc
            if any(c < 1 for c in word):
                raise WordError("letters must be positive integers")
            out.append(word)
    return out
