"""Explicit sets of orderings: balance, the ≺ tournament, swaps, ladders, ranks."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .core import (Antimatroid, Element, GroundSet, balance_from_counts,
                   count_basic_words, enumerate_basic_words)

DEFAULT_WORD_CAP = 10**6
WORD_CAP_ENV = "BALANCE_LAB_WORD_CAP"

ONE_THIRD = Fraction(1, 3)
TWO_THIRDS = Fraction(2, 3)


class WordCapExceeded(RuntimeError):
    def __init__(self, count: int, cap: int):
        self.count, self.cap = count, cap
        super().__init__(f"{count} orderings exceed the materialisation cap {cap}")


def word_cap() -> int:
    value = os.environ.get(WORD_CAP_ENV)
    return int(value) if value else DEFAULT_WORD_CAP


@dataclass(frozen=True, eq=False)
class OrderingSet:
    ground: GroundSet
    words: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.ground.n
        words = tuple(tuple(w) for w in self.words)
        if not words:
            raise ValueError("an ordering set must be nonempty")
        everything = set(range(n))
        for w in words:
            if len(w) != n or set(w) != everything:
                raise ValueError(f"{w} is not a permutation of the ground set")
        if len(set(words)) != len(words):
            raise ValueError("duplicate orderings")
        object.__setattr__(self, "words", words)

    @classmethod
    def from_words(cls, words: Iterable[Sequence[Element]],
                   ground: GroundSet | None = None) -> "OrderingSet":
        words = [list(w) for w in words]
        if ground is None:
            words = [[str(x) for x in w] for w in words]
            ground = GroundSet.from_elements(x for w in words for x in w)
        return cls(ground, tuple(tuple(ground.index(x) for x in w)
                                 for w in words))

    @property
    def n(self) -> int:
        return self.ground.n

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word) -> bool:
        return tuple(word) in self.word_set

    def __eq__(self, other):
        if not isinstance(other, OrderingSet):
            return NotImplemented
        return self.ground == other.ground and self.word_set == other.word_set

    def __hash__(self):
        return hash((self.ground, self.word_set))

    @cached_property
    def word_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.words)

    @cached_property
    def ranks(self) -> np.ndarray:
        """``ranks[w, x]`` = 0-based position of element x in word w."""
        r = np.empty((len(self.words), self.n), dtype=np.int32)
        for k, w in enumerate(self.words):
            r[k, list(w)] = np.arange(self.n)
        return r

    @cached_property
    def before_counts(self) -> tuple[tuple[int, ...], ...]:
        r = self.ranks
        rows = [(r[:, x, None] < r).sum(axis=0) for x in range(self.n)]
        return tuple(tuple(int(v) for v in row) for row in rows)

    def reversed(self) -> "OrderingSet":
        return OrderingSet(self.ground, tuple(w[::-1] for w in self.words))

    def prefix_masks(self) -> set[int]:
        masks = set()
        for w in self.words:
            m = 0
            masks.add(m)
            for x in w:
                m |= 1 << x
                masks.add(m)
        return masks

    def describe(self) -> list[str]:
        return [self.ground.word(w) for w in self.words]


def from_antimatroid(a: Antimatroid, cap: int | None = None) -> OrderingSet:
    cap = word_cap() if cap is None else cap
    count = count_basic_words(a)
    if count > cap:
        raise WordCapExceeded(count, cap)
    return OrderingSet(a.ground, tuple(enumerate_basic_words(a)))


def pair_probability(o: OrderingSet, x: Element, y: Element) -> Fraction:
    i, j = o.ground.index(x), o.ground.index(y)
    if i == j:
        raise ValueError("pair_probability needs two distinct elements")
    return Fraction(o.before_counts[i][j], len(o))


def balance(o: OrderingSet) -> tuple[Fraction, tuple[int, int] | None]:
    return balance_from_counts(o.before_counts, len(o))


def adjacent_transposition_family(sigma: Sequence[Element],
                                  ground: GroundSet | None = None) -> OrderingSet:
    """``sigma`` together with its n-1 adjacent transpositions."""
    sigma = list(sigma)
    if len(sigma) < 2:
        raise ValueError("need at least two elements")
    words = [tuple(sigma)]
    for i in range(len(sigma) - 1):
        w = sigma[:]
        w[i], w[i + 1] = w[i + 1], w[i]
        words.append(tuple(w))
    return OrderingSet.from_words(words, ground)


def example_unbalanced_five() -> OrderingSet:
    """Four orderings of five items with no balanced pair."""
    return OrderingSet.from_words(["01234", "01243", "01324", "23014"])


# -- the ≺ relation ------------------------------------------------------------

@dataclass(frozen=True)
class Tournament:
    n: int
    prec: frozenset[tuple[int, int]]      # (x, y) with Pr[x<y] > 2/3
    balanced: frozenset[tuple[int, int]]  # (x, y), x < y, 1/3 <= Pr <= 2/3
    unbalanced: bool
    transitive: bool | None               # None unless unbalanced
    order: tuple[int, ...] | None         # the total order when transitive

    def relation(self, x: int, y: int) -> str:
        if (x, y) in self.prec:
            return "<"
        if (y, x) in self.prec:
            return ">"
        return "~"


def prec_tournament(o: OrderingSet) -> Tournament:
    n, total, c = o.n, len(o), o.before_counts
    prec, balanced = set(), set()
    for x in range(n):
        for y in range(x + 1, n):
            p = Fraction(c[x][y], total)
            if p > TWO_THIRDS:
                prec.add((x, y))
            elif p < ONE_THIRD:
                prec.add((y, x))
            else:
                balanced.add((x, y))
    unbalanced = not balanced
    transitive = order = None
    if unbalanced:
        wins = [0] * n
        for x, _ in prec:
            wins[x] += 1
        # A tournament is transitive iff its score sequence is 0..n-1.
        transitive = sorted(wins) == list(range(n))
        if transitive:
            order = tuple(sorted(range(n), key=lambda v: -wins[v]))
    return Tournament(n, frozenset(prec), frozenset(balanced), unbalanced,
                      transitive, order)


# -- swap classification -------------------------------------------------------

def _swapped(w: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    v = list(w)
    v[i], v[j] = v[j], v[i]
    return tuple(v)


@dataclass(frozen=True)
class SwapFlags:
    initial: bool
    final: bool
    independent: bool


def classify_swap(o: OrderingSet) -> list[SwapFlags]:
    """Initial, final and independent elements tested swap by swap."""
    n = o.n
    backward = [True] * n
    forward = [True] * n
    for w in o.words:
        for p in range(1, n):
            a, b = w[p - 1], w[p]
            if backward[b] or forward[a]:
                ok = _swapped(w, p - 1, p) in o.word_set
                if not ok:
                    backward[b] = False
                    forward[a] = False
    return [SwapFlags(backward[x], forward[x], backward[x] and forward[x])
            for x in range(n)]


def indistinguishable(o: OrderingSet, x: int, y: int) -> bool:
    """True if exchanging x and y maps every ordering to an ordering."""
    if x == y:
        return False
    r = o.ranks
    for k, w in enumerate(o.words):
        if _swapped(w, int(r[k, x]), int(r[k, y])) not in o.word_set:
            return False
    return True


# -- ladders --------------------------------------------------------------------

@dataclass(frozen=True)
class LadderReport:
    x: int
    ys: tuple[int, ...]
    valid: bool
    rung_sizes: tuple[int, ...]          # |W_-1|, |W_0|, ..., |W_{k-1}|
    probabilities: tuple[Fraction, ...]  # Pr[y_i < x], i = 0..k-1
    witness: tuple[tuple[int, ...], int] | None = None  # (ordering, condition)

    def formula(self, i: int) -> Fraction:
        """The rung-count expression for Pr[y_i < x]."""
        return Fraction(sum(self.rung_sizes[i + 1:]), sum(self.rung_sizes))


def verify_ladder(o: OrderingSet, x: Element, ys: Sequence[Element]) -> LadderReport:
    """Check whether (x, ys) is a ladder of ``o``.

    Condition 1 is read as: the ys that precede x in an ordering are exactly
    an initial segment y_0..y_r of the sequence, appearing in that order.
    Rung data is reported even when a condition fails.
    """
    x = o.ground.index(x)
    ys = tuple(o.ground.index(y) for y in ys)
    if not ys or len(set(ys)) != len(ys) or x in ys:
        raise ValueError("ladder sequence must be nonempty, duplicate-free "
                         "and must not contain x")
    k = len(ys)
    index = {y: i for i, y in enumerate(ys)}
    sizes = [0] * (k + 1)
    before = [0] * k
    witness = None
    r = o.ranks
    for row, w in enumerate(o.words):
        px = int(r[row, x])
        seen = [index[v] for v in w[:px] if v in index]
        rung = max(seen, default=-1)
        sizes[rung + 1] += 1
        for i in seen:
            before[i] += 1
        if witness is not None:
            continue
        if seen != list(range(len(seen))):
            witness = (w, 1)
        elif rung >= 0 and _swapped(w, px, int(r[row, ys[rung]])) not in o.word_set:
            witness = (w, 2)
    total = len(o)
    return LadderReport(x, ys, witness is None, tuple(sizes),
                        tuple(Fraction(b, total) for b in before), witness)


@dataclass(frozen=True)
class DoubleLadderReport:
    valid: bool
    first: LadderReport   # (x_0, Y)
    second: LadderReport  # (y_0, X)


def verify_double_ladder(o: OrderingSet, xs: Sequence[Element],
                         ys: Sequence[Element]) -> DoubleLadderReport:
    xs = [o.ground.index(v) for v in xs]
    ys = [o.ground.index(v) for v in ys]
    if not xs or not ys:
        raise ValueError("double ladder sequences must be nonempty")
    # The sequences may share later elements; only the heads are constrained.
    if xs[0] in ys or ys[0] in xs:
        raise ValueError("neither head may appear in the other sequence")
    first = verify_ladder(o, xs[0], ys)
    second = verify_ladder(o, ys[0], xs)
    return DoubleLadderReport(first.valid and second.valid, first, second)


# -- ranks ------------------------------------------------------------------------

@dataclass(frozen=True)
class RankStats:
    x: int
    y: int
    expected_rank: Fraction
    joint: tuple[tuple[Fraction, ...], ...]  # joint[i-1][j-1] = f(i, j)

    def f(self, i: int, j: int) -> Fraction:
        """Probability that x has rank i and y has rank j (1-based ranks)."""
        n = len(self.joint)
        if 1 <= i <= n and 1 <= j <= n:
            return self.joint[i - 1][j - 1]
        return Fraction(0)

    def rank_distribution(self) -> list[Fraction]:
        return [sum(row, Fraction(0)) for row in self.joint]


def expected_rank(o: OrderingSet, x: Element) -> Fraction:
    x = o.ground.index(x)
    return Fraction(int(o.ranks[:, x].sum()) + len(o), len(o))


def rank_statistics(o: OrderingSet, x: Element, y: Element) -> RankStats:
    x, y = o.ground.index(x), o.ground.index(y)
    if x == y:
        raise ValueError("rank statistics need two distinct elements")
    n, total = o.n, len(o)
    counts = np.zeros((n, n), dtype=np.int64)
    np.add.at(counts, (o.ranks[:, x], o.ranks[:, y]), 1)
    joint = tuple(tuple(Fraction(int(v), total) for v in row) for row in counts)
    return RankStats(x, y, expected_rank(o, x), joint)
