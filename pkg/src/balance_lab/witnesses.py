"""Structural certificates that an antimatroid has a balanced pair."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import ClassVar, Sequence, Union

from . import core
from .core import Antimatroid, chain_antimatroid, count_basic_words
from .orderings import (DoubleLadderReport, OrderingSet, WordCapExceeded,
                        classify_swap, from_antimatroid, indistinguishable,
                        verify_double_ladder, verify_ladder)
from . import orderings

ONE_THIRD = Fraction(1, 3)
SMALL_N = 6       # every antimatroid this small has been checked exhaustively
MANY_MIN_N = 7


class SoundnessError(AssertionError):
    """A certificate was produced for an antimatroid that is not balanced."""


@dataclass(frozen=True)
class ChainAntimatroid:
    tag: ClassVar[str] = "chain"

    def to_json(self, ground) -> dict:
        return {"tag": self.tag}


@dataclass(frozen=True)
class IndependentElement:
    x: int
    tag: ClassVar[str] = "independent-element"

    def to_json(self, ground) -> dict:
        return {"tag": self.tag, "element": ground.labels[self.x]}


@dataclass(frozen=True)
class IndistinguishablePair:
    x: int
    y: int
    tag: ClassVar[str] = "indistinguishable-pair"

    def to_json(self, ground) -> dict:
        return {"tag": self.tag,
                "pair": [ground.labels[self.x], ground.labels[self.y]]}


@dataclass(frozen=True)
class DoubleLadder:
    xs: tuple[int, ...]
    ys: tuple[int, ...]
    report: DoubleLadderReport | None = field(default=None, compare=False)
    tag: ClassVar[str] = "double-ladder"

    def to_json(self, ground) -> dict:
        return {"tag": self.tag,
                "X": [ground.labels[v] for v in self.xs],
                "Y": [ground.labels[v] for v in self.ys]}


@dataclass(frozen=True)
class ManyInitialFinal:
    side: str  # "initial" or "final"
    count: int
    n: int
    tag: ClassVar[str] = "many-initial-final"

    def __post_init__(self):
        if self.side not in ("initial", "final"):
            raise ValueError(f"bad side {self.side!r}")
        if self.n < MANY_MIN_N or 2 * self.count < self.n:
            raise ValueError("needs n >= 7 and at least half the elements")

    def to_json(self, ground) -> dict:
        return {"tag": self.tag, "side": self.side,
                "count": self.count, "n": self.n}


@dataclass(frozen=True)
class ConvexDim2:
    words: tuple[tuple[int, ...], tuple[int, ...]]
    ladder: DoubleLadder
    tag: ClassVar[str] = "convex-dim-2"

    def to_json(self, ground) -> dict:
        return {"tag": self.tag,
                "words": [ground.word(w) for w in self.words],
                "X": [ground.labels[v] for v in self.ladder.xs],
                "Y": [ground.labels[v] for v in self.ladder.ys]}


@dataclass(frozen=True)
class ExhaustiveSmall:
    n: int
    tag: ClassVar[str] = "exhaustive-small"

    def to_json(self, ground) -> dict:
        return {"tag": self.tag, "n": self.n}


Certificate = Union[ChainAntimatroid, IndependentElement, IndistinguishablePair,
                    DoubleLadder, ManyInitialFinal, ConvexDim2, ExhaustiveSmall]


def verify_certificate(cert: Certificate, o: OrderingSet) -> bool:
    """Re-check a certificate against an explicit set of orderings."""
    if isinstance(cert, ChainAntimatroid):
        return len(o) == 1
    if isinstance(cert, IndependentElement):
        return classify_swap(o)[cert.x].independent
    if isinstance(cert, IndistinguishablePair):
        return indistinguishable(o, cert.x, cert.y)
    if isinstance(cert, DoubleLadder):
        return verify_double_ladder(o, cert.xs, cert.ys).valid
    if isinstance(cert, ConvexDim2):
        return verify_certificate(cert.ladder, o)
    if isinstance(cert, ManyInitialFinal):
        flags = classify_swap(o)
        count = sum(getattr(f, cert.side) for f in flags)
        return o.n >= MANY_MIN_N and 2 * count >= o.n
    if isinstance(cert, ExhaustiveSmall):
        return o.n <= SMALL_N and (len(o) == 1
                                   or orderings.balance(o)[0] >= ONE_THIRD)
    raise TypeError(f"not a certificate: {cert!r}")


# -- finders ---------------------------------------------------------------------

def find_independent_element(a: Antimatroid) -> IndependentElement | None:
    for x, r in enumerate(core.element_roles(a)):
        if r.independent:
            return IndependentElement(x)
    return None


def find_many_initial_final(a: Antimatroid) -> ManyInitialFinal | None:
    n = a.n
    if n < MANY_MIN_N:
        return None
    roles = core.element_roles(a)
    for side in ("initial", "final"):
        count = sum(getattr(r, side) for r in roles)
        if 2 * count >= n:
            return ManyInitialFinal(side, count, n)
    return None


def _extend_chain(a: Antimatroid, chain: Sequence[int]) -> tuple[int, ...]:
    """A basic word having every path of ``chain`` as a prefix."""
    word: list[int] = []
    s = 0
    for target in list(chain) + [a.ground.full]:
        while s != target:
            x = min(i for i in a.addable(s) if target >> i & 1)
            word.append(x)
            s |= 1 << x
    return tuple(word)


def defining_words(a: Antimatroid) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two basic words whose chain antimatroids join to ``a``, if dimension 2.

    Any basic word through each chain of a minimum chain cover works: every
    member is the union of its largest path from each chain.
    """
    cover = core.path_chain_cover(a)
    if len(cover) != 2:
        return None
    x, y = (_extend_chain(a, c) for c in cover)
    joined = core.join(chain_antimatroid(x, a.ground), chain_antimatroid(y, a.ground))
    if joined.members != a.members:
        raise AssertionError("chain-cover words do not reproduce the antimatroid")
    return x, y


def find_convex_dim2_double_ladder(a: Antimatroid, cap: int | None = None
                                   ) -> ConvexDim2 | None:
    words = defining_words(a)
    if words is None:
        return None
    x, y = list(words[0]), list(words[1])
    # A shared first element starts every basic word; drop it from both.
    while x[0] == y[0]:
        x.pop(0)
        y.pop(0)
    xs = tuple(x[:x.index(y[0])])
    ys = tuple(y[:y.index(x[0])])
    o = from_antimatroid(a, cap)
    report = verify_double_ladder(o, xs, ys)
    if not report.valid:
        raise AssertionError(f"convex-dimension-2 ladder failed: {report}")
    return ConvexDim2(words, DoubleLadder(xs, ys, report))


def _grow_ladder(o: OrderingSet, x: int, ys: list[int], max_len: int) -> tuple[int, ...] | None:
    """Extend ``ys`` until (x, ys) is a ladder, or give up.

    A failed swap at a rung below the last can never be repaired by
    extension, nor can a broken prefix order, so only a failed swap at the
    top rung branches: the next y must lie between y_top and x in that word.
    """
    report = verify_ladder(o, x, ys)
    if report.valid:
        return tuple(ys)
    word, condition = report.witness
    if condition == 1 or len(ys) >= max_len:
        return None
    px, ptop = word.index(x), word.index(ys[-1])
    if ptop > px:
        return None
    for z in sorted(word[ptop + 1:px]):
        found = _grow_ladder(o, x, ys + [z], max_len)
        if found is not None:
            return found
    return None


def search_double_ladder_orderings(o: OrderingSet, max_len: int | None = None
                                   ) -> DoubleLadder | None:
    """First double ladder found over pairs (x_0, y_0) in id order."""
    n = o.n
    max_len = n if max_len is None else max_len
    for x0 in range(n):
        for y0 in range(x0 + 1, n):
            ys = _grow_ladder(o, x0, [y0], max_len)
            if ys is None:
                continue
            xs = _grow_ladder(o, y0, [x0], max_len)
            if xs is None or xs[0] in ys or ys[0] in xs:
                continue
            report = verify_double_ladder(o, xs, ys)
            if report.valid:
                return DoubleLadder(xs, ys, report)
    return None


def search_double_ladder(a: Antimatroid, max_len: int | None = None,
                         cap: int | None = None) -> DoubleLadder | None:
    return search_double_ladder_orderings(from_antimatroid(a, cap), max_len)


@dataclass(frozen=True)
class Certification:
    certificates: tuple[Certificate, ...]
    delta: Fraction
    pair: tuple[int, int] | None
    words: int
    conjecture_ok: bool

    @property
    def tags(self) -> list[str]:
        return [c.tag for c in self.certificates]


def certify(a: Antimatroid, cap: int | None = None,
            delta_known: Fraction | None = None) -> Certification:
    """Run every finder and cross-check against the exact balance.

    Finders that need the explicit basic words are skipped when the word
    count exceeds the materialisation cap.
    """
    words = count_basic_words(a)
    if delta_known is None:
        delta, pair = core.balance(a)
    else:
        delta, pair = delta_known, None
    certs: list[Certificate] = []
    if words == 1:
        certs.append(ChainAntimatroid())
    for finder in (find_independent_element, find_many_initial_final):
        c = finder(a)
        if c is not None:
            certs.append(c)
    try:
        for c in (find_convex_dim2_double_ladder(a, cap), search_double_ladder(a, cap=cap)):
            if c is not None:
                certs.append(c)
    except WordCapExceeded:
        pass
    balanced = words == 1 or delta >= ONE_THIRD
    if a.n <= SMALL_N and balanced:
        certs.append(ExhaustiveSmall(a.n))
    if words > 1 and certs and not balanced:
        raise SoundnessError(f"certificates {certs} but balance {delta}")
    return Certification(tuple(certs), delta, pair, words, balanced)
