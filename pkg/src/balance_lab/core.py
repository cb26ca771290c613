"""Antimatroid kernel.

Families of sets are stored as sorted tuples of integer bitmasks over a ground
set of at most 20 labelled elements; element ``i`` is bit ``i``.  Everything
that reports a probability returns an exact :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

import networkx as nx

MAX_ELEMENTS = 20

Element = Union[int, str]


class AntimatroidError(ValueError):
    """Base class for every structural failure of a set family."""


class MissingEmptySet(AntimatroidError):
    def __init__(self):
        super().__init__("the empty set is not a member")


class NotAccessible(AntimatroidError):
    def __init__(self, mask: int):
        self.mask = mask
        super().__init__(f"member {mask:#b} has no removable element")


class NotUnionClosed(AntimatroidError):
    def __init__(self, first: int, second: int):
        self.first, self.second = first, second
        super().__init__(
            f"union of {first:#b} and {second:#b} is not a member")


class GroundNotCovered(AntimatroidError):
    def __init__(self, missing: int):
        self.missing = missing
        super().__init__(f"elements {missing:#b} belong to no member")


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _natural_key(label: str):
    return (0, int(label), "") if label.isdigit() else (1, 0, label)


@dataclass(frozen=True)
class GroundSet:
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if not 1 <= len(self.labels) <= MAX_ELEMENTS:
            raise ValueError(
                f"ground set must have 1..{MAX_ELEMENTS} elements, "
                f"got {len(self.labels)}")
        if any(not x for x in self.labels):
            raise ValueError("labels must be non-empty strings")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate labels in {self.labels}")

    @classmethod
    def of_size(cls, n: int) -> "GroundSet":
        return cls(tuple(str(i) for i in range(n)))

    @classmethod
    def from_elements(cls, elements: Iterable) -> "GroundSet":
        """Ground set of the distinct labels in ``elements``, naturally sorted."""
        labels = {str(x) for x in elements}
        return cls(tuple(sorted(labels, key=_natural_key)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.labels)}

    def index(self, x: Element) -> int:
        """Resolve an element id or label to its id."""
        if isinstance(x, int):
            if not 0 <= x < self.n:
                raise KeyError(f"element id {x} out of range")
            return x
        try:
            return self._index[str(x)]
        except KeyError:
            raise KeyError(f"unknown element label {x!r}") from None

    def mask(self, elements: Iterable[Element]) -> int:
        m = 0
        for x in elements:
            m |= 1 << self.index(x)
        return m

    def members(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def word(self, word: Sequence[int]) -> str:
        """Render a word of ids; single-character labels are concatenated."""
        labels = [self.labels[i] for i in word]
        if all(len(x) == 1 for x in self.labels):
            return "".join(labels)
        return " ".join(labels)


@dataclass(frozen=True)
class SetFamily:
    ground: GroundSet
    sets: tuple[int, ...]

    def __post_init__(self):
        sets = tuple(sorted(set(self.sets)))
        if not sets:
            raise ValueError("a set family must be nonempty")
        full = self.ground.full
        if sets[0] < 0 or any(s & ~full for s in sets):
            raise ValueError("family contains sets outside the ground set")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def from_sets(cls, ground: GroundSet | Iterable,
                  sets: Iterable[Iterable[Element]]) -> "SetFamily":
        if not isinstance(ground, GroundSet):
            ground = GroundSet(tuple(ground))
        return cls(ground, tuple(ground.mask(s) for s in sets))


def _first_violation(masks: Sequence[int], members) -> AntimatroidError | None:
    if not masks or masks[0] != 0:
        return MissingEmptySet()
    for k, s in enumerate(masks):
        if s and not any(s ^ (1 << i) in members for i in bits(s)):
            return NotAccessible(s)
        for t in masks[:k]:
            if (s | t) not in members:
                return NotUnionClosed(t, s)
    return None


class Antimatroid:
    """A validated antimatroid.  Build one with :func:`validate`."""

    __slots__ = ("family", "members", "__dict__")

    def __init__(self, family: SetFamily, *, _checked: bool = False):
        if not _checked:
            raise TypeError("use validate() to construct an Antimatroid")
        self.family = family
        self.members = frozenset(family.sets)

    @classmethod
    def _trusted(cls, ground: GroundSet, masks: Iterable[int]) -> "Antimatroid":
        return cls(SetFamily(ground, tuple(masks)), _checked=True)

    @property
    def ground(self) -> GroundSet:
        return self.family.ground

    @property
    def n(self) -> int:
        return self.family.ground.n

    @property
    def masks(self) -> tuple[int, ...]:
        return self.family.sets

    def __len__(self) -> int:
        return len(self.family.sets)

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    def __eq__(self, other) -> bool:
        if not isinstance(other, Antimatroid):
            return NotImplemented
        return self.family == other.family

    def __hash__(self) -> int:
        return hash(self.family)

    def __repr__(self) -> str:
        sets = ["{" + ",".join(self.ground.members(m)) + "}" for m in self.masks]
        return f"Antimatroid([{', '.join(sets)}])"

    def removable(self, mask: int) -> list[int]:
        return [i for i in bits(mask) if mask ^ (1 << i) in self.members]

    def addable(self, mask: int) -> list[int]:
        return [i for i in bits(self.ground.full & ~mask)
                if mask | (1 << i) in self.members]

    @cached_property
    def prefix_counts(self) -> dict[int, int]:
        """Number of feasible chains from the empty set to each member."""
        f = {0: 1}
        members = self.members
        for s in self.masks[1:]:
            total = 0
            for i in bits(s):
                t = s ^ (1 << i)
                if t in members:
                    total += f[t]
            f[s] = total
        return f

    @cached_property
    def suffix_counts(self) -> dict[int, int]:
        """Number of feasible chains from each member up to the ground set."""
        full = self.ground.full
        h = {full: 1}
        members = self.members
        for s in reversed(self.masks[:-1]):
            total = 0
            for i in bits(full & ~s):
                t = s | (1 << i)
                if t in members:
                    total += h[t]
            h[s] = total
        return h

    @cached_property
    def before_counts(self) -> tuple[tuple[int, ...], ...]:
        """``c[x][y]`` = number of basic words in which x precedes y."""
        n = self.n
        c = [[0] * n for _ in range(n)]
        f, h = self.prefix_counts, self.suffix_counts
        full = self.ground.full
        members = self.members
        for s in self.masks:
            fs = f[s]
            inside = list(bits(s))
            for y in bits(full & ~s):
                t = s | (1 << y)
                if t in members:
                    w = fs * h[t]
                    for x in inside:
                        c[x][y] += w
        return tuple(tuple(row) for row in c)


def validate(family: SetFamily) -> Antimatroid:
    """Check accessibility and union closure, reporting the first failure.

    Failures are searched in ascending mask order: the first member without a
    removable element, or the first pair (earlier, later) whose union is
    missing.  Finally the members must cover the ground set.
    """
    members = frozenset(family.sets)
    err = _first_violation(family.sets, members)
    if err is not None:
        raise err
    if family.sets[-1] != family.ground.full:
        raise GroundNotCovered(family.ground.full & ~family.sets[-1])
    return Antimatroid(family, _checked=True)


def from_sets(labels: Iterable, sets: Iterable[Iterable[Element]]) -> Antimatroid:
    return validate(SetFamily.from_sets(labels, sets))


def power_set(n_or_labels: int | Iterable) -> Antimatroid:
    if isinstance(n_or_labels, int):
        ground = GroundSet.of_size(n_or_labels)
    else:
        ground = GroundSet(tuple(n_or_labels))
    return Antimatroid._trusted(ground, range(ground.full + 1))


def chain_antimatroid(word: Sequence[Element],
                      ground: GroundSet | None = None) -> Antimatroid:
    """The antimatroid whose members are the prefixes of ``word``."""
    word = list(word)
    if len({str(x) for x in word}) != len(word):
        raise ValueError(f"duplicate elements in word {word!r}")
    if ground is None:
        ground = GroundSet.from_elements(word)
    if len(word) != ground.n:
        raise ValueError("word must be a permutation of the ground set")
    masks, m = [0], 0
    for x in word:
        m |= 1 << ground.index(x)
        masks.append(m)
    return Antimatroid._trusted(ground, masks)


def join(a: Antimatroid, b: Antimatroid) -> Antimatroid:
    """The family of all unions of a member of ``a`` with a member of ``b``.

    The result's ground lists the labels of ``a`` followed by the labels of
    ``b`` that ``a`` lacks.
    """
    labels = list(a.ground.labels)
    labels += [x for x in b.ground.labels if x not in a.ground._index]
    ground = GroundSet(tuple(labels))
    remap = [1 << ground.index(x) for x in b.ground.labels]
    b_masks = {sum(remap[i] for i in bits(m)) for m in b.masks}
    sets = {x | y for x in a.masks for y in b_masks}
    return validate(SetFamily(ground, tuple(sets)))


def count_basic_words(a: Antimatroid) -> int:
    return a.prefix_counts[a.ground.full]


def enumerate_basic_words(a: Antimatroid) -> Iterator[tuple[int, ...]]:
    """Yield every basic word once, in lexicographic order of element ids."""
    full = a.ground.full
    word: list[int] = []

    def extend(s):
        if s == full:
            yield tuple(word)
            return
        for x in a.addable(s):
            word.append(x)
            yield from extend(s | (1 << x))
            word.pop()

    yield from extend(0)


def pair_probability(a: Antimatroid, x: Element, y: Element) -> Fraction:
    """Probability that x precedes y in a uniformly random basic word."""
    i, j = a.ground.index(x), a.ground.index(y)
    if i == j:
        raise ValueError("pair_probability needs two distinct elements")
    return Fraction(a.before_counts[i][j], count_basic_words(a))


def balance_from_counts(counts, total: int):
    """Shared maximin over a before-count matrix; ties go to the smallest pair."""
    n = len(counts)
    best, pair = -1, None
    for x in range(n):
        row = counts[x]
        for y in range(x + 1, n):
            c = row[y]
            v = c if 2 * c <= total else total - c
            if v > best:
                best, pair = v, (x, y)
    if pair is None:
        return Fraction(0), None
    return Fraction(best, total), pair


def balance(a: Antimatroid) -> tuple[Fraction, tuple[int, int] | None]:
    """Balance of ``a`` and the lexicographically first pair attaining it."""
    return balance_from_counts(a.before_counts, count_basic_words(a))


# -- paths -------------------------------------------------------------------

@dataclass(frozen=True)
class PathPoset:
    paths: tuple[tuple[int, int], ...]  # (mask, endpoint), ascending by mask
    order: tuple[tuple[bool, ...], ...]  # order[i][j]: paths[i] ⊆ paths[j]

    def __len__(self):
        return len(self.paths)

    def less(self, i: int, j: int) -> bool:
        return i != j and self.order[i][j]


def paths(a: Antimatroid) -> list[tuple[int, int]]:
    """Members with exactly one removable element, with that endpoint."""
    out = []
    for s in a.masks[1:]:
        r = a.removable(s)
        if len(r) == 1:
            out.append((s, r[0]))
    return out


def path_poset(a: Antimatroid) -> PathPoset:
    ps = tuple(paths(a))
    order = tuple(tuple(p & q == p for q, _ in ps) for p, _ in ps)
    return PathPoset(ps, order)


def height(a: Antimatroid) -> int:
    """Largest number of paths in a chain of the path poset."""
    masks = [p for p, _ in paths(a)]
    longest: list[int] = []
    for k, p in enumerate(masks):
        below = [longest[j] for j in range(k) if masks[j] & p == masks[j]]
        longest.append(1 + max(below, default=0))
    return max(longest, default=0)


def path_chain_cover(a: Antimatroid) -> list[list[int]]:
    """A minimum cover of the path poset by chains (Dilworth via matching).

    Each chain is a list of path masks in increasing order; the number of
    chains is the convex dimension.
    """
    masks = [p for p, _ in paths(a)]
    g = nx.Graph()
    left = [("L", i) for i in range(len(masks))]
    g.add_nodes_from(left)
    g.add_nodes_from(("R", i) for i in range(len(masks)))
    for i, p in enumerate(masks):
        for j, q in enumerate(masks):
            if i != j and p & q == p:
                g.add_edge(("L", i), ("R", j))
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=left)
    succ = {i: matching[("L", i)][1] for i in range(len(masks))
            if ("L", i) in matching}
    has_pred = set(succ.values())
    chains = []
    for i in range(len(masks)):
        if i in has_pred:
            continue
        chain = [masks[i]]
        while i in succ:
            i = succ[i]
            chain.append(masks[i])
        chains.append(chain)
    return chains


def convex_dimension(a: Antimatroid) -> int:
    return len(path_chain_cover(a))


@dataclass(frozen=True)
class Roles:
    initial: bool
    final: bool
    independent: bool


def element_roles(a: Antimatroid) -> list[Roles]:
    """Initial / final / independent flags read off the paths of ``a``."""
    ps = paths(a)
    roles = []
    for x in range(a.n):
        bit = 1 << x
        initial = bit in a.members
        final = all(e == x for p, e in ps if p & bit)
        independent = initial and all(p == bit for p, _ in ps if p & bit)
        if independent != (initial and final):
            raise AssertionError(f"role characterisations disagree on {x}")
        roles.append(Roles(initial, final, independent))
    return roles


def is_intersection_closed(a: Antimatroid) -> bool:
    """True exactly for poset antimatroids (lower-set families)."""
    ms = a.masks
    return all((s & t) in a.members for k, s in enumerate(ms) for t in ms[:k])
