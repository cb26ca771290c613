"""Reverse-search enumeration of all antimatroids on a small labelled ground set.

The search tree is rooted at the power set.  The parent of a non-root
antimatroid adds back its smallest addable set; children of a node are the
removals of a single path whose parent is that node.  With ``dedup`` the
traversal instead runs level by level (level = number of removed sets) and
keeps one representative per isomorphism class.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable, Iterator, TextIO

from .core import (Antimatroid, GroundSet, bits, count_basic_words,
                   is_intersection_closed)
from . import core

log = logging.getLogger(__name__)

MAX_SCAN_N = 6
ONE_THIRD = Fraction(1, 3)


# -- set-level primitives --------------------------------------------------------

def _can_add(members, s: int) -> bool:
    """Whether ``members ∪ {s}`` is an antimatroid (``s`` not yet a member)."""
    if not any(s ^ (1 << i) in members for i in bits(s)):
        return False
    for t in members:
        u = t | s
        if u != s and u not in members:
            return False
    return True


def _min_addable(members, full: int, below: int | None = None) -> int | None:
    stop = full + 1 if below is None else below
    for s in range(1, stop):
        if s not in members and _can_add(members, s):
            return s
    return None


def _can_remove(members, s: int, full: int) -> bool:
    """Whether ``members ∖ {s}`` is an antimatroid on the same ground set.

    ``s`` must be a path (a set with one removable element) -- paths are
    exactly the members that are not unions of two others -- and every
    member ``s ∪ {x}`` must keep a removable element other than ``x``.
    """
    if s == 0 or s == full:
        return False
    if sum(1 for i in bits(s) if s ^ (1 << i) in members) != 1:
        return False
    for x in bits(full & ~s):
        t = s | (1 << x)
        if t in members and not any(
                t ^ (1 << y) in members for y in bits(s)):
            return False
    return True


def addable_sets(a: Antimatroid) -> list[int]:
    """Every mask S ∉ a for which a ∪ {S} is again an antimatroid."""
    out = [s for s in range(1, a.ground.full + 1)
           if s not in a.members and _can_add(a.members, s)]
    if not out and len(a) != 1 << a.n:
        raise AssertionError("non-power-set antimatroid with nothing addable")
    return out


def parent(a: Antimatroid) -> Antimatroid:
    if len(a) == 1 << a.n:
        raise ValueError("the power set is the root and has no parent")
    s = _min_addable(a.members, a.ground.full)
    if s is None:
        raise AssertionError("non-power-set antimatroid with nothing addable")
    return Antimatroid._trusted(a.ground, a.masks + (s,))


def _children_masks(members: set, full: int) -> Iterator[int]:
    """Masks whose removal yields a reverse-search child of ``members``."""
    for s in sorted(members):
        if not _can_remove(members, s, full):
            continue
        members.discard(s)
        is_child = _min_addable(members, full, below=s) is None
        members.add(s)
        if is_child:
            yield s


def children(b: Antimatroid) -> list[Antimatroid]:
    members = set(b.members)
    return [Antimatroid._trusted(b.ground, (m for m in b.masks if m != s))
            for s in _children_masks(members, b.ground.full)]


# -- canonical forms ----------------------------------------------------------------

_PERM_TABLES: dict[int, list[list[int]]] = {}


def _perm_tables(n: int) -> list[list[int]]:
    """For each permutation of range(n), the induced map on all masks."""
    if n not in _PERM_TABLES:
        tables = []
        for p in permutations(range(n)):
            table = [0] * (1 << n)
            for m in range(1, 1 << n):
                low = m & -m
                table[m] = table[m ^ low] | (1 << p[low.bit_length() - 1])
            tables.append(table)
        _PERM_TABLES[n] = tables
    return _PERM_TABLES[n]


def _orbit_minimum(masks, n: int) -> tuple[tuple[int, ...], int]:
    """Lexicographically least relabelled mask list and the stabiliser size."""
    best = None
    stab = 0
    for table in _perm_tables(n):
        image = sorted([table[m] for m in masks])
        if best is None or image < best:
            best, stab = image, 1
        elif image == best:
            stab += 1
    return tuple(best), stab


def canonical_form(a: Antimatroid) -> tuple[int, ...]:
    """Least sorted mask list over all relabellings of the ground set."""
    if a.n > 8:
        raise ValueError("canonical_form is limited to 8 elements")
    return _orbit_minimum(a.masks, a.n)[0]


# -- traversal ----------------------------------------------------------------------

def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_SCAN_N:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_SCAN_N}, got {n}")


def _dfs(ground: GroundSet, members: set, depth: int) -> Iterator[tuple[Antimatroid, int]]:
    full = ground.full
    # Each frame holds the mask removed to reach it and an iterator of
    # candidate child masks; the set itself is mutated in place.
    yield Antimatroid._trusted(ground, members), depth
    stack = [(None, _children_masks(members, full))]
    while stack:
        removed, it = stack[-1]
        s = next(it, None)
        if s is None:
            stack.pop()
            if removed is not None:
                members.add(removed)
                depth -= 1
            continue
        members.discard(s)
        depth += 1
        yield Antimatroid._trusted(ground, members), depth
        stack.append((s, _children_masks(members, full)))


def _root_members(n: int) -> set:
    return set(range(1 << n))


def iter_labelled(n: int) -> Iterator[Antimatroid]:
    """Every antimatroid on ground {0..n-1}, each exactly once, in DFS order."""
    _check_n(n)
    ground = GroundSet.of_size(n)
    for a, _ in _dfs(ground, _root_members(n), 0):
        yield a


def _iter_subtree(n: int, root_child: int) -> Iterator[Antimatroid]:
    """The subtree hanging below the root's child obtained by removing a mask."""
    ground = GroundSet.of_size(n)
    members = _root_members(n)
    members.discard(root_child)
    for a, _ in _dfs(ground, members, 1):
        yield a


def iter_classes(n: int) -> Iterator[tuple[Antimatroid, int]]:
    """One representative per isomorphism class, with its automorphism count.

    Level k holds the classes with 2^n - k members.  Every class of level
    k+1 is reached from some level-k class by deleting one member, so
    deleting every removable member of every representative is complete.
    """
    _check_n(n)
    ground = GroundSet.of_size(n)
    full = ground.full
    level = {tuple(range(1 << n)): None}
    while level:
        nxt: dict[tuple[int, ...], None] = {}
        for rep in level:
            canon, stab = _orbit_minimum(rep, n)
            yield Antimatroid._trusted(ground, rep), stab
            members = set(rep)
            for s in rep:
                if _can_remove(members, s, full):
                    child = tuple(m for m in rep if m != s)
                    nxt.setdefault(_orbit_minimum(child, n)[0], None)
        level = nxt


@dataclass
class ScanReport:
    n: int
    dedup: bool = False
    total_count: int = 0
    iso_class_count: int | None = None
    multiword_count: int = 0
    min_balance: Fraction | None = None
    argmin: tuple[int, ...] | None = None
    counterexamples: list[tuple[int, ...]] = field(default_factory=list)
    tight_count: int = 0
    tight_non_poset: dict[tuple[int, ...], int] = field(default_factory=dict)

    def absorb(self, other: "ScanReport") -> None:
        """Merge a report for a later part of the traversal into this one."""
        self.total_count += other.total_count
        self.multiword_count += other.multiword_count
        if other.min_balance is not None and (
                self.min_balance is None or other.min_balance < self.min_balance):
            self.min_balance, self.argmin = other.min_balance, other.argmin
        self.counterexamples.extend(other.counterexamples)
        self.tight_count += other.tight_count
        for k, v in other.tight_non_poset.items():
            self.tight_non_poset.setdefault(k, v)

    def to_json(self) -> dict:
        def frac(q):
            return None if q is None else f"{q.numerator}/{q.denominator}"
        return {
            "n": self.n,
            "dedup": self.dedup,
            "total_count": str(self.total_count),
            "iso_class_count": (None if self.iso_class_count is None
                                else str(self.iso_class_count)),
            "multiword_count": str(self.multiword_count),
            "min_balance": frac(self.min_balance),
            "argmin": None if self.argmin is None else list(self.argmin),
            "counterexamples": [list(c) for c in self.counterexamples],
            "tight_count": str(self.tight_count),
            "tight_non_poset": [
                {"canonical": list(k), "convex_dimension": v}
                for k, v in sorted(self.tight_non_poset.items())],
        }


def reverse_search(n: int, visitor: Callable[[Antimatroid], None] | None = None,
                   dedup: bool = False) -> ScanReport:
    """Visit every antimatroid on n labelled elements (or every class)."""
    report = ScanReport(n, dedup)
    if dedup:
        classes = 0
        for a, stab in iter_classes(n):
            classes += 1
            report.total_count += math.factorial(n) // stab
            if visitor is not None:
                visitor(a)
        report.iso_class_count = classes
        return report
    for a in iter_labelled(n):
        report.total_count += 1
        if visitor is not None:
            visitor(a)
    return report


def scan_record(a: Antimatroid, words: int, delta: Fraction, certs) -> dict:
    return {
        "n": a.n,
        "family": list(a.masks),
        "canonical": list(canonical_form(a)),
        "words": str(words),
        "delta": f"{delta.numerator}/{delta.denominator}",
        "certs": list(certs),
    }


class _Scanner:
    """Accumulates the conjecture statistics for a stream of antimatroids."""

    def __init__(self, n: int, records: bool):
        self.report = ScanReport(n)
        self.lines: list[str] | None = [] if records else None

    def visit(self, a: Antimatroid, weight: int = 1) -> None:
        rep = self.report
        rep.total_count += weight
        words = count_basic_words(a)
        delta = core.balance(a)[0] if words > 1 else Fraction(0)
        if words > 1:
            rep.multiword_count += weight
            if rep.min_balance is None or delta < rep.min_balance:
                rep.min_balance, rep.argmin = delta, a.masks
            if delta < ONE_THIRD:
                rep.counterexamples.append(a.masks)
            elif delta == ONE_THIRD:
                rep.tight_count += weight
                if not is_intersection_closed(a):
                    key = canonical_form(a)
                    if key not in rep.tight_non_poset:
                        rep.tight_non_poset[key] = core.convex_dimension(a)
        if self.lines is not None:
            from .witnesses import certify
            tags = [c.tag for c in certify(a, delta_known=delta).certificates]
            self.lines.append(json.dumps(scan_record(a, words, delta, tags)))


def _scan_subtree(args) -> tuple[ScanReport, list[str] | None]:
    n, root_child, records = args
    scanner = _Scanner(n, records)
    for a in _iter_subtree(n, root_child):
        scanner.visit(a)
    return scanner.report, scanner.lines


def conjecture_scan(n: int, dedup: bool = False, out: TextIO | None = None,
                    jobs: int = 1) -> ScanReport:
    """Compute the balance of every antimatroid with n elements.

    Without ``dedup`` every labelled antimatroid is visited (n <= 5 in
    practice); ``jobs`` distributes the root's subtrees over processes and
    merges the results in traversal order, so output does not depend on it.
    With ``dedup`` one representative per isomorphism class is scanned.
    JSONL records are written to ``out`` when given.
    """
    _check_n(n)
    if n == MAX_SCAN_N and not dedup:
        raise ValueError("n = 6 requires dedup")
    records = out is not None
    if dedup:
        scanner = _Scanner(n, records)
        classes = 0
        for a, stab in iter_classes(n):
            classes += 1
            scanner.visit(a, weight=math.factorial(n) // stab)
            if classes % 1000 == 0:
                log.info("n=%d: %d classes scanned", n, classes)
        report = scanner.report
        report.dedup, report.iso_class_count = True, classes
        _write(out, scanner.lines)
        return report

    root = _Scanner(n, records)
    ground = GroundSet.of_size(n)
    members = _root_members(n)
    root.visit(Antimatroid._trusted(ground, members))
    _write(out, root.lines)
    tasks = [(n, s, records) for s in _children_masks(members, ground.full)]
    report = root.report
    if jobs > 1 and len(tasks) > 1:
        from multiprocessing import Pool
        with Pool(jobs) as pool:
            results = pool.imap(_scan_subtree, tasks)
            for part, lines in results:
                report.absorb(part)
                _write(out, lines)
    else:
        for task in tasks:
            part, lines = _scan_subtree(task)
            report.absorb(part)
            _write(out, lines)
    return report


def _write(out: TextIO | None, lines: Iterable[str] | None) -> None:
    if out is None or not lines:
        return
    for line in lines:
        out.write(line + "\n")
