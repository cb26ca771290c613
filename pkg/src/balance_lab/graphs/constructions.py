"""Antimatroids built from graphs and posets by closure under an addability rule."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from ..core import Antimatroid, GroundSet, SetFamily, bits, validate
from .graph import Graph, is_chordal


def closure_family(ground: GroundSet, addable: Callable[[int], int]) -> Antimatroid:
    """All sets reachable from the empty set; ``addable(S)`` is a mask.

    The result is validated rather than trusted, so a faulty rule surfaces
    as an axiom violation.
    """
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for s in frontier:
            for x in bits(addable(s) & ~s):
                t = s | 1 << x
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return validate(SetFamily(ground, tuple(seen)))


def node_search_elements(g: Graph, s: int) -> list[int]:
    """Vertices that become elements: s's component minus s, by vertex id."""
    return [v for v in bits(g.component(s)) if v != s]


def node_search_antimatroid(g: Graph, s) -> Antimatroid:
    """Feasible sets are the S with S + s connected.

    A disconnected graph is restricted to the component of the source.
    Element labels are the vertex labels.
    """
    s = g.index(s)
    if not 0 <= s < g.n:
        raise KeyError(f"source {s} not in graph")
    verts = node_search_elements(g, s)
    if not verts:
        raise ValueError("the source has no reachable vertices")
    ground = GroundSet(tuple(g.labels[v] for v in verts))
    # element i <-> vertex verts[i]
    nbr = [sum(1 << i for i, v in enumerate(verts) if g.adj[u] >> v & 1)
           for u in verts]
    start = sum(1 << i for i, v in enumerate(verts) if g.adj[s] >> v & 1)

    def addable(mask: int) -> int:
        out = start
        for i in bits(mask):
            out |= nbr[i]
        return out

    return closure_family(ground, addable)


def elimination_antimatroid(g: Graph) -> Antimatroid:
    """Feasible sets are the vertex sets removable by simplicial deletions."""
    if not is_chordal(g)[0]:
        raise ValueError("elimination antimatroids need a chordal graph")
    ground = GroundSet(g.labels)
    full = g.full

    def addable(mask: int) -> int:
        rest = full & ~mask
        return sum(1 << v for v in bits(rest) if g.is_simplicial(v, rest))

    return closure_family(ground, addable)


@dataclass(frozen=True)
class PosetRelation:
    labels: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]   # leq[i][j] means i <= j

    def __post_init__(self):
        n = len(self.labels)
        if len(self.leq) != n or any(len(r) != n for r in self.leq):
            raise ValueError("order matrix must be square")
        r = self.leq
        for i in range(n):
            if not r[i][i]:
                raise ValueError("relation is not reflexive")
            for j in range(n):
                if i != j and r[i][j] and r[j][i]:
                    raise ValueError("relation is not antisymmetric")
                for k in range(n):
                    if r[i][j] and r[j][k] and not r[i][k]:
                        raise ValueError("relation is not transitive")

    @classmethod
    def from_relations(cls, labels: Sequence, pairs: Iterable[Sequence],
                       close: bool = True) -> "PosetRelation":
        """Build from (smaller, larger) pairs, taking the transitive closure."""
        labels = tuple(str(x) for x in labels)
        index = {x: i for i, x in enumerate(labels)}
        n = len(labels)
        m = [[i == j for j in range(n)] for i in range(n)]
        for a, b in pairs:
            a = a if isinstance(a, int) else index[str(a)]
            b = b if isinstance(b, int) else index[str(b)]
            m[a][b] = True
        if close:
            for k in range(n):
                for i in range(n):
                    if m[i][k]:
                        for j in range(n):
                            m[i][j] = m[i][j] or m[k][j]
        return cls(labels, tuple(tuple(r) for r in m))

    @property
    def n(self) -> int:
        return len(self.labels)

    def down_mask(self, j: int) -> int:
        """Strict predecessors of j."""
        return sum(1 << i for i in range(self.n) if i != j and self.leq[i][j])

    def cover_pairs(self) -> list[tuple[int, int]]:
        n, r = self.n, self.leq
        return [(i, j) for i in range(n) for j in range(n)
                if i != j and r[i][j]
                and not any(k not in (i, j) and r[i][k] and r[k][j] for k in range(n))]


def poset_antimatroid(p: PosetRelation) -> Antimatroid:
    """Lower sets of ``p``; the basic words are its linear extensions."""
    down = [p.down_mask(j) for j in range(p.n)]

    def addable(mask: int) -> int:
        return sum(1 << j for j in range(p.n) if down[j] & ~mask == 0)

    return closure_family(GroundSet(p.labels), addable)
