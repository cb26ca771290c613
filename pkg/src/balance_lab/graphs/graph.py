"""Small undirected graphs on bitsets, with recognizers and seeded generators."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from ..core import bits, popcount

MAX_VERTICES = 20


@dataclass(frozen=True)
class Graph:
    labels: tuple[str, ...]
    adj: tuple[int, ...]

    def __post_init__(self):
        n = len(self.labels)
        if not 1 <= n <= MAX_VERTICES:
            raise ValueError(f"graphs have 1..{MAX_VERTICES} vertices")
        if len(set(self.labels)) != n or len(self.adj) != n:
            raise ValueError("labels must be distinct, one adjacency row each")
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError(f"self-loop at {self.labels[v]}")
            if row >> n:
                raise ValueError("adjacency outside the vertex set")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, vertices: int | Sequence, edges: Iterable[Sequence]) -> "Graph":
        """Vertices are labels (or a count); edge endpoints are ids or labels."""
        if isinstance(vertices, int):
            labels = tuple(str(i) for i in range(vertices))
        else:
            labels = tuple(str(v) for v in vertices)
        index = {x: i for i, x in enumerate(labels)}
        adj = [0] * len(labels)
        for u, v in edges:
            u = u if isinstance(u, int) else index[str(u)]
            v = v if isinstance(v, int) else index[str(v)]
            if u == v:
                raise ValueError("self-loops are not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(labels, tuple(adj))

    @classmethod
    def from_json(cls, doc: dict | str) -> "Graph":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls.from_edges(doc["vertices"], doc["edges"])

    def to_json(self) -> dict:
        return {"vertices": list(self.labels),
                "edges": [list(e) for e in self.edges()]}

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, v) -> int:
        if isinstance(v, int):
            return v
        return self.labels.index(str(v))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int, within: int | None = None) -> int:
        row = self.adj[v] if within is None else self.adj[v] & within
        return popcount(row)

    def is_clique(self, mask: int) -> bool:
        return all(self.adj[v] & mask == mask & ~(1 << v) for v in bits(mask))

    def is_independent(self, mask: int) -> bool:
        return all(not self.adj[v] & mask for v in bits(mask))

    def is_simplicial(self, v: int, within: int | None = None) -> bool:
        within = self.full if within is None else within
        return self.is_clique(self.adj[v] & within)

    def component(self, v: int, within: int | None = None) -> int:
        within = self.full if within is None else within
        seen = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= self.adj[u]
            frontier = nxt & within & ~seen
            seen |= frontier
        return seen

    def components(self, within: int | None = None) -> list[int]:
        rest = self.full if within is None else within
        out = []
        while rest:
            c = self.component((rest & -rest).bit_length() - 1, rest)
            out.append(c)
            rest &= ~c
        return out

    def is_connected(self, within: int | None = None) -> bool:
        return len(self.components(within)) <= 1

    def distances(self, s: int) -> dict[int, int]:
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in bits(self.adj[u]):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def shortest_path(self, s: int, t: int) -> list[int]:
        prev = {s: None}
        frontier = [s]
        while frontier and t not in prev:
            nxt = []
            for u in frontier:
                for w in bits(self.adj[u]):
                    if w not in prev:
                        prev[w] = u
                        nxt.append(w)
            frontier = nxt
        if t not in prev:
            raise ValueError("vertices are disconnected")
        path = [t]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        return path[::-1]


# -- chordality ---------------------------------------------------------------------

def maximum_cardinality_search(g: Graph) -> list[int]:
    """Visit order of MCS; ties go to the smallest vertex id."""
    weight = [0] * g.n
    unvisited = g.full
    order = []
    while unvisited:
        v = max(bits(unvisited), key=lambda u: (weight[u], -u))
        order.append(v)
        unvisited &= ~(1 << v)
        for u in bits(g.adj[v] & unvisited):
            weight[u] += 1
    return order


def is_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    later = g.full
    for v in order:
        later &= ~(1 << v)
        if not g.is_clique(g.adj[v] & later):
            return False
    return True


def is_chordal(g: Graph) -> tuple[bool, list[int] | None]:
    """Chordality test; on success also returns a perfect elimination ordering.

    The ordering lists vertices in elimination order (the reverse of the MCS
    visit order); each vertex's later neighbours form a clique.
    """
    peo = maximum_cardinality_search(g)[::-1]
    if is_elimination_ordering(g, peo):
        return True, peo
    return False, None


def maximal_cliques_chordal(g: Graph, peo: Sequence[int]) -> list[int]:
    later = g.full
    cands = []
    for v in peo:
        cands.append((g.adj[v] & later) | (1 << v))
        later &= ~(1 << v)
    cands = sorted(set(cands))
    return [c for c in cands if not any(c != d and c & d == c for d in cands)]


# -- split graphs ---------------------------------------------------------------------

def is_split(g: Graph) -> tuple[int, int] | None:
    """A split partition (clique, independent set) with the clique minimal.

    Found from the degree sequence, then a clique vertex with no neighbour in
    the independent side is moved across when one exists.
    """
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    deg = [g.degree(v) for v in order]
    m = max(i + 1 for i in range(g.n) if deg[i] >= i)
    if sum(deg[:m]) != m * (m - 1) + sum(deg[m:]):
        return None
    clique = sum(1 << v for v in order[:m])
    indep = g.full & ~clique
    if not (g.is_clique(clique) and g.is_independent(indep)):
        raise AssertionError("degree-sequence split partition is inconsistent")
    for v in bits(clique):
        if not g.adj[v] & indep:
            clique &= ~(1 << v)
            indep |= 1 << v
            break
    return clique, indep


# -- block graphs ----------------------------------------------------------------------

@dataclass(frozen=True)
class BlockCutForest:
    blocks: tuple[int, ...]   # vertex masks of the biconnected components
    cut_vertices: int         # mask

    def leaf_blocks(self) -> list[int]:
        """Blocks containing exactly one cut vertex."""
        return [b for b in self.blocks if popcount(b & self.cut_vertices) == 1]


def biconnected_components(g: Graph) -> BlockCutForest:
    n = g.n
    disc = [-1] * n
    low = [0] * n
    blocks: list[int] = []
    cuts = 0
    counter = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        if not g.adj[root]:
            blocks.append(1 << root)
            disc[root] = counter
            counter += 1
            continue
        disc[root] = low[root] = counter
        counter += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(bits(g.adj[root])))]
        root_children = 0
        while stack:
            v, parent, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[v])
                    if low[v] >= disc[parent]:
                        if parent != root:
                            cuts |= 1 << parent
                        block = 0
                        while True:
                            a, b = edge_stack.pop()
                            block |= (1 << a) | (1 << b)
                            if (a, b) == (parent, v):
                                break
                        blocks.append(block)
                continue
            if w == parent:
                continue
            if disc[w] == -1:
                disc[w] = low[w] = counter
                counter += 1
                edge_stack.append((v, w))
                if v == root:
                    root_children += 1
                stack.append((w, v, iter(bits(g.adj[w]))))
            elif disc[w] < disc[v]:
                low[v] = min(low[v], disc[w])
                edge_stack.append((v, w))
        if root_children > 1:
            cuts |= 1 << root
    return BlockCutForest(tuple(blocks), cuts)


def is_block_graph(g: Graph) -> tuple[bool, BlockCutForest]:
    forest = biconnected_components(g)
    return all(g.is_clique(b) for b in forest.blocks), forest


# -- distance-hereditary graphs -----------------------------------------------------

def prune_sequence(g: Graph) -> tuple[list[tuple[int, str, int | None]], int]:
    """Greedily strip isolated, pendant and twin vertices.

    Returns the removals as (vertex, kind, witness) and the mask of the
    vertices left over.  The graph is distance-hereditary iff a single
    vertex remains.
    """
    alive = g.full
    steps = []
    while popcount(alive) > 1:
        step = _prunable(g, alive)
        if step is None:
            break
        steps.append(step)
        alive &= ~(1 << step[0])
    return steps, alive


def _prunable(g: Graph, alive: int) -> tuple[int, str, int | None] | None:
    for v in bits(alive):
        nv = g.adj[v] & alive
        if not nv:
            return v, "isolated", None
        if popcount(nv) == 1:
            return v, "pendant", nv.bit_length() - 1
        for u in bits(alive & ~(1 << v)):
            if g.adj[u] & alive & ~(1 << v) == nv & ~(1 << u):
                return v, "true-twin" if nv >> u & 1 else "false-twin", u
    return None


def is_distance_hereditary(g: Graph) -> bool:
    _, rest = prune_sequence(g)
    return popcount(rest) <= 1


# -- k-trees --------------------------------------------------------------------------

def ktree_build_order(g: Graph, k: int) -> list[int] | None:
    """Vertices removed as degree-k simplicial vertices, or None if not a k-tree."""
    if k < 1 or g.n < k + 1:
        return None
    alive = g.full
    removed = []
    while popcount(alive) > k + 1:
        for v in bits(alive):
            if g.degree(v, alive) == k and g.is_simplicial(v, alive):
                removed.append(v)
                alive &= ~(1 << v)
                break
        else:
            return None
    if not g.is_clique(alive):
        return None
    return removed + list(bits(alive))


def is_ktree(g: Graph, k: int) -> bool:
    return ktree_build_order(g, k) is not None


@dataclass(frozen=True)
class CliqueTree:
    nodes: tuple[int, ...]              # maximal-clique masks
    edges: tuple[tuple[int, int], ...]  # indices into nodes


def clique_tree(g: Graph) -> CliqueTree:
    """Maximum-weight spanning tree of the clique intersection graph."""
    ok, peo = is_chordal(g)
    if not ok:
        raise ValueError("clique trees need a chordal graph")
    nodes = maximal_cliques_chordal(g, peo)
    pairs = sorted(((-popcount(a & b), i, j)
                    for (i, a), (j, b) in combinations(enumerate(nodes), 2)
                    if a & b))
    root = list(range(len(nodes)))

    def find(i):
        while root[i] != i:
            root[i] = root[root[i]]
            i = root[i]
        return i

    edges = []
    for _, i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            root[ri] = rj
            edges.append((i, j))
    return CliqueTree(tuple(nodes), tuple(edges))


# -- generators ---------------------------------------------------------------------

def generate_ktree(n: int, k: int, seed: int) -> Graph:
    """Random k-tree: a (k+1)-clique grown by vertices attached to k-cliques."""
    if k < 1 or n < k + 1:
        raise ValueError("a k-tree needs k >= 1 and n >= k+1")
    rng = random.Random(seed)
    adj = [0] * n
    for u, v in combinations(range(k + 1), 2):
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    cliques = [list(range(k + 1))]
    for v in range(k + 1, n):
        base = rng.choice(cliques)
        drop = rng.randrange(k + 1)
        attach = base[:drop] + base[drop + 1:]
        for u in attach:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        cliques.append(attach + [v])
    return Graph(tuple(str(i) for i in range(n)), tuple(adj))


def generate_block_graph(n: int, seed: int, max_block: int = 3,
                         components: int = 1) -> Graph:
    """Random block graph: cliques of size 2..max_block glued at single vertices."""
    if n < components or max_block < 2:
        raise ValueError("infeasible block-graph parameters")
    rng = random.Random(seed)
    adj = [0] * n
    nxt = components
    while nxt < n:
        v = rng.randrange(nxt)
        size = min(rng.randint(2, max_block), n - nxt + 1)
        block = [v] + list(range(nxt, nxt + size - 1))
        nxt += size - 1
        for a, b in combinations(block, 2):
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return Graph(tuple(str(i) for i in range(n)), tuple(adj))


def generate_split_graph(clique: int, independent: int, seed: int,
                         p: float = 0.5, distance_hereditary: bool = False,
                         attempts: int = 1000) -> Graph:
    """Random split graph; with ``distance_hereditary`` the result is gem-free.

    Clique vertices come first.  Every independent vertex gets at least one
    clique neighbour when the clique is nonempty.  Gem-free draws pick
    independent neighbourhoods from one random laminar family.
    """
    if clique < 0 or independent < 0 or clique + independent < 1:
        raise ValueError("infeasible split-graph parameters")
    rng = random.Random(seed)
    n = clique + independent
    for _ in range(attempts):
        edges = list(combinations(range(clique), 2))
        laminar = _laminar_family(rng, list(range(clique)))
        for v in range(clique, n):
            if distance_hereditary and clique:
                nb = rng.choice(laminar)
            else:
                nb = [u for u in range(clique) if rng.random() < p]
                if clique and not nb:
                    nb = [rng.randrange(clique)]
            edges += [(u, v) for u in nb]
        g = Graph.from_edges(n, edges)
        if not distance_hereditary or is_distance_hereditary(g):
            return g
    raise ValueError("could not draw a distance-hereditary split graph")


def _laminar_family(rng: random.Random, items: list[int]) -> list[list[int]]:
    # Nodes of a random hierarchical split of ``items``.
    out = [items]
    if len(items) > 1:
        cut = rng.randint(1, len(items) - 1)
        out += _laminar_family(rng, items[:cut]) + _laminar_family(rng, items[cut:])
    return out


def generate_dh_graph(n: int, seed: int) -> Graph:
    """Random connected distance-hereditary graph grown by pendant/twin steps."""
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = random.Random(seed)
    adj = [0] * n
    for v in range(1, n):
        u = rng.randrange(v)
        kind = rng.choice(("pendant", "true-twin", "false-twin"))
        if kind == "pendant":
            row = 1 << u
        elif kind == "true-twin":
            row = adj[u] | (1 << u)
        else:
            row = adj[u]
        if not row:
            row = 1 << u
        adj[v] = row
        for w in bits(row):
            adj[w] |= 1 << v
    return Graph(tuple(str(i) for i in range(n)), tuple(adj))
