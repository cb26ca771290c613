"""Explicit balance certificates for antimatroids that come from graph classes.

Every extractor re-checks its certificate against the materialised basic
words before returning it, and raises ``AssertionError`` if that check fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..core import Antimatroid, bits, element_roles, height, popcount
from ..orderings import from_antimatroid, indistinguishable, verify_double_ladder
from ..witnesses import (Certificate, DoubleLadder, ExhaustiveSmall,
                         IndependentElement, IndistinguishablePair,
                         ManyInitialFinal, MANY_MIN_N, search_double_ladder_orderings,
                         verify_certificate)
from .constructions import (elimination_antimatroid, node_search_antimatroid,
                            node_search_elements)
from .graph import (Graph, clique_tree, is_block_graph, is_distance_hereditary,
                    is_ktree, is_split)


@dataclass(frozen=True)
class Extraction:
    antimatroid: Antimatroid
    certificate: Certificate
    case: str   # which branch of the construction produced the certificate

    @property
    def ladder(self) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
        """(X, Y) as labels, when the certificate is a double ladder."""
        c = self.certificate
        if not isinstance(c, DoubleLadder):
            return None
        labels = self.antimatroid.ground.labels
        return tuple(labels[v] for v in c.xs), tuple(labels[v] for v in c.ys)


def _checked(a: Antimatroid, cert: Certificate, case: str,
             cap: int | None = None) -> Extraction:
    o = from_antimatroid(a, cap)
    if isinstance(cert, DoubleLadder):
        report = verify_double_ladder(o, cert.xs, cert.ys)
        if not report.valid:
            raise AssertionError(f"{case}: double ladder failed verification: {report}")
        cert = DoubleLadder(cert.xs, cert.ys, report)
    elif not verify_certificate(cert, o):
        raise AssertionError(f"{case}: certificate {cert} failed verification")
    return Extraction(a, cert, case)


def _pair(u: int, v: int) -> IndistinguishablePair:
    return IndistinguishablePair(min(u, v), max(u, v))


# -- k-trees ----------------------------------------------------------------------

def ktree_double_ladder(g: Graph, k: int, cap: int | None = None) -> Extraction:
    """Double ladder along a clique path between two simplicial vertices.

    x_0 and y_0 are the two smallest simplicial vertices.  The cliques
    k_0, ..., k_l form a shortest path from x_0's maximal clique to y_0's,
    consecutive cliques sharing k vertices; then x_i = k_i - k_{i+1} and y_i
    is defined from the other end.  A clique gets an indistinguishable pair.

    A clique tree alone is not enough: when many maximal cliques share the
    same k-clique (a star, say) a simplicial vertex need not sit at a leaf,
    and the tree path can detour through unrelated cliques.
    """
    if not is_ktree(g, k):
        raise ValueError(f"graph is not a {k}-tree")
    a = elimination_antimatroid(g)
    if g.is_clique(g.full):
        return _checked(a, _pair(0, 1), "clique", cap)
    nodes = clique_tree(g).nodes
    simplicial = [v for v in range(g.n) if g.is_simplicial(v)]
    x0, y0 = simplicial[:2]
    home = {v: next(i for i, c in enumerate(nodes) if c >> v & 1) for v in (x0, y0)}
    edges = [(i, j) for i in range(len(nodes)) for j in range(i + 1, len(nodes))
             if popcount(nodes[i] & nodes[j]) == k]
    route = _shortest_route(len(nodes), edges, home[x0], home[y0])
    cliques = [nodes[i] for i in route]
    xs = [_only(cliques[i] & ~cliques[i + 1]) for i in range(len(cliques) - 1)]
    cliques.reverse()
    ys = [_only(cliques[i] & ~cliques[i + 1]) for i in range(len(cliques) - 1)]
    assert xs[0] == x0 and ys[0] == y0
    return _checked(a, DoubleLadder(tuple(xs), tuple(ys)), "clique-path", cap)


def _only(mask: int) -> int:
    if popcount(mask) != 1:
        raise AssertionError("adjacent cliques must differ by one vertex")
    return mask.bit_length() - 1


def _shortest_route(n: int, edges, s: int, t: int) -> list[int]:
    nbrs = [[] for _ in range(n)]
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    prev = {s: None}
    frontier = [s]
    while frontier and t not in prev:
        nxt = []
        for u in frontier:
            for w in sorted(nbrs[u]):
                if w not in prev:
                    prev[w] = u
                    nxt.append(w)
        frontier = nxt
    path = [t]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return path[::-1]


# -- block graphs ---------------------------------------------------------------------

def block_graph_double_ladder(g: Graph, cap: int | None = None) -> Extraction:
    """Shortest-path double ladder between non-cut vertices of two leaf blocks."""
    ok, forest = is_block_graph(g)
    if not ok:
        raise ValueError("graph is not a block graph")
    if g.n < 2:
        raise ValueError("a block graph with one vertex has a single ordering")
    a = elimination_antimatroid(g)
    comps = g.components()
    if not g.edges():
        return _checked(a, _pair(0, 1), "isolated", cap)
    for c in comps:
        if popcount(c) > 1 and g.is_clique(c):
            u, v = list(bits(c))[:2]
            return _checked(a, _pair(u, v), "clique-component", cap)
    comp = next(c for c in comps if popcount(c) > 2)
    cuts = forest.cut_vertices
    leaves = sorted((b for b in forest.leaf_blocks() if b & comp),
                    key=lambda b: _low(b & ~cuts))
    x0 = _low(leaves[0] & ~cuts)
    y0 = _low(leaves[1] & ~cuts)
    path = g.shortest_path(x0, y0)
    xs, ys = tuple(path[:-1]), tuple(path[::-1][:-1])
    return _checked(a, DoubleLadder(xs, ys), "leaf-blocks", cap)


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# -- distance-hereditary node search ------------------------------------------------

def vertex_powers(g: Graph, s: int) -> tuple[dict[int, int], dict[int, int]]:
    """Distances from s and, per vertex, the number of neighbours one step farther."""
    dist = g.distances(s)
    power = {v: sum(1 for u in bits(g.adj[v]) if dist.get(u) == d + 1)
             for v, d in dist.items()}
    return dist, power


def dh_node_search_double_ladder(g: Graph, s, cap: int | None = None) -> Extraction:
    """Case analysis on the deepest level with a vertex of power two or more.

    Takes the component H of the bipartite graph between levels d and d+1
    containing the smallest such vertex, a vertex w of the lower level with
    minimal neighbourhood N(w) in the upper level, then:
    (a) |N(w)| >= 2 gives an indistinguishable pair inside N(w);
    otherwise N(w) = {v} and w' is another child of v with N(w') minimal, and
    (b) |N(w')| >= 3 gives a pair inside N(w') - {v};
    (c) N(w') = {v} gives the pendant tails through w and w' as a double ladder;
    (d) N(w') = {v, v'} gives v, w, ... and v', w', ... as a double ladder.

    The case analysis ignores edges inside a level and descendants shared
    between branches, so its candidate can fail.  The fallbacks, in order,
    are a pair of graph twins (an automorphism fixing s) and the generic
    double-ladder search; ``case`` records e.g. ``"c>twins"``.
    """
    if not is_distance_hereditary(g):
        raise ValueError("graph is not distance-hereditary")
    s = g.index(s)
    a = node_search_antimatroid(g, s)
    verts = node_search_elements(g, s)
    element = {v: i for i, v in enumerate(verts)}
    dist, power = vertex_powers(g, s)
    if not any(p >= 2 for p in power.values()):
        raise ValueError("node search has a single basic word")
    cert, case = _dh_case(g, dist, power)
    if isinstance(cert, DoubleLadder):
        cert = DoubleLadder(tuple(element[x] for x in cert.xs),
                            tuple(element[y] for y in cert.ys))
    else:
        cert = _pair(element[cert.x], element[cert.y])
    o = from_antimatroid(a, cap)
    if verify_certificate(cert, o):
        return _checked(a, cert, case, cap)
    twins = _twins(g, verts)
    if twins is not None:
        u, v = twins
        return _checked(a, _pair(element[u], element[v]), case + ">twins", cap)
    found = search_double_ladder_orderings(o)
    if found is None:
        raise AssertionError(f"no double ladder for source {g.labels[s]}")
    return _checked(a, found, case + ">search", cap)


def _dh_case(g: Graph, dist: dict[int, int], power: dict[int, int]
             ) -> tuple[Certificate, str]:
    """Candidate certificate from the level case analysis, in vertex ids."""
    strong = [v for v in sorted(dist) if power[v] >= 2]
    d = max(dist[v] for v in strong)
    seed = min(v for v in strong if dist[v] == d)
    upper, lower = _bipartite_component(g, dist, d, seed)

    def nbhd(w: int) -> int:
        return g.adj[w] & upper

    def tail(w: int) -> list[int]:
        # Follow single children that hang only from the previous vertex.
        out = [w]
        while True:
            t = out[-1]
            nxt = [u for u in bits(g.adj[t]) if dist.get(u) == dist[t] + 1]
            if len(nxt) != 1:
                return out
            u = nxt[0]
            if any(dist[x] <= dist[u] and x != t for x in bits(g.adj[u])):
                return out
            out.append(u)

    w = min(bits(lower), key=lambda q: (popcount(nbhd(q)), q))
    nw = nbhd(w)
    if popcount(nw) >= 2:
        u1, u2 = list(bits(nw))[:2]
        return IndistinguishablePair(u1, u2), "a"
    v = nw.bit_length() - 1
    others = [q for q in bits(g.adj[v] & lower) if q != w]
    w2 = min(others, key=lambda q: (popcount(nbhd(q)), q))
    nw2 = nbhd(w2)
    if popcount(nw2) >= 3:
        u1, u2 = [x for x in bits(nw2) if x != v][:2]
        return IndistinguishablePair(u1, u2), "b"
    tw, tw2 = tail(w), tail(w2)
    if nw2 == nw:
        return DoubleLadder(tuple(tw), tuple(tw2)), "c"
    v_other = (nw2 & ~nw).bit_length() - 1
    return DoubleLadder(tuple([v] + tw), tuple([v_other] + tw2)), "d"


def _bipartite_component(g: Graph, dist: dict[int, int], d: int, seed: int
                         ) -> tuple[int, int]:
    """Level-d and level-(d+1) sides of the component of ``seed``."""
    level = {v: dist[v] for v in dist}
    seen = {seed}
    stack = [seed]
    while stack:
        u = stack.pop()
        want = d + 1 if level[u] == d else d
        for x in bits(g.adj[u]):
            if level.get(x) == want and x not in seen:
                seen.add(x)
                stack.append(x)
    upper = sum(1 << v for v in seen if level[v] == d)
    lower = sum(1 << v for v in seen if level[v] == d + 1)
    return upper, lower


# -- split graphs -----------------------------------------------------------------------

def dh_split_analysis(g: Graph, cap: int | None = None) -> Extraction:
    """Indistinguishable pair, or half the vertices simplicial.

    With a minimal clique side K, link each clique vertex to the independent
    vertices adjacent to it whose neighbourhoods are minimal.  A clique vertex
    with two such partners, or a partner with two clique neighbours, yields
    twins.  Otherwise the links match K perfectly and the independent
    side, all simplicial, is at least half of the graph.  Below seven
    vertices that last outcome is reported as an exhaustive-small
    certificate; an isolated vertex is reported as an independent element.
    """
    split = is_split(g)
    if split is None or not is_distance_hereditary(g):
        raise ValueError("graph is not a distance-hereditary split graph")
    clique, indep = split
    a = elimination_antimatroid(g)
    if g.n < 2:
        raise ValueError("a single vertex has a single ordering")
    for u in bits(indep):
        if not g.adj[u]:
            return _checked(a, IndependentElement(u), "isolated", cap)
    nb = {u: g.adj[u] for u in bits(indep)}
    minimal = [u for u in nb
               if not any(nb[t] != nb[u] and nb[t] & nb[u] == nb[t] for t in nb)]
    partners = {v: [u for u in minimal if nb[u] >> v & 1] for v in bits(clique)}
    for v, us in partners.items():
        if len(us) >= 2:
            return _checked(a, _pair(us[0], us[1]), "shared-partner", cap)
    for u in minimal:
        if popcount(nb[u]) >= 2:
            v1, v2 = list(bits(nb[u]))[:2]
            return _checked(a, _pair(v1, v2), "twin-clique", cap)
    case = "matching"
    if any(len(us) != 1 for us in partners.values()):
        # A clique vertex can miss every minimal partner; graph twins remain.
        twins = _twins(g)
        if twins is not None:
            return _checked(a, _pair(*twins), "unmatched>twins", cap)
        case = "unmatched"
    initial = sum(r.initial for r in element_roles(a))
    if 2 * initial < g.n:
        raise AssertionError("fewer than half of the vertices are simplicial")
    if g.n >= MANY_MIN_N:
        cert = ManyInitialFinal("initial", initial, g.n)
    else:
        cert = ExhaustiveSmall(g.n)
    return _checked(a, cert, case, cap)


def _twins(g: Graph, among=None) -> tuple[int, int] | None:
    """Two vertices with equal neighbourhoods apart from each other."""
    among = range(g.n) if among is None else among
    for u, v in combinations(among, 2):
        if g.adj[u] & ~(1 << v) == g.adj[v] & ~(1 << u):
            return u, v
    return None


def split_node_search_height(g: Graph, s) -> int:
    """Height of the node search antimatroid from a clique-side source."""
    split = is_split(g)
    if split is None:
        raise ValueError("graph is not split")
    s = g.index(s)
    clique, _ = split
    # s may sit on the clique side of some split partition without being in
    # the minimal one; that happens exactly when it sees the whole clique.
    if not (clique >> s & 1 or g.adj[s] & clique == clique):
        raise ValueError("source is not on the clique side")
    return height(node_search_antimatroid(g, s))
