"""Brute-force reference implementations, independent of the package code.

Everything here works from definitions: permutations are filtered directly,
graph properties are checked with networkx or exhaustive search.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import networkx as nx


# -- set families ----------------------------------------------------------------

def is_antimatroid(masks, n: int) -> bool:
    fam = set(masks)
    if 0 not in fam or (1 << n) - 1 not in fam:
        return False
    for s in fam:
        if s and not any(s & (1 << i) and (s ^ (1 << i)) in fam for i in range(n)):
            return False
    return all(a | b in fam for a in fam for b in fam)


def all_antimatroids(n: int) -> set[frozenset[int]]:
    """Every antimatroid on n labelled elements, by filtering all families."""
    universe = range(1 << n)
    out = set()
    for bits in range(1 << (1 << n)):
        fam = frozenset(s for s in universe if bits >> s & 1)
        if is_antimatroid(fam, n):
            out.add(fam)
    return out


def basic_words(masks, n: int) -> list[tuple[int, ...]]:
    fam = set(masks)
    out = []
    for w in itertools.permutations(range(n)):
        m, ok = 0, True
        for x in w:
            m |= 1 << x
            if m not in fam:
                ok = False
                break
        if ok:
            out.append(w)
    return out


def before_probability(words, x: int, y: int) -> Fraction:
    hits = sum(1 for w in words if w.index(x) < w.index(y))
    return Fraction(hits, len(words))


def balance(words, n: int) -> Fraction:
    best = Fraction(0)
    for x, y in itertools.combinations(range(n), 2):
        p = before_probability(words, x, y)
        best = max(best, min(p, 1 - p))
    return best


def paths(masks, n: int) -> list[int]:
    fam = set(masks)
    return [s for s in fam
            if sum(1 for i in range(n) if s >> i & 1 and (s ^ (1 << i)) in fam) == 1]


def width_and_height(masks, n: int) -> tuple[int, int]:
    """Largest antichain and chain of the path poset, by exhaustive search."""
    ps = paths(masks, n)
    sub = lambda a, b: a & b == a
    width = height = 0
    for r in range(1, len(ps) + 1):
        for combo in itertools.combinations(ps, r):
            pairs = list(itertools.combinations(combo, 2))
            if all(not sub(a, b) and not sub(b, a) for a, b in pairs):
                width = max(width, r)
            if all(sub(a, b) or sub(b, a) for a, b in pairs):
                height = max(height, r)
    return width, height


def swap_flags(words) -> list[tuple[bool, bool]]:
    """(initial, final) per element, from the swap definitions."""
    ws = set(words)
    n = len(words[0])
    out = []
    for x in range(n):
        ini = fin = True
        for w in words:
            p = w.index(x)
            if p > 0:
                v = list(w)
                v[p - 1], v[p] = v[p], v[p - 1]
                ini &= tuple(v) in ws
            if p < n - 1:
                v = list(w)
                v[p + 1], v[p] = v[p], v[p + 1]
                fin &= tuple(v) in ws
        out.append((ini, fin))
    return out


# -- random instances -----------------------------------------------------------------

def random_chain_join(rng: random.Random, n: int, chains: int) -> list[int]:
    """Masks of the join of random chains on random subsets covering range(n)."""
    fam = {0}
    covered = 0
    for c in range(chains):
        size = rng.randint(1, n)
        part = rng.sample(range(n), size)
        if c == chains - 1:
            part += [x for x in range(n) if not covered >> x & 1 and x not in part]
            rng.shuffle(part)
        covered |= sum(1 << x for x in part)
        prefixes, m = [0], 0
        for x in part:
            m |= 1 << x
            prefixes.append(m)
        fam = {a | b for a in fam for b in prefixes}
    return sorted(fam)


def initial_closure(seeds, initial) -> list[tuple[int, ...]]:
    """Close a set of words under swapping an ``initial`` element leftwards."""
    seen = set(map(tuple, seeds))
    stack = list(seen)
    while stack:
        w = stack.pop()
        for p in range(1, len(w)):
            if w[p] in initial:
                v = list(w)
                v[p - 1], v[p] = v[p], v[p - 1]
                v = tuple(v)
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return sorted(seen)


# -- graphs ------------------------------------------------------------------------------

def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def is_split(h: nx.Graph) -> bool:
    nodes = list(h)
    for r in range(len(nodes) + 1):
        for k in itertools.combinations(nodes, r):
            rest = [v for v in nodes if v not in k]
            if all(h.has_edge(a, b) for a, b in itertools.combinations(k, 2)) and \
                    not any(h.has_edge(a, b) for a, b in itertools.combinations(rest, 2)):
                return True
    return False


def min_split_clique(h: nx.Graph) -> int | None:
    nodes = list(h)
    for r in range(len(nodes) + 1):
        for k in itertools.combinations(nodes, r):
            rest = [v for v in nodes if v not in k]
            if all(h.has_edge(a, b) for a, b in itertools.combinations(k, 2)) and \
                    not any(h.has_edge(a, b) for a, b in itertools.combinations(rest, 2)):
                return r
    return None


def is_block_graph(h: nx.Graph) -> bool:
    for comp in nx.biconnected_components(h):
        if any(not h.has_edge(a, b) for a, b in itertools.combinations(comp, 2)):
            return False
    return True


def is_ktree(h: nx.Graph, k: int) -> bool:
    n = h.number_of_nodes()
    if n < k + 1 or not nx.is_connected(h) or not nx.is_chordal(h):
        return False
    omega = max(len(c) for c in nx.find_cliques(h))
    return omega == k + 1 and h.number_of_edges() == k * n - k * (k + 1) // 2


def is_distance_hereditary(h: nx.Graph) -> bool:
    """All induced paths between two vertices have the same length."""
    for s in h:
        lengths: dict = {}

        def walk(path, inside):
            u = path[-1]
            lengths.setdefault(u, set()).add(len(path) - 1)
            for w in h[u]:
                if w in inside:
                    continue
                # w must see no earlier path vertex except u
                if any(h.has_edge(w, p) for p in path[:-1]):
                    continue
                inside.add(w)
                path.append(w)
                walk(path, inside)
                path.pop()
                inside.discard(w)

        walk([s], {s})
        if any(len(v) > 1 for v in lengths.values()):
            return False
    return True


def node_search_sets(h: nx.Graph, s: int, elements: list[int]) -> set[int]:
    """Masks over ``elements`` of the S with S + s connected."""
    out = set()
    for r in range(len(elements) + 1):
        for combo in itertools.combinations(range(len(elements)), r):
            verts = [s] + [elements[i] for i in combo]
            if nx.is_connected(h.subgraph(verts)):
                out.add(sum(1 << i for i in combo))
    return out


def elimination_words(h: nx.Graph) -> list[tuple[int, ...]]:
    out = []
    for w in itertools.permutations(sorted(h)):
        pos = {v: i for i, v in enumerate(w)}
        if all(all(h.has_edge(a, b) for a, b in itertools.combinations(
                [u for u in h[v] if pos[u] > pos[v]], 2)) for v in w):
            out.append(w)
    return out
