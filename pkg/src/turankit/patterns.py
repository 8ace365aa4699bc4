"""Subgraph containment, copy counting, matchings, and neighborhood-graph machinery.

The containment kernel is a bitset backtracker: pattern vertices are placed in
a connected order of descending degree, host candidates come from intersecting
adjacency masks of already-placed neighbors, filtered by degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .graphs import (BipGraph, Graph, GraphError, bits, common_neighborhood,
                     make_bipgraph, restrict)
from .rooted import RootedTree

COPY_COUNT_CAP = 10


@dataclass(frozen=True)
class Embedding:
    """Injective edge-preserving map, pattern vertex i -> mapping[i]."""

    mapping: tuple[int, ...]

    def pairs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.mapping))


def _pattern_order(h: Graph) -> list[tuple[int, list[int]]]:
    """Placement order: each entry is (pattern vertex, earlier neighbors).

    Greedy connected order; next vertex maximizes placed-neighbor count, then
    degree, then lowest index, giving deterministic search.
    """
    placed: list[int] = []
    placed_set: set[int] = set()
    order = []
    degs = h.degrees()
    while len(placed) < h.n:
        cand = None
        best = None
        for v in range(h.n):
            if v in placed_set:
                continue
            anchors = sum(1 for u in placed if h.has_edge(u, v))
            score = (anchors, degs[v], -v)
            if best is None or score > best:
                best, cand = score, v
        order.append((cand, [u for u in placed if h.has_edge(u, cand)]))
        placed.append(cand)
        placed_set.add(cand)
    return order


def _search(g: Graph, h: Graph, order, mapping, used, start, on_leaf) -> bool:
    """DFS over the placement order; on_leaf returns True to stop early."""
    if start == len(order):
        return on_leaf(mapping)
    v, anchors = order[start]
    deg_v = h.degree(v)
    if anchors:
        cand = ~used
        for u in anchors:
            cand &= g.adj[mapping[u]]
    else:
        cand = ((1 << g.n) - 1) & ~used
    for w in bits(cand):
        if g.adj[w].bit_count() < deg_v:
            continue
        mapping[v] = w
        if _search(g, h, order, mapping, used | (1 << w), start + 1, on_leaf):
            return True
    return False


def contains(g: Graph, h: Graph):
    """An Embedding of h into g as a (not necessarily induced) subgraph, or None."""
    if h.n > g.n or h.edge_count > g.edge_count:
        return None
    if h.n == 0:
        return Embedding(())
    order = _pattern_order(h)
    mapping = [-1] * h.n
    found: list = []

    def on_leaf(m):
        found.append(tuple(m))
        return True

    if _search(g, h, order, mapping, 0, 0, on_leaf):
        return Embedding(found[0])
    return None


def contains_any(g: Graph, patterns) -> bool:
    """Freeness plumbing for multi-pattern families."""
    return any(contains(g, h) is not None for h in patterns)


def contains_with_edge(g: Graph, h: Graph, u: int, v: int,
                       seed_edges=None) -> bool:
    """Does an embedding of h exist that maps some pattern edge onto edge uv?

    Used by the searches for incremental freeness: if g minus uv was h-free,
    any new copy must pass through uv.  Pattern edges are reduced to orbit
    representatives under Aut(h).
    """
    if h.n > g.n or h.n < 2:
        return False
    for (x, y) in _edge_orbit_reps(_HKey(h)):
        for a, b in ((u, v), (v, u)):
            if g.adj[a].bit_count() < h.degree(x) or g.adj[b].bit_count() < h.degree(y):
                continue
            order = _seeded_order(_HKey(h), x, y)
            mapping = [-1] * h.n
            mapping[x], mapping[y] = a, b
            used = (1 << a) | (1 << b)
            if _search(g, h, order, mapping, used, 0, lambda m: True):
                return True
    return False


class _HKey:
    """Hashable identity wrapper so per-pattern precomputations can be cached."""

    _interned: dict = {}

    def __new__(cls, h: Graph):
        key = (h.n, h.adj)
        inst = cls._interned.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst.graph = h
            cls._interned[key] = inst
        return inst


@lru_cache(maxsize=None)
def _edge_orbit_reps(hk: _HKey) -> tuple:
    h = hk.graph
    auts = automorphisms(h)
    seen = set()
    reps = []
    for (x, y) in h.edges():
        if (x, y) in seen:
            continue
        reps.append((x, y))
        for perm in auts:
            a, b = perm[x], perm[y]
            seen.add((min(a, b), max(a, b)))
    return tuple(reps)


@lru_cache(maxsize=None)
def _seeded_order(hk: _HKey, x: int, y: int) -> tuple:
    h = hk.graph
    placed = [x, y]
    placed_set = {x, y}
    degs = h.degrees()
    order = []
    while len(placed) < h.n:
        cand = best = None
        for v in range(h.n):
            if v in placed_set:
                continue
            anchors = sum(1 for u in placed if h.has_edge(u, v))
            score = (anchors, degs[v], -v)
            if best is None or score > best:
                best, cand = score, v
        order.append((cand, [u for u in placed if h.has_edge(u, cand)]))
        placed.append(cand)
        placed_set.add(cand)
    return tuple(order)


def count_embeddings(g: Graph, h: Graph) -> int:
    """Number of injective edge-preserving maps of h into g."""
    if h.n > g.n:
        return 0
    if h.n == 0:
        return 1
    order = _pattern_order(h)
    mapping = [-1] * h.n
    count = [0]

    def on_leaf(m):
        count[0] += 1
        return False

    _search(g, h, order, mapping, 0, 0, on_leaf)
    return count[0]


def automorphisms(h: Graph) -> list[tuple[int, ...]]:
    """All automorphisms, found as embeddings of h into itself."""
    if h.n == 0:
        return [()]
    order = _pattern_order(h)
    mapping = [-1] * h.n
    out = []

    def on_leaf(m):
        out.append(tuple(m))
        return False

    _search(h, h, order, mapping, 0, 0, on_leaf)
    return out


def count_copies(g: Graph, h: Graph) -> int:
    """Unlabeled subgraph copies of h in g: labeled embeddings over |Aut(h)|."""
    if h.n > COPY_COUNT_CAP:
        raise GraphError(f"count_copies cap is v(H) <= {COPY_COUNT_CAP}")
    emb = count_embeddings(g, h)
    aut = len(automorphisms(h))
    assert emb % aut == 0
    return emb // aut


# ---------------------------------------------------------------------------
# Matchings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Matching:
    """Disjoint A-B edges of a host bipartite graph; edges are (a, b) pairs."""

    edges: tuple[tuple[int, int], ...]

    def a_side(self) -> frozenset:
        return frozenset(a for a, _ in self.edges)

    def b_side(self) -> frozenset:
        return frozenset(b for _, b in self.edges)

    def vertex_set(self) -> frozenset:
        return self.a_side() | self.b_side()


def make_matching(host: BipGraph, pairs) -> Matching:
    norm = []
    seen = set()
    for u, v in pairs:
        if u in host.part_b:
            u, v = v, u
        if u not in host.part_a or v not in host.part_b:
            raise GraphError(f"edge ({u},{v}) does not cross the bipartition")
        if not host.graph.has_edge(u, v):
            raise GraphError(f"({u},{v}) is not an edge of the host")
        if u in seen or v in seen:
            raise GraphError("edges are not disjoint")
        seen.update((u, v))
        norm.append((u, v))
    return Matching(tuple(sorted(norm)))


def enumerate_matchings(host: BipGraph, t: int):
    """Yield all t-edge Matchings in a fixed order.

    Recursion is anchored on A-side vertices in index order.
    """
    if t < 0:
        raise GraphError("negative matching size")
    a_list = sorted(host.part_a)
    adj = host.graph.adj

    def rec(i, used_b, chosen):
        if len(chosen) == t:
            yield Matching(tuple(sorted(chosen)))
            return
        if i >= len(a_list) or len(a_list) - i < t - len(chosen):
            return
        a = a_list[i]
        for b in bits(adj[a] & ~used_b):
            chosen.append((a, b))
            yield from rec(i + 1, used_b | (1 << b), chosen)
            chosen.pop()
        yield from rec(i + 1, used_b, chosen)

    yield from rec(0, 0, [])


def count_matchings(host: BipGraph, t: int) -> int:
    """Exact number of t-edge matchings."""
    if t < 1:
        raise GraphError("count_matchings needs t >= 1")
    a_list = sorted(host.part_a)
    adj = host.graph.adj

    def rec(i, used_b, remaining):
        if remaining == 0:
            return 1
        if len(a_list) - i < remaining:
            return 0
        total = rec(i + 1, used_b, remaining)
        a = a_list[i]
        for b in bits(adj[a] & ~used_b):
            total += rec(i + 1, used_b | (1 << b), remaining - 1)
        return total

    return rec(0, 0, t)


def neighborhood_graph(host: BipGraph, m: Matching) -> BipGraph:
    """Induced bipartite graph on (N(B_M)\\V(M), N(A_M)\\V(M)).

    N(.) is the common neighborhood; vertices keep their host indices and
    empty parts are allowed.
    """
    vm = m.vertex_set()
    a_m, b_m = m.a_side(), m.b_side()
    if b_m:
        pa = common_neighborhood(host.graph, b_m) - vm
    else:
        pa = frozenset()
    if a_m:
        pb = common_neighborhood(host.graph, a_m) - vm
    else:
        pb = frozenset()
    sub = restrict(host.graph, pa | pb)
    return BipGraph(sub, frozenset(pa), frozenset(pb))


def matching_in_neighborhood(host: BipGraph, m: Matching, l: Matching) -> bool:
    """M ~ L: is L a subgraph of the neighborhood graph N(M)?"""
    ng = neighborhood_graph(host, m)
    return l.a_side() <= ng.part_a and l.b_side() <= ng.part_b


def degree_into(host: BipGraph, vertex_set, v: int) -> int:
    mask = 0
    for w in vertex_set:
        mask |= 1 << w
    return (host.graph.adj[v] & mask).bit_count()


def is_t_correlated(host: BipGraph, m: Matching, l: Matching, t: int) -> bool:
    """M ~ L and some vertex of V(M) has >= t neighbors among V(N(L))."""
    if not matching_in_neighborhood(host, m, l):
        return False
    nl = neighborhood_graph(host, l)
    support = nl.part_a | nl.part_b
    mask = 0
    for w in support:
        mask |= 1 << w
    return any((host.graph.adj[v] & mask).bit_count() >= t
               for v in m.vertex_set())


# ---------------------------------------------------------------------------
# Book counting: t four-cycles sharing one edge
# ---------------------------------------------------------------------------

def h1t_scan(host: BipGraph, t: int) -> int:
    """Sum over edges ab of the t-matching count of N({ab}) (raw, overcounted)."""
    total = 0
    amask = host.a_mask()
    for u, v in host.graph.edges():
        a, b = (u, v) if amask >> u & 1 else (v, u)
        ng = neighborhood_graph(host, Matching(((a, b),)))
        if len(ng.part_a) >= t and len(ng.part_b) >= t:
            total += count_matchings(ng, t)
    return total


def _h1t_overcount(t: int) -> int:
    """How often the central-edge scan counts one H_{1,t} copy, derived from
    the pattern itself (H_{1,t} holds exactly one copy of itself)."""
    from .families import gen_cube
    return h1t_scan(gen_cube(1, t), t)


def count_c4_bipartite(host: BipGraph) -> int:
    """C_4 count by codegree pairs: sum over A-pairs of C(codegree, 2)."""
    a_list = sorted(host.part_a)
    adj = host.graph.adj
    total = 0
    for i in range(len(a_list)):
        ai = adj[a_list[i]]
        for j in range(i + 1, len(a_list)):
            c = (ai & adj[a_list[j]]).bit_count()
            total += c * (c - 1) // 2
    return total


def count_h1t(host: BipGraph, t: int) -> int:
    """Number of subgraphs of the host isomorphic to H_{1,t}.

    General path: central-edge scan divided by the scan's overcount factor.
    t=1 (plain C_4) goes through the codegree-pair counter, which computes the
    same number orders of magnitude faster on dense hosts.
    """
    if t < 1:
        raise GraphError("count_h1t needs t >= 1")
    if t == 1:
        return count_c4_bipartite(host)
    raw = h1t_scan(host, t)
    factor = _h1t_overcount(t)
    assert raw % factor == 0
    return raw // factor


# ---------------------------------------------------------------------------
# Greedy rooted-tree embedding
# ---------------------------------------------------------------------------

def embed_rooted_tree(g: Graph, t: RootedTree, v: int):
    """Greedy DFS embedding of a singly rooted tree with its root at v.

    Always picks the lowest-index unused host neighbor; guaranteed to succeed
    when the host minimum degree is at least e(T), may succeed below that.
    """
    if len(t.roots) != 1:
        raise GraphError("embed_rooted_tree needs a single root")
    root = next(iter(t.roots))
    if not 0 <= v < g.n:
        raise GraphError(f"host vertex {v} out of range")
    mapping = {root: v}
    used = 1 << v
    stack = [root]
    seen = {root}
    while stack:
        cur = stack.pop()
        for child in sorted(t.tree.neighbors(cur)):
            if child in seen:
                continue
            seen.add(child)
            free = g.adj[mapping[cur]] & ~used
            if not free:
                return None
            w = (free & -free).bit_length() - 1
            mapping[child] = w
            used |= 1 << w
            stack.append(child)
    return Embedding(tuple(mapping[i] for i in sorted(mapping)))
