"""Constructors for every graph family used by the verifiers and searches.

Each constructor fixes a documented labeling (hubs/centers first, then path
interiors in leg order) so examples and witnesses are stable across runs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .graphs import (BipGraph, Graph, GraphError, bits, canonical_key,
                     induced, make_bipgraph, make_graph)
from .rooted import RootedTree, make_rooted_tree

POWER_FAMILY_MAP_CAP = 100_000


def cycle(length: int) -> Graph:
    if length < 3:
        raise GraphError("cycle needs length >= 3")
    return make_graph(length, [(i, (i + 1) % length) for i in range(length)])


def path(nverts: int) -> Graph:
    if nverts < 1:
        raise GraphError("path needs at least one vertex")
    return make_graph(nverts, [(i, i + 1) for i in range(nverts - 1)])


def complete(nverts: int) -> Graph:
    return make_graph(nverts, list(itertools.combinations(range(nverts), 2)))


def complete_bipartite(s: int, t: int) -> BipGraph:
    if s < 0 or t < 0:
        raise GraphError("negative part size")
    g = make_graph(s + t, [(i, s + j) for i in range(s) for j in range(t)])
    return make_bipgraph(g, range(s), range(s, s + t))


def star(leaves: int) -> Graph:
    return make_graph(leaves + 1, [(0, i + 1) for i in range(leaves)])


def theta(k: int, p: int) -> BipGraph:
    """p internally disjoint paths of length k between two hubs.

    Labeling: hubs 0 (u) and 1 (v), then interior vertices leg by leg.
    2 + p(k-1) vertices, pk edges.
    """
    if k < 2 or p < 2:
        raise GraphError("theta needs k >= 2 and p >= 2")
    edges = []
    nxt = 2
    for _ in range(p):
        prev = 0
        for _ in range(k - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    g = make_graph(2 + p * (k - 1), edges)
    part_a = [v for layer in _dist_layers(g, 0) for v in layer[1]
              if layer[0] % 2 == 0]
    part_b = [v for layer in _dist_layers(g, 0) for v in layer[1]
              if layer[0] % 2 == 1]
    return make_bipgraph(g, part_a, part_b)


def _dist_layers(g: Graph, root: int):
    from .graphs import bfs_layers
    return list(enumerate(bfs_layers(g, root)))


def gen_cube(s: int, t: int) -> BipGraph:
    """Two K_{s,t}'s joined by a perfect matching between corresponding vertices.

    Vertices: a_i = i, b_i = s+i (i < s); c_j = 2s+j, d_j = 2s+t+j (j < t).
    Edges a_i b_i, c_j d_j, a_i d_j, b_i c_j; bipartition ({a,c}, {b,d}).
    """
    if s < 1 or t < 1:
        raise GraphError("gen_cube needs s,t >= 1")
    a = list(range(s))
    b = list(range(s, 2 * s))
    c = list(range(2 * s, 2 * s + t))
    d = list(range(2 * s + t, 2 * s + 2 * t))
    edges = [(a[i], b[i]) for i in range(s)]
    edges += [(c[j], d[j]) for j in range(t)]
    edges += [(a[i], d[j]) for i in range(s) for j in range(t)]
    edges += [(b[i], c[j]) for i in range(s) for j in range(t)]
    return make_bipgraph(make_graph(2 * s + 2 * t, edges), a + c, b + d)


def cube_q3() -> Graph:
    """3-dimensional cube on {0,1}^3, built independently of gen_cube."""
    return make_graph(8, [(x, x ^ (1 << i)) for x in range(8) for i in range(3)
                          if x < x ^ (1 << i)])


def double_star(s: int) -> RootedTree:
    """Two disjoint s-leaf stars with joined centers; roots = all 2s leaves.

    Centers are 0 and 1; leaves of 0 are 2..s+1, leaves of 1 are s+2..2s+1.
    """
    if s < 1:
        raise GraphError("double_star needs s >= 1")
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(s)]
    edges += [(1, 2 + s + i) for i in range(s)]
    return make_rooted_tree(make_graph(2 * s + 2, edges), range(2, 2 * s + 2))


def comb3() -> RootedTree:
    """3-comb: spine a,b,c = 0,1,2 with pendant tips 3,4,5; roots = tips."""
    g = make_graph(6, [(0, 1), (1, 2), (0, 3), (1, 4), (2, 5)])
    return make_rooted_tree(g, [3, 4, 5])


def spider(p: int, length: int) -> RootedTree:
    """p legs of the given length sharing a hub; rooted at the hub (vertex 0)."""
    if p < 1 or length < 1:
        raise GraphError("spider needs p >= 1 and length >= 1")
    edges = []
    nxt = 1
    for _ in range(p):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return make_rooted_tree(make_graph(1 + p * length, edges), [0])


def pasting_with_maps(t: RootedTree, p: int):
    """Pasting of p copies of (T, R) sharing exactly R, plus each copy's vertex map.

    Roots keep their labels; copy i's non-root vertices are fresh, appended in
    index order.  Map i sends original tree vertices to the copy's vertices.
    """
    if p < 1:
        raise GraphError("pasting needs p >= 1")
    tree = t.tree
    free = [v for v in range(tree.n) if v not in t.roots]
    nverts = tree.n + (p - 1) * len(free)
    edges = []
    maps = []
    nxt = tree.n
    for i in range(p):
        vmap = {r: r for r in t.roots}
        if i == 0:
            for v in free:
                vmap[v] = v
        else:
            for v in free:
                vmap[v] = nxt
                nxt += 1
        for u, v in tree.edges():
            edges.append((vmap[u], vmap[v]))
        maps.append(vmap)
    return make_graph(nverts, edges), maps


def pasting(t: RootedTree, p: int) -> Graph:
    return pasting_with_maps(t, p)[0]


def comb_pasting(p: int) -> Graph:
    """S_p: p combs glued at their three tips; 3 + 3p vertices, 5p edges."""
    if p < 1:
        raise GraphError("comb pasting needs p >= 1")
    return pasting(comb3(), p)


def t_st(s: int, t: int) -> Graph:
    """T_{s,t}: pasting of t copies of the double star D_s on its 2s leaves."""
    return pasting(double_star(s), t)


def l_t(h: BipGraph, t: int) -> Graph:
    """Join a new apex to every vertex of h's part A by disjoint (t-1)-paths.

    Adds 1 + |A|(t-2) vertices and |A|(t-1) edges.  The apex is the first new
    vertex; path interiors follow in part-A index order.
    """
    if t < 2:
        raise GraphError("l_t needs t >= 2")
    g = h.graph
    apex = g.n
    edges = list(g.edges())
    nxt = apex + 1
    for a in sorted(h.part_a):
        prev = apex
        for _ in range(t - 2):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, a))
    return make_graph(nxt, edges)


def l3_theta(p: int) -> Graph:
    """L_3 of theta(3, p), taking the part that contains hub u (vertex 0)."""
    return l_t(theta(3, p), 3)


def subdivided_k4() -> Graph:
    """K_4 with every edge subdivided once; independent of l3_theta."""
    k4_edges = list(itertools.combinations(range(4), 2))
    edges = []
    for i, (u, v) in enumerate(k4_edges):
        mid = 4 + i
        edges += [(u, mid), (mid, v)]
    return make_graph(10, edges)


def power_family(t: RootedTree, p: int, cap: int = POWER_FAMILY_MAP_CAP):
    """All unions of p distinct labelled copies of (T, R) agreeing on R.

    Copies are injective maps of V(T) into R plus a pool of p*(v-r) non-root
    slots, restricted to the identity on R; two copies are distinct iff their
    maps differ.  Returns (raw_unions, iso_class_reps): raw_unions is the list
    of distinct labelled union graphs over the fixed pool, iso_class_reps one
    representative per isomorphism class (the pasting member is always among
    them).
    """
    if p < 1:
        raise GraphError("power_family needs p >= 1")
    tree = t.tree
    free = [v for v in range(tree.n) if v not in t.roots]
    if tree.n > 7 or p > 3:
        raise GraphError("power_family cap: v(T) <= 7 and p <= 3")
    roots = sorted(t.roots)
    pool = list(range(tree.n, tree.n + (p - 1) * len(free)))
    slots = free + pool
    nverts = tree.n + len(pool)
    tree_edges = tree.edge_list()

    maps = []
    for images in itertools.permutations(slots, len(free)):
        vmap = {r: r for r in roots}
        vmap.update(zip(free, images))
        maps.append(tuple(sorted(vmap.items())))
    if math.comb(len(maps), p) > cap:
        raise GraphError("power_family enumeration cap exceeded")

    raw = {}
    for combo in itertools.combinations(range(len(maps)), p):
        edge_set = set()
        for mi in combo:
            vmap = dict(maps[mi])
            for u, v in tree_edges:
                a, b = vmap[u], vmap[v]
                edge_set.add((min(a, b), max(a, b)))
        raw.setdefault(frozenset(edge_set), make_graph(nverts, list(edge_set)))
    raw_unions = list(raw.values())

    iso = {}
    for g in raw_unions:
        used = sorted({v for e in g.edge_list() for v in e} | set(roots))
        iso.setdefault(canonical_key(induced(g, used)), g)
    return raw_unions, list(iso.values())


# ---------------------------------------------------------------------------
# FamilySpec
# ---------------------------------------------------------------------------

FAMILY_NAMES = ("theta", "cycle", "complete_bipartite", "gen_cube",
                "double_star", "comb3", "pasting", "L_t", "spider")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        rec = {"name": self.name}
        rec.update({k: v for k, v in sorted(self.params.items())})
        return rec


def build_family(spec: FamilySpec) -> Graph:
    """Build the named family member; returns its underlying Graph."""
    name, p = spec.name, spec.params
    if name == "theta":
        return theta(p["k"], p["p"]).graph
    if name == "cycle":
        return cycle(p["len"])
    if name == "complete_bipartite":
        return complete_bipartite(p["s"], p["t"]).graph
    if name == "gen_cube":
        return gen_cube(p["s"], p["t"]).graph
    if name == "double_star":
        return double_star(p["s"]).tree
    if name == "comb3":
        return comb3().tree
    if name == "pasting":
        if "s" in p:
            return t_st(p["s"], p["t"])
        return comb_pasting(p["p"])
    if name == "L_t":
        return l_t(theta(p["k"], p["p"]), p["t"])
    if name == "spider":
        return spider(p["p"], p["len"]).tree
    raise GraphError(f"unknown family {name!r}")


_SHORTCUTS = {
    "c4": lambda: cycle(4),
    "c6": lambda: cycle(6),
    "q8": lambda: gen_cube(2, 2).graph,
    "k13": lambda: star(3),
    "p4": lambda: path(4),
}


def pattern_by_name(name: str) -> Graph:
    """Resolve CLI shortcuts: c4, c6, q8, k13, p4, cN, theta-k-p, h-s-t,
    kst-s-t, s-p, l3theta-p."""
    name = name.lower()
    if name in _SHORTCUTS:
        return _SHORTCUTS[name]()
    if name.startswith("c") and name[1:].isdigit():
        return cycle(int(name[1:]))
    parts = name.split("-")
    try:
        if parts[0] == "theta" and len(parts) == 3:
            return theta(int(parts[1]), int(parts[2])).graph
        if parts[0] == "h" and len(parts) == 3:
            return gen_cube(int(parts[1]), int(parts[2])).graph
        if parts[0] == "kst" and len(parts) == 3:
            return complete_bipartite(int(parts[1]), int(parts[2])).graph
        if parts[0] == "s" and len(parts) == 2:
            return comb_pasting(int(parts[1]))
        if parts[0] == "l3theta" and len(parts) == 2:
            return l3_theta(int(parts[1]))
    except (ValueError, IndexError):
        pass
    raise GraphError(f"unknown pattern shortcut {name!r}")
