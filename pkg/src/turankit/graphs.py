"""Core graph substrate: bitset graphs, bipartite views, canonical forms, graph6 I/O.

Vertices are dense integers 0..n-1 and adjacency is stored as one Python int
bitmask per vertex, which keeps every downstream search (containment, branch
and bound, matching enumeration) on fast word operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

CANONICAL_CAP = 20


class GraphError(ValueError):
    """Domain error for malformed graph inputs."""


def bits(mask: int):
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; immutable and safe to share."""

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    # For graphs produced by `induced`, origin[i] is the vertex label in the
    # parent graph, so witnesses can be reported in original labels.
    origin: tuple[int, ...] | None = None

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int):
        return bits(self.adj[v])

    def edges(self):
        for v in range(self.n):
            for u in bits(self.adj[v] & ((1 << v) - 1)):
                yield (u, v)

    def edge_list(self) -> list[tuple[int, int]]:
        return list(self.edges())


def make_graph(n: int, edges, labels=None) -> Graph:
    """Build a Graph from an edge list; duplicate edges collapse.

    Raises GraphError on out-of-range endpoints or loops.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"loop edge at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj), tuple(labels) if labels is not None else None)


def graph_from_adj(n: int, adj) -> Graph:
    return Graph(n, tuple(adj))


def restrict(g: Graph, vertices) -> Graph:
    """Subgraph induced on ``vertices`` without re-indexing (others isolated)."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return Graph(g.n, tuple((a & mask) if (mask >> v & 1) else 0
                            for v, a in enumerate(g.adj)), g.labels, g.origin)


def induced(g: Graph, vertices) -> Graph:
    """Compact induced subgraph; keeps the original labels in ``origin``."""
    verts = sorted(set(vertices))
    index = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for v in verts:
        for u in bits(g.adj[v]):
            if u in index:
                adj[index[v]] |= 1 << index[u]
    return Graph(len(verts), tuple(adj), origin=tuple(verts))


def union_graphs(a: Graph, b: Graph) -> Graph:
    """Edge union of two graphs on the same vertex universe."""
    if a.n != b.n:
        raise GraphError("union requires equal vertex counts")
    return Graph(a.n, tuple(x | y for x, y in zip(a.adj, b.adj)))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    if u == v or not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"bad edge ({u},{v})")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(g.n, tuple(adj), g.labels, g.origin)


def relabel(g: Graph, perm) -> Graph:
    """Relabel so that old vertex v becomes perm[v]."""
    adj = [0] * g.n
    for v in range(g.n):
        for u in bits(g.adj[v]):
            adj[perm[v]] |= 1 << perm[u]
    return Graph(g.n, tuple(adj))


# ---------------------------------------------------------------------------
# Bipartite view
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BipGraph:
    """Graph plus a certified two-part coloring.

    The parts keep original vertex indices.  Vertices outside partA|partB must
    be isolated; this lets neighborhood graphs and other induced objects live
    in the coordinates of their host.
    """

    graph: Graph
    part_a: frozenset
    part_b: frozenset

    @property
    def m(self) -> int:
        return len(self.part_a)

    @property
    def nn(self) -> int:
        return len(self.part_b)

    @property
    def vertex_count(self) -> int:
        return len(self.part_a) + len(self.part_b)

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    def a_mask(self) -> int:
        return sum(1 << v for v in self.part_a)

    def b_mask(self) -> int:
        return sum(1 << v for v in self.part_b)


def make_bipgraph(graph: Graph, part_a, part_b) -> BipGraph:
    pa, pb = frozenset(part_a), frozenset(part_b)
    if pa & pb:
        raise GraphError("parts intersect")
    for s in (pa, pb):
        for v in s:
            if not 0 <= v < graph.n:
                raise GraphError(f"part vertex {v} out of range")
    amask = sum(1 << v for v in pa)
    bmask = sum(1 << v for v in pb)
    for v in range(graph.n):
        a = graph.adj[v]
        if amask >> v & 1:
            if a & ~bmask:
                raise GraphError(f"edge from A-vertex {v} leaves part B")
        elif bmask >> v & 1:
            if a & ~amask:
                raise GraphError(f"edge from B-vertex {v} leaves part A")
        elif a:
            raise GraphError(f"vertex {v} outside both parts is not isolated")
    return BipGraph(graph, pa, pb)


def from_biadjacency(m: int, n: int, rows) -> BipGraph:
    """Bipartite graph with A = 0..m-1, B = m..m+n-1; rows[i] bit j = edge (i, m+j)."""
    edges = []
    for i in range(m):
        for j in bits(rows[i]):
            if j >= n:
                raise GraphError("row mask wider than n")
            edges.append((i, m + j))
    return make_bipgraph(make_graph(m + n, edges), range(m), range(m, m + n))


def bipartition(g: Graph):
    """Deterministic two-coloring, or None if an odd cycle exists.

    BFS from the lowest-index vertex of each component; that vertex goes to A.
    """
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop(0)
            for u in bits(g.adj[v]):
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    a = frozenset(v for v in range(g.n) if color[v] == 0)
    b = frozenset(v for v in range(g.n) if color[v] == 1)
    return a, b


def as_bipartite(g: Graph) -> BipGraph | None:
    parts = bipartition(g)
    if parts is None:
        return None
    return BipGraph(g, parts[0], parts[1])


def common_neighborhood(g: Graph, s) -> frozenset:
    """Intersection of open neighborhoods of the vertices in ``s``."""
    s = list(s)
    if not s:
        raise GraphError("common neighborhood of empty set")
    mask = (1 << g.n) - 1
    for v in s:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
        mask &= g.adj[v]
    return frozenset(bits(mask))


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    relabeling: tuple[int, ...]   # relabeling[old] = new
    key: str                      # graph6 of the canonically labeled graph


def _refine(g: Graph, colors: list[int]) -> list[int]:
    """Iterated neighborhood refinement; returns stable label-invariant colors."""
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v]))))
                for v in range(g.n)]
        order = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [order[sig] for sig in sigs]
        if new == colors:
            return colors
        colors = new


def _cells(colors: list[int]) -> list[list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_form(g: Graph) -> CanonicalForm:
    """Canonical relabeling via refinement plus backtracking over cells.

    Key equality is exact isomorphism (within the documented cap): among all
    orderings compatible with the refined partition the lexicographically
    minimal adjacency matrix is chosen.  Cap: n <= CANONICAL_CAP.
    """
    if g.n > CANONICAL_CAP:
        raise GraphError(f"canonical_form cap is {CANONICAL_CAP}, got n={g.n}")
    if g.n == 0:
        return CanonicalForm((), graph6_encode(g))

    best: list = [None, None]   # (bitstring tuple, perm)

    def leaf(order: list[int]) -> None:
        pos = {v: i for i, v in enumerate(order)}
        key_bits = []
        for j in range(1, g.n):
            vj = order[j]
            aj = g.adj[vj]
            for i in range(j):
                key_bits.append(aj >> order[i] & 1)
        key = tuple(key_bits)
        if best[0] is None or key < best[0]:
            best[0] = key
            best[1] = tuple(pos[v] for v in range(g.n))

    def search(colors: list[int]) -> None:
        cells = _cells(colors)
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            leaf([c[0] for c in cells])
            return
        tried: list[int] = []
        for v in target:
            # twins (equal neighborhoods apart from each other) give
            # identical subtrees, so branch on one representative only
            if any(g.adj[v] & ~(1 << w) == g.adj[w] & ~(1 << v) for w in tried):
                continue
            tried.append(v)
            nxt = list(colors)
            nxt[v] = -1   # individualize ahead of its cell
            order = {c: i for i, c in enumerate(sorted(set(nxt)))}
            search(_refine(g, [order[c] for c in nxt]))

    search(_refine(g, [g.degree(v) for v in range(g.n)]))
    perm = best[1]
    return CanonicalForm(perm, graph6_encode(relabel(g, perm)))


def canonical_key(g: Graph) -> str:
    return canonical_form(g).key


# ---------------------------------------------------------------------------
# graph6 and edge-list formats
# ---------------------------------------------------------------------------

def _g6_bytes_for_n(n: int) -> list[int]:
    if n < 0:
        raise GraphError("negative n")
    if n <= 62:
        return [63 + n]
    if n <= 258047:
        return [126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)]
    if n <= 68719476735:
        return [126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)]
    raise GraphError("n too large for graph6")


def graph6_encode(g: Graph) -> str:
    """Bit-exact graph6: N(n) header, upper-triangle column-major bits."""
    out = _g6_bytes_for_n(g.n)
    buf = 0
    nbits = 0
    for j in range(1, g.n):
        aj = g.adj[j]
        for i in range(j):
            buf = buf << 1 | (aj >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(63 + buf)
                buf = nbits = 0
    if nbits:
        out.append(63 + (buf << (6 - nbits)))
    return "".join(map(chr, out))


def graph6_decode(text: str) -> Graph:
    data = [ord(c) for c in text.strip()]
    for b in data:
        if not 63 <= b <= 126:
            raise GraphError(f"malformed graph6 byte {b}")
    if not data:
        raise GraphError("empty graph6 string")
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            if len(data) < 8:
                raise GraphError("truncated graph6 header")
            n = 0
            for b in data[2:8]:
                n = n << 6 | (b - 63)
            body = data[8:]
        else:
            if len(data) < 4:
                raise GraphError("truncated graph6 header")
            n = 0
            for b in data[1:4]:
                n = n << 6 | (b - 63)
            body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} groups, expected {need}")
    bitstream = 0
    for b in body:
        bitstream = bitstream << 6 | (b - 63)
    total = need * 6
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bitstream >> (total - 1 - k) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def edgelist_encode(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def edgelist_decode(text: str) -> Graph:
    rows = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list needs an 'n m' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = [(int(a), int(b)) for a, b in rows[1:]]
    if len(edges) != m:
        raise GraphError(f"header says {m} edges, found {len(edges)}")
    return make_graph(n, edges)


# ---------------------------------------------------------------------------
# Small generic helpers used across modules
# ---------------------------------------------------------------------------

def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for u in bits(g.adj[v]):
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def is_tree(g: Graph) -> bool:
    return g.edge_count == g.n - 1 and len(connected_components(g)) == 1


def bfs_layers(g: Graph, root: int, support: int | None = None) -> list[list[int]]:
    """Distance layers from root; ``support`` restricts to a vertex bitmask."""
    if support is None:
        support = (1 << g.n) - 1
    seen = 1 << root
    layer = [root]
    layers = [layer]
    while True:
        nxt_mask = 0
        for v in layer:
            nxt_mask |= g.adj[v]
        nxt_mask &= support & ~seen
        if not nxt_mask:
            return layers
        layer = list(bits(nxt_mask))
        seen |= nxt_mask
        layers.append(layer)


def brute_force_isomorphic(a: Graph, b: Graph) -> bool:
    """Try all permutations; independent oracle for canonical_form tests."""
    if a.n != b.n or a.edge_count != b.edge_count:
        return False
    for perm in itertools.permutations(range(a.n)):
        if all(b.adj[perm[v]] == sum(1 << perm[u] for u in bits(a.adj[v]))
               for v in range(a.n)):
            return True
    return False
