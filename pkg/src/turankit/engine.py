"""Exact and lower-bound Turán/Zarankiewicz computation at desk scale.

ex_exact runs a depth-first branch over edge slots with incumbent seeding,
upper-bound pruning and isomorphism rejection of shallow prefixes; z_exact
branches over biadjacency rows under a double-lex symmetry break.  Both keep
freeness incrementally: only embeddings through the newly added edge are
tested.  oracle_* scan every labeled graph and share no code with the pruned
searches.
"""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import dataclass

from .graphs import (Graph, GraphError, bits, canonical_key, graph6_decode,
                     graph6_encode, induced, make_graph)
from .patterns import contains, contains_with_edge

EX_ORDER_CAP = 12


class BudgetExhausted(RuntimeError):
    """Raised internally; searches degrade exact -> lower instead of failing."""


@dataclass(frozen=True)
class ExtremalResult:
    pattern_g6: str            # canonical graph6 of the pattern
    orders: tuple[int, ...]    # (n,) or (m, n)
    value: int
    mode: str                  # "exact" | "lower"
    witness_g6: str
    seed: int
    nodes: int
    prunes: int
    millis: int

    def to_json(self) -> str:
        return json.dumps({
            "pattern_g6": self.pattern_g6,
            "orders": list(self.orders),
            "value": self.value,
            "mode": self.mode,
            "witness_g6": self.witness_g6,
            "seed": self.seed,
            "nodes": self.nodes,
            "prunes": self.prunes,
            "millis": self.millis,
        }, sort_keys=True)

    @staticmethod
    def from_json(line: str) -> "ExtremalResult":
        d = json.loads(line)
        return ExtremalResult(d["pattern_g6"], tuple(d["orders"]), d["value"],
                              d["mode"], d["witness_g6"], d["seed"],
                              d["nodes"], d["prunes"], d["millis"])


def _verify_witness(res: ExtremalResult, h: Graph) -> None:
    w = graph6_decode(res.witness_g6)
    order = res.orders[0] if len(res.orders) == 1 else sum(res.orders)
    if w.n != order or w.edge_count != res.value:
        raise GraphError("witness does not match result record")
    if contains(w, h) is not None:
        raise GraphError("witness contains the forbidden pattern")


@dataclass
class Budget:
    max_nodes: int | None = None
    max_seconds: float | None = None


def _slots_vertex_major(n: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(1, n) for i in range(j)]


def ex_lower(n: int, h: Graph, effort: int = 2000, seed: int = 0,
             timer=time.monotonic) -> ExtremalResult:
    """Randomized incumbent: maximal h-free fill plus 1-out/2-in exchanges.

    Deterministic under the seed.
    """
    t0 = timer()
    rng = random.Random(seed)
    all_pairs = _slots_vertex_major(n)
    g = make_graph(n, [])

    def try_add(g, pairs):
        for (u, v) in pairs:
            if not g.has_edge(u, v):
                g2 = _with_edge(g, u, v)
                if not contains_with_edge(g2, h, u, v):
                    g = g2
        return g

    pairs = all_pairs[:]
    rng.shuffle(pairs)
    g = try_add(g, pairs)
    best = g
    for _ in range(effort):
        edges = g.edge_list()
        if not edges:
            break
        u, v = edges[rng.randrange(len(edges))]
        g2 = _without_edge(g, u, v)
        pairs = [e for e in all_pairs if not g2.has_edge(*e)]
        rng.shuffle(pairs)
        g2 = try_add(g2, pairs)
        if g2.edge_count >= g.edge_count:
            g = g2
        if g.edge_count > best.edge_count:
            best = g
    millis = int((timer() - t0) * 1000)
    return ExtremalResult(canonical_key(h), (n,), best.edge_count, "lower",
                          graph6_encode(best), seed, 0, 0, millis)


def _with_edge(g: Graph, u: int, v: int) -> Graph:
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(g.n, tuple(adj))


def _without_edge(g: Graph, u: int, v: int) -> Graph:
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph(g.n, tuple(adj))


def ex_exact(n: int, h: Graph, budget: Budget | None = None, seed: int = 0,
             allow_large: bool = False, iso_prefix_cap: int = 7,
             timer=time.monotonic) -> ExtremalResult:
    """Exact ex(n, h) with witness, by edge-slot branch and bound."""
    if n > EX_ORDER_CAP and not allow_large:
        raise GraphError(f"ex_exact order cap is {EX_ORDER_CAP}")
    budget = budget or Budget()
    t0 = timer()
    pattern_key = canonical_key(h)

    incumbent = ex_lower(n, h, effort=200, seed=seed, timer=timer)
    best_value = incumbent.value
    best_witness = incumbent.witness_g6
    if h.n > n:
        # K_n is trivially h-free
        from itertools import combinations
        kn = make_graph(n, list(combinations(range(n), 2)))
        millis = int((timer() - t0) * 1000)
        res = ExtremalResult(pattern_key, (n,), kn.edge_count, "exact",
                             graph6_encode(kn), seed, 0, 0, millis)
        _verify_witness(res, h)
        return res

    slots = _slots_vertex_major(n)
    total = len(slots)
    # slot index after which the prefix on vertices 0..j is fully decided
    boundary_at = {j * (j + 1) // 2: j for j in range(1, n)}
    seen_prefix: dict[int, set] = {}
    nodes = prunes = 0
    adj = [0] * n
    exhausted = False

    def dfs(k: int, edge_count: int):
        nonlocal nodes, prunes, best_value, best_witness, exhausted
        nodes += 1
        if budget.max_nodes is not None and nodes > budget.max_nodes:
            exhausted = True
            return
        if budget.max_seconds is not None and nodes % 4096 == 0 \
                and timer() - t0 > budget.max_seconds:
            exhausted = True
            return
        if edge_count > best_value:
            best_value = edge_count
            best_witness = graph6_encode(Graph(n, tuple(adj)))
        if k == total:
            return
        if edge_count + (total - k) <= best_value:
            prunes += 1
            return
        j = boundary_at.get(k)
        if j is not None and j + 1 <= iso_prefix_cap:
            key = canonical_key(induced(Graph(n, tuple(adj)), range(j + 1)))
            bucket = seen_prefix.setdefault(k, set())
            if key in bucket:
                prunes += 1
                return
            bucket.add(key)
        u, v = slots[k]
        # include first: good incumbents surface early
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        if not contains_with_edge(Graph(n, tuple(adj)), h, u, v):
            dfs(k + 1, edge_count + 1)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        if exhausted:
            return
        dfs(k + 1, edge_count)

    dfs(0, 0)
    millis = int((timer() - t0) * 1000)
    mode = "lower" if exhausted else "exact"
    res = ExtremalResult(pattern_key, (n,), best_value, mode, best_witness,
                         seed, nodes, prunes, millis)
    _verify_witness(res, h)
    return res


# ---------------------------------------------------------------------------
# Bipartite (Zarankiewicz) search
# ---------------------------------------------------------------------------

def _bip_graph_from_rows(m: int, n: int, rows) -> Graph:
    adj = [0] * (m + n)
    for i, r in enumerate(rows):
        for j in bits(r):
            adj[i] |= 1 << (m + j)
            adj[m + j] |= 1 << i
    return Graph(m + n, tuple(adj))


def z_lower(m: int, n: int, h: Graph, effort: int = 400, seed: int = 0,
            timer=time.monotonic) -> ExtremalResult:
    """Randomized maximal h-free biadjacency fill (incumbent generator)."""
    t0 = timer()
    rng = random.Random(seed)
    cells = [(i, j) for i in range(m) for j in range(n)]
    best_rows = [0] * m
    best_count = -1
    for _ in range(max(1, effort // max(m * n, 1))):
        rows = [0] * m
        g = make_graph(m + n, [])
        order = cells[:]
        rng.shuffle(order)
        count = 0
        for (i, j) in order:
            g2 = _with_edge(g, i, m + j)
            if not contains_with_edge(g2, h, i, m + j):
                g = g2
                rows[i] |= 1 << j
                count += 1
        if count > best_count:
            best_count, best_rows = count, rows[:]
    millis = int((timer() - t0) * 1000)
    return ExtremalResult(canonical_key(h), (m, n), best_count, "lower",
                          graph6_encode(_bip_graph_from_rows(m, n, best_rows)),
                          seed, 0, 0, millis)


def z_exact(m: int, n: int, h: Graph, budget: Budget | None = None,
            seed: int = 0, timer=time.monotonic) -> ExtremalResult:
    """Exact z(m, n, h) with a bipartite witness.

    Branches row by row; a candidate row must keep rows nonincreasing and all
    column prefixes nonincreasing (double-lex symmetry break, which retains at
    least one matrix per row/column-permutation orbit).
    """
    budget = budget or Budget()
    t0 = timer()
    pattern_key = canonical_key(h)
    incumbent = z_lower(m, n, h, seed=seed, timer=timer)
    best_value = incumbent.value
    best_witness = incumbent.witness_g6
    nodes = prunes = 0
    exhausted = False
    rows = [0] * m
    row_masks_desc = sorted(range(1 << n),
                            key=lambda r: (-r.bit_count(), -r))

    def cols_ok(level: int, r: int) -> bool:
        # column prefixes as integers, rows 0..level; nonincreasing in j
        prev = None
        for j in range(n):
            val = 0
            for i in range(level):
                val = val << 1 | (rows[i] >> (n - 1 - j) & 1)
            val = val << 1 | (r >> (n - 1 - j) & 1)
            if prev is not None and val > prev:
                return False
            prev = val
        return True

    def dfs(level: int, edge_count: int):
        nonlocal nodes, prunes, best_value, best_witness, exhausted
        nodes += 1
        if budget.max_nodes is not None and nodes > budget.max_nodes:
            exhausted = True
            return
        if budget.max_seconds is not None and nodes % 1024 == 0 \
                and timer() - t0 > budget.max_seconds:
            exhausted = True
            return
        if edge_count > best_value:
            best_value = edge_count
            best_witness = graph6_encode(_bip_graph_from_rows(m, n, rows))
        if level == m:
            return
        if edge_count + (m - level) * n <= best_value:
            prunes += 1
            return
        limit = rows[level - 1] if level else (1 << n) - 1
        for r in row_masks_desc:
            if r > limit:
                continue
            # later rows are bounded by this row's weight (rows nonincreasing)
            if edge_count + (m - level) * r.bit_count() <= best_value:
                prunes += 1
                continue
            if not cols_ok(level, r):
                continue
            rows[level] = r
            g = _bip_graph_from_rows(m, n, rows[:level + 1])
            ok = True
            for j in bits(r):
                if contains_with_edge(g, h, level, m + j):
                    ok = False
                    break
            if ok:
                dfs(level + 1, edge_count + r.bit_count())
            rows[level] = 0
            if exhausted:
                return

    dfs(0, 0)
    millis = int((timer() - t0) * 1000)
    mode = "lower" if exhausted else "exact"
    res = ExtremalResult(pattern_key, (m, n), best_value, mode, best_witness,
                         seed, nodes, prunes, millis)
    _verify_witness(res, h)
    return res


# ---------------------------------------------------------------------------
# Independent brute-force oracles
# ---------------------------------------------------------------------------

def _naive_has_subgraph(g: Graph, h: Graph) -> bool:
    """Small recursive embedding test, code-independent from patterns._search."""
    if h.n > g.n or h.edge_count > g.edge_count:
        return False
    hdeg = h.degrees()
    gdeg = g.degrees()
    order = sorted(range(h.n), key=lambda v: -hdeg[v])

    def rec(idx, mapping, used):
        if idx == len(order):
            return True
        v = order[idx]
        for w in range(g.n):
            if used >> w & 1 or gdeg[w] < hdeg[v]:
                continue
            good = True
            for u in bits(h.adj[v]):
                mu = mapping.get(u)
                if mu is not None and not (g.adj[w] >> mu & 1):
                    good = False
                    break
            if good:
                mapping[v] = w
                if rec(idx + 1, mapping, used | (1 << w)):
                    return True
                del mapping[v]
        return False

    return rec(0, {}, 0)


def oracle_ex_bruteforce(n: int, h: Graph) -> int:
    """Exact ex(n, h) by scanning all 2^C(n,2) labeled graphs; n <= 7."""
    if n > 7:
        raise GraphError("oracle cap is n <= 7")
    pairs = _slots_vertex_major(n)
    npairs = len(pairs)
    best = -1
    for mask in range(1 << npairs):
        pc = mask.bit_count()
        if pc <= best:
            continue
        adj = [0] * n
        mm = mask
        while mm:
            low = mm & -mm
            u, v = pairs[low.bit_length() - 1]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            mm ^= low
        if not _naive_has_subgraph(Graph(n, tuple(adj)), h):
            best = pc
    return best


def oracle_z_bruteforce(m: int, n: int, h: Graph) -> int:
    """Exact z(m, n, h) by scanning all 2^(mn) biadjacency matrices; mn <= 20."""
    if m * n > 20:
        raise GraphError("oracle cap is m*n <= 20")
    best = -1
    for mask in range(1 << (m * n)):
        pc = mask.bit_count()
        if pc <= best:
            continue
        rows = [(mask >> (i * n)) & ((1 << n) - 1) for i in range(m)]
        g = _bip_graph_from_rows(m, n, rows)
        if not _naive_has_subgraph(g, h):
            best = pc
    return best


# ---------------------------------------------------------------------------
# Persistent ledger
# ---------------------------------------------------------------------------

LEDGER_ENV = "TURAN_LEDGER"


class LedgerLocked(RuntimeError):
    pass


class Ledger:
    """Append-only JSON-lines store of ExtremalResults.

    At most one exact record per (pattern, orders, mode) key; lower records
    are kept only when they improve.  Appends hold an advisory lock; a second
    concurrent writer errors instead of corrupting the file.
    """

    def __init__(self, path: str):
        self.path = path

    def _key(self, res: ExtremalResult):
        return (res.pattern_g6, res.orders, res.mode)

    def records(self) -> list[ExtremalResult]:
        if not os.path.exists(self.path):
            return []
        with open(self.path) as f:
            return [ExtremalResult.from_json(ln) for ln in f if ln.strip()]

    def lookup(self, pattern_g6: str, orders, mode: str):
        found = None
        for rec in self.records():
            if rec.pattern_g6 == pattern_g6 and tuple(rec.orders) == tuple(orders) \
                    and rec.mode == mode:
                if found is None or rec.value > found.value:
                    found = rec
        return found

    def append(self, res: ExtremalResult) -> bool:
        """Store if new/better; returns whether the record was written."""
        existing = self.lookup(res.pattern_g6, res.orders, res.mode)
        if existing is not None:
            if res.mode == "exact" or res.value <= existing.value:
                return False
        import fcntl
        with open(self.path, "a") as f:
            try:
                fcntl.flock(f, fcntl.LOCK_EX | fcntl.LOCK_NB)
            except OSError as exc:
                raise LedgerLocked(f"ledger {self.path} is locked") from exc
            f.write(res.to_json() + "\n")
            f.flush()
            os.fsync(f.fileno())
            fcntl.flock(f, fcntl.LOCK_UN)
        return True
