"""Rooted trees, subset densities, balancedness and the predicted exponent.

All arithmetic is exact rational; comparisons never touch floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, GraphError, bits, is_tree

BALANCE_CAP = 24


@dataclass(frozen=True)
class RootedTree:
    """Tree together with an independent root set."""

    tree: Graph
    roots: frozenset


def make_rooted_tree(tree: Graph, roots) -> RootedTree:
    roots = frozenset(roots)
    if not is_tree(tree):
        raise GraphError("underlying graph is not a tree")
    for r in roots:
        if not 0 <= r < tree.n:
            raise GraphError(f"root {r} out of range")
        if tree.adj[r] & sum(1 << s for s in roots):
            raise GraphError("root set is not independent")
    return RootedTree(tree, roots)


@dataclass(frozen=True)
class DensityReport:
    rho: Fraction
    minimizer: tuple[int, ...]
    balanced: bool
    exponent: Fraction   # 2 - 1/rho

    def to_dict(self) -> dict:
        return {
            "rho": str(self.rho),
            "minimizer": list(self.minimizer),
            "balanced": self.balanced,
            "exponent": str(self.exponent),
        }


def incident_edge_count(t: RootedTree, subset_mask: int) -> int:
    """Number of tree edges with at least one endpoint in the subset."""
    count = 0
    for u, v in t.tree.edges():
        if subset_mask >> u & 1 or subset_mask >> v & 1:
            count += 1
    return count


def rho(t: RootedTree, subset) -> Fraction:
    """Exact density e(S)/|S| for a nonempty S disjoint from the roots."""
    s = frozenset(subset)
    if not s:
        raise GraphError("density of empty subset")
    if s & t.roots:
        raise GraphError("subset meets the root set")
    for v in s:
        if not 0 <= v < t.tree.n:
            raise GraphError(f"vertex {v} out of range")
    mask = sum(1 << v for v in s)
    return Fraction(incident_edge_count(t, mask), len(s))


def rho_tree(t: RootedTree) -> Fraction:
    free = [v for v in range(t.tree.n) if v not in t.roots]
    if not free:
        raise GraphError("tree has no non-root vertices")
    return rho(t, free)


def is_balanced(t: RootedTree) -> DensityReport:
    """Exhaustive subset scan; exact minimum with its lexicographically least witness."""
    free = [v for v in range(t.tree.n) if v not in t.roots]
    if len(free) > BALANCE_CAP:
        raise GraphError(f"balancedness cap is {BALANCE_CAP} non-root vertices")
    if not free:
        raise GraphError("tree has no non-root vertices")
    edge_list = t.tree.edge_list()
    best: Fraction | None = None
    best_set: tuple[int, ...] = ()
    for size in range(1, len(free) + 1):
        # subsets in lexicographic order of sorted vertex tuples
        for combo in _combinations_lex(free, size):
            mask = sum(1 << v for v in combo)
            e = sum(1 for u, v in edge_list if mask >> u & 1 or mask >> v & 1)
            val = Fraction(e, size)
            if best is None or val < best or (val == best and combo < best_set):
                best, best_set = val, combo
    full = tuple(free)
    rho_t = rho(t, full)
    balanced = best == rho_t
    return DensityReport(rho_t, best_set, balanced, 2 - 1 / rho_t)


def _combinations_lex(items, size):
    from itertools import combinations
    return combinations(sorted(items), size)
