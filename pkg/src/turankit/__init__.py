"""Desk-scale toolkit for bipartite Turán problems.

Graph families (theta graphs, generalized cubes, comb pastings), rooted-tree
density and balancedness, subgraph containment and counting, exact extremal
searches with brute-force oracles, constructive lemma verifiers, and
closed-form bound evaluation.
"""

from .bounds import BoundSpec, BoundValue, compare_exact_vs_bound, eval_bound
from .engine import (Budget, ExtremalResult, Ledger, ex_exact, ex_lower,
                     oracle_ex_bruteforce, oracle_z_bruteforce, z_exact,
                     z_lower)
from .families import (FamilySpec, build_family, comb3, comb_pasting,
                       complete, complete_bipartite, cycle, double_star,
                       gen_cube, l3_theta, l_t, pasting, path,
                       pattern_by_name, power_family, spider, star, t_st,
                       theta)
from .graphs import (BipGraph, Graph, GraphError, as_bipartite, canonical_form,
                     canonical_key, edgelist_decode, edgelist_encode,
                     graph6_decode, graph6_encode, induced, make_bipgraph,
                     make_graph)
from .lemmas import (VerifierReport, almost_regular_extract, bfs_layer_report,
                     bipartite_degree_prune, bipartite_half,
                     comb_decompose_verify, cube_proof_audit,
                     min_degree_subgraph, treelayer_exhaustive,
                     verify_H1t_count, verify_correlated,
                     verify_matching_count, verify_treelayer)
from .patterns import (contains, count_copies, count_embeddings, count_h1t,
                       count_matchings, enumerate_matchings, is_t_correlated,
                       make_matching, neighborhood_graph)
from .rooted import DensityReport, RootedTree, is_balanced, make_rooted_tree

__version__ = "0.1.0"
