import math
import random

import pytest

from turankit.families import (comb3, comb_pasting, complete_bipartite, cycle,
                               gen_cube, l3_theta, path, star, t_st, theta)
from turankit.graphs import GraphError, as_bipartite, make_bipgraph, make_graph
from turankit.patterns import (Matching, automorphisms, contains, contains_any,
                               contains_with_edge, count_copies,
                               count_embeddings, count_h1t, count_matchings,
                               degree_into, embed_rooted_tree,
                               enumerate_matchings, is_t_correlated,
                               make_matching, neighborhood_graph)


def test_contains_basic():
    c6 = cycle(6)
    assert contains(c6, path(4)) is not None
    assert contains(c6, cycle(4)) is None
    emb = contains(gen_cube(2, 2).graph, cycle(4))
    assert emb is not None
    # the embedding really maps edges to edges
    host = gen_cube(2, 2).graph
    m = dict(emb.pairs())
    for u, v in cycle(4).edge_list():
        assert host.has_edge(m[u], m[v])


def test_contains_any():
    assert contains_any(cycle(6), [cycle(4), path(3)])
    assert not contains_any(path(3), [cycle(4), cycle(6)])


def test_family_containments():
    for p in (2, 3):
        assert contains(l3_theta(p), comb_pasting(p)) is not None
    for s in (1, 2, 3):
        for t in (1, 2, 3):
            assert contains(gen_cube(s, t).graph, t_st(s, t)) is not None


def test_contains_with_edge_matches_global():
    rng = random.Random(5)
    c4 = cycle(4)
    for _ in range(200):
        n = rng.randrange(4, 9)
        edges = [(i, j) for j in range(1, n) for i in range(j)
                 if rng.random() < 0.4]
        if not edges:
            continue
        g = make_graph(n, edges)
        u, v = edges[rng.randrange(len(edges))]
        through = contains_with_edge(g, c4, u, v)
        if through:
            assert contains(g, c4) is not None
        else:
            # no C4 through (u,v); a global C4 may still exist elsewhere
            for emb in ():
                pass
            sub = [e for e in edges if e != (u, v) and e != (v, u)]
            g2 = make_graph(n, sub + [(u, v)])
            assert contains_with_edge(g2, c4, u, v) == through


def test_count_copies_closed_forms():
    assert count_copies(complete_bipartite(2, 2).graph, cycle(4)) == 1
    assert count_copies(complete_bipartite(2, 3).graph, cycle(4)) == 3
    assert count_copies(complete_bipartite(3, 3).graph, cycle(6)) == 6
    assert count_copies(complete_bipartite(3, 3).graph, cycle(4)) == 9
    assert count_copies(cycle(6), path(3)) == 6
    assert count_copies(star(4), star(2)) == math.comb(4, 2)


def test_automorphism_counts():
    assert len(automorphisms(cycle(4))) == 8
    assert len(automorphisms(cycle(6))) == 12
    assert len(automorphisms(path(4))) == 2
    assert len(automorphisms(gen_cube(2, 2).graph)) == 48


def test_count_embeddings_consistent():
    host = complete_bipartite(3, 3).graph
    assert count_embeddings(host, cycle(6)) \
        == count_copies(host, cycle(6)) * len(automorphisms(cycle(6)))


def test_matchings_closed_form():
    for a in range(1, 5):
        for b in range(1, 5):
            host = complete_bipartite(a, b)
            for t in range(1, min(a, b) + 1):
                want = math.comb(a, t) * math.comb(b, t) * math.factorial(t)
                assert count_matchings(host, t) == want
                assert len(list(enumerate_matchings(host, t))) == want


def test_make_matching_validates():
    host = complete_bipartite(2, 2)
    m = make_matching(host, [(0, 2)])
    assert m.edges == ((0, 2),)
    with pytest.raises(GraphError):
        make_matching(host, [(0, 1)])        # not a crossing edge
    with pytest.raises(GraphError):
        make_matching(host, [(0, 2), (0, 3)])  # shares a vertex


def test_neighborhood_graph_examples():
    c6 = theta(3, 2)
    m = make_matching(c6, [next(iter(enumerate_matchings(c6, 1))).edges[0]])
    nm = neighborhood_graph(c6, m)
    assert len(nm.part_a) == 1 and len(nm.part_b) == 1
    assert nm.edge_count == 0

    k33 = complete_bipartite(3, 3)
    m = make_matching(k33, [(0, 3)])
    nm = neighborhood_graph(k33, m)
    assert len(nm.part_a) == 2 and len(nm.part_b) == 2
    assert nm.edge_count == 4

    k22 = complete_bipartite(2, 2)
    nm = neighborhood_graph(k22, make_matching(k22, [(0, 2)]))
    assert nm.edge_count == 1


def test_t_correlated_example():
    k44 = complete_bipartite(4, 4)
    m = make_matching(k44, [(0, 4)])
    l = make_matching(k44, [(1, 5)])
    assert is_t_correlated(k44, m, l, 2)
    assert is_t_correlated(k44, m, l, 3)
    assert not is_t_correlated(k44, m, l, 4)
    assert degree_into(k44, {4, 5, 6}, 0) == 3


def test_count_h1t_small_values():
    assert count_h1t(complete_bipartite(2, 2), 1) == 1
    assert count_h1t(complete_bipartite(3, 3), 1) == 9
    assert count_h1t(complete_bipartite(3, 3), 2) == 18


def test_count_h1t_matches_copy_counter():
    rng = random.Random(9)
    for _ in range(25):
        a, b = rng.randrange(2, 5), rng.randrange(2, 5)
        cells = [(i, a + j) for i in range(a) for j in range(b)]
        chosen = [c for c in cells if rng.random() < 0.7]
        host = make_bipgraph(make_graph(a + b, chosen), range(a),
                             range(a, a + b))
        for t in (1, 2):
            assert count_h1t(host, t) \
                == count_copies(host.graph, gen_cube(1, t).graph)


def test_embed_rooted_tree():
    from turankit.families import spider
    t = spider(2, 2)
    host = l3_theta(2)
    found = any(embed_rooted_tree(host, t, v) is not None
                for v in range(host.n))
    assert found
    tiny = path(2)
    assert embed_rooted_tree(tiny, t, 0) is None
