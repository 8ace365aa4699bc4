import random

import pytest

from turankit.graphs import (Graph, GraphError, as_bipartite, bfs_layers,
                             bipartition, brute_force_isomorphic,
                             canonical_form, canonical_key, connected_components,
                             edgelist_decode, edgelist_encode, graph6_decode,
                             graph6_encode, induced, is_tree, make_bipgraph,
                             make_graph, relabel, restrict, union_graphs)


def random_graph(rng, n, p=0.5):
    edges = [(i, j) for j in range(1, n) for i in range(j) if rng.random() < p]
    return make_graph(n, edges)


def test_make_graph_validates():
    with pytest.raises(GraphError):
        make_graph(3, [(0, 3)])
    with pytest.raises(GraphError):
        make_graph(3, [(1, 1)])
    g = make_graph(3, [(0, 1), (1, 0)])   # duplicates collapse
    assert g.edge_count == 1


def test_degrees_and_edges():
    g = make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.degrees() == [2, 2, 2, 2]
    assert g.edge_count == 4
    assert g.has_edge(0, 1) and not g.has_edge(0, 2)
    assert sorted(g.neighbors(0)) == [1, 3]


def test_restrict_vs_induced():
    g = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    r = restrict(g, [1, 2, 3])
    assert r.n == 5 and r.edge_count == 2 and r.degree(0) == 0
    i = induced(g, [1, 2, 3])
    assert i.n == 3 and i.edge_count == 2
    assert i.origin == (1, 2, 3)


def test_union_and_relabel():
    a = make_graph(3, [(0, 1)])
    b = make_graph(3, [(1, 2)])
    u = union_graphs(a, b)
    assert u.edge_count == 2
    r = relabel(a, (2, 1, 0))
    assert r.has_edge(2, 1)


def test_graph6_known_values():
    assert graph6_encode(make_graph(2, [(0, 1)])) == "A_"
    g = graph6_decode("A?")
    assert g.n == 2 and g.edge_count == 0
    # 5-cycle from the format's reference description
    c5 = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert graph6_decode(graph6_encode(c5)).adj == c5.adj


def test_graph6_round_trip_random():
    rng = random.Random(0)
    for _ in range(300):
        g = random_graph(rng, rng.randrange(0, 13))
        assert graph6_decode(graph6_encode(g)).adj == g.adj


def test_graph6_long_form():
    g = make_graph(70, [(0, 69), (1, 2)])
    s = graph6_encode(g)
    assert s[0] == chr(126)
    back = graph6_decode(s)
    assert back.n == 70 and back.has_edge(0, 69) and back.has_edge(1, 2)


def test_graph6_rejects_garbage():
    for bad in ("", "A", chr(30) + "??", "A_!"):
        with pytest.raises(GraphError):
            graph6_decode(bad)


def test_edgelist_round_trip():
    g = make_graph(4, [(0, 1), (2, 3)])
    text = edgelist_encode(g)
    assert text.splitlines()[0] == "4 2"
    assert edgelist_decode(text).adj == g.adj


def test_bipartition():
    c4 = make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    a, b = bipartition(c4)
    assert set(a) == {0, 2} and set(b) == {1, 3}
    c3 = make_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert bipartition(c3) is None
    assert as_bipartite(c3) is None


def test_bipgraph_rejects_inner_edges():
    g = make_graph(4, [(0, 1), (0, 2)])
    with pytest.raises(GraphError):
        make_bipgraph(g, {0, 1}, {2, 3})


def test_components_tree_layers():
    g = make_graph(6, [(0, 1), (1, 2), (4, 5)])
    comps = connected_components(g)
    assert sorted(map(sorted, comps)) == [[0, 1, 2], [3], [4, 5]]
    assert not is_tree(g)
    assert is_tree(make_graph(3, [(0, 1), (1, 2)]))
    layers = bfs_layers(g, 0)
    assert layers == [[0], [1], [2]]


def test_canonical_key_invariant_under_relabeling():
    rng = random.Random(1)
    for _ in range(120):
        n = rng.randrange(1, 9)
        g = random_graph(rng, n)
        perm = list(range(n))
        rng.shuffle(perm)
        assert canonical_key(g) == canonical_key(relabel(g, perm))


def test_canonical_key_separates_nonisomorphic():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randrange(2, 8)
        g, h = random_graph(rng, n), random_graph(rng, n)
        same_key = canonical_key(g) == canonical_key(h)
        assert same_key == brute_force_isomorphic(g, h)


def test_isomorphism_class_counts():
    # classic census of unlabeled graphs per order
    expected = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34}
    for n, want in expected.items():
        pairs = [(i, j) for j in range(1, n) for i in range(j)]
        keys = set()
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            keys.add(canonical_key(make_graph(n, edges)))
        assert len(keys) == want


def test_canonical_form_relabeling_is_consistent():
    g = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    cf = canonical_form(g)
    lab = relabel(g, cf.relabeling)
    assert graph6_encode(lab) == cf.key
