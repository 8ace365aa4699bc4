from fractions import Fraction

import pytest

from turankit.families import comb3, double_star, spider
from turankit.graphs import GraphError, make_graph
from turankit.rooted import is_balanced, make_rooted_tree, rho, rho_tree


def test_make_rooted_tree_validates():
    path3 = make_graph(3, [(0, 1), (1, 2)])
    with pytest.raises(GraphError):
        make_rooted_tree(path3, [0, 1])      # adjacent roots
    cyc = make_graph(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(GraphError):
        make_rooted_tree(cyc, [0])
    t = make_rooted_tree(path3, [0, 2])
    assert t.roots == frozenset({0, 2})


def test_rho_counts_incident_edges():
    t = comb3()
    # spine vertices 0,1,2; tips 3,4,5 are roots
    assert rho(t, [1]) == Fraction(3, 1)      # spine middle meets 3 edges
    assert rho(t, [0]) == Fraction(2, 1)
    assert rho_tree(t) == Fraction(5, 3)
    with pytest.raises(GraphError):
        rho(t, [])
    with pytest.raises(GraphError):
        rho(t, [3])                           # meets the root set


def test_double_star_density():
    for s in range(2, 6):
        rep = is_balanced(double_star(s))
        assert rep.balanced
        assert rep.rho == Fraction(2 * s + 1, 2)
        assert rep.exponent == 2 - Fraction(2, 2 * s + 1)


def test_comb_density_and_exponent():
    rep = is_balanced(comb3())
    assert rep.balanced
    assert rep.rho == Fraction(5, 3)
    assert rep.exponent == Fraction(7, 5)
    assert rep.to_dict() == {"rho": "5/3", "minimizer": [0, 1, 2],
                             "balanced": True, "exponent": "7/5"}


def test_pendant_breaks_balance():
    # star with rooted leaves plus one extra pendant at the center
    g = make_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    t = make_rooted_tree(g, [1, 2, 3])
    rep = is_balanced(t)
    assert not rep.balanced
    assert rep.minimizer == (4,)
    assert rho(t, [4]) == 1
    assert rep.rho == Fraction(2, 1)


def test_spider_balanced():
    rep = is_balanced(spider(3, 2))
    assert rep.rho == Fraction(1, 1)
    assert rep.balanced
    assert rep.exponent == 1
