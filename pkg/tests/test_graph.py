from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from topograd.errors import DegenerateInput, InvalidInput
from topograd.generators import biclique, complete, cycle, path
from topograd.graph import (
    BipartiteLayout,
    Graph,
    average_degree,
    degeneracy,
    greedy_coloring,
    independent_set_from_coloring,
    induced_subgraph,
    is_independent,
    is_proper_coloring,
    max_average_degree,
    max_average_degree_bruteforce,
    num_colors,
)

from strategies import graphs


def test_graph_rejects_bad_edges():
    with pytest.raises(InvalidInput):
        Graph(3, [(1, 1)])
    with pytest.raises(InvalidInput):
        Graph(3, [(0, 3)])
    with pytest.raises(InvalidInput):
        Graph(3, [(0, 1), (1, 0)])


def test_equality_ignores_edge_order():
    assert Graph(3, [(1, 0), (2, 1)]) == Graph(3, [(0, 1), (1, 2)])
    assert Graph(3, [(0, 1)]) != Graph(4, [(0, 1)])


@pytest.mark.parametrize("g, want", [
    (complete(4), Fraction(3)),
    (path(3), Fraction(4, 3)),
    (Graph(5, []), Fraction(0)),
])
def test_average_degree(g, want):
    assert average_degree(g) == want


def test_average_degree_empty():
    with pytest.raises(DegenerateInput):
        average_degree(Graph(0, []))
    with pytest.raises(DegenerateInput):
        max_average_degree(Graph(0, []))


def test_mad_examples():
    assert max_average_degree(cycle(5)) == (2, frozenset(range(5)))
    k4_pendant = Graph(5, list(complete(4).edges) + [(3, 4)])
    assert max_average_degree(k4_pendant) == (3, frozenset(range(4)))
    value, chosen = max_average_degree(biclique(3, 3))
    assert value == 3 and chosen == frozenset(range(6))


@given(graphs(max_n=8))
def test_mad_matches_bruteforce(g):
    value, chosen = max_average_degree(g)
    assert value == max_average_degree_bruteforce(g)
    assert average_degree(induced_subgraph(g, chosen)) == value


@pytest.mark.parametrize("g, lo, hi", [(cycle(5), 3, 3), (complete(4), 4, 4), (Graph(4, []), 1, 1)])
def test_coloring_examples(g, lo, hi):
    coloring = greedy_coloring(g)
    assert is_proper_coloring(g, coloring)
    assert lo <= num_colors(coloring) <= hi


@given(graphs(max_n=8))
def test_coloring_within_degeneracy(g):
    coloring = greedy_coloring(g)
    assert is_proper_coloring(g, coloring)
    assert num_colors(coloring) <= degeneracy(g) + 1
    chosen = independent_set_from_coloring(g, coloring)
    assert is_independent(g, chosen)
    assert len(chosen) * num_colors(coloring) >= g.n


def test_independent_set_examples():
    assert len(independent_set_from_coloring(complete(4))) == 1
    alt = independent_set_from_coloring(cycle(6))
    assert alt in (frozenset({0, 2, 4}), frozenset({1, 3, 5}))
    assert independent_set_from_coloring(Graph(5, [])) == frozenset(range(5))


def test_induced_subgraph_examples():
    assert induced_subgraph(complete(4), [0, 2, 3]) == complete(3)
    assert induced_subgraph(cycle(6), [0, 2, 4]).m == 0
    g = cycle(6)
    assert induced_subgraph(g, range(6)) == g
    with pytest.raises(InvalidInput):
        induced_subgraph(g, [7])


def test_bipartite_layout_check():
    g = biclique(2, 2)
    BipartiteLayout([0, 1], [2, 3]).check(g, bipartite=True)
    with pytest.raises(InvalidInput):
        BipartiteLayout([0, 1], [1, 2])
    with pytest.raises(InvalidInput):
        BipartiteLayout([0, 2], [1, 3]).check(Graph(4, [(0, 2)]), bipartite=True)
