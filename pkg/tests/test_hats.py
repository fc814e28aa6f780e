from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topograd.errors import InvalidInput, PreconditionFailed, SearchExhausted
from topograd.generators import complete, subdivision
from topograd.graph import BipartiteLayout, Graph
from topograd.hats import (
    Hat,
    enumerate_hats,
    fix_branch_search,
    induce_hats_search,
    max_uncrowded_hatset,
)
from topograd.subdivision import SubdivisionSpec, verify_witness


def test_enumerate_examples():
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert len(enumerate_hats(star, BipartiteLayout([0], [1, 2, 3]))) == 3
    matching = Graph(4, [(0, 2), (1, 3)])
    assert enumerate_hats(matching, BipartiteLayout([0, 1], [2, 3])) == []
    single = Graph(3, [(0, 1), (0, 2)])
    assert enumerate_hats(single, BipartiteLayout([0], [1, 2])) == [Hat(0, (1, 2))]


def test_enumerate_layout_errors():
    with pytest.raises(InvalidInput):
        enumerate_hats(Graph(3, [(0, 1)]), BipartiteLayout([0], [1, 5]))
    # edges inside B are allowed: they do not create hats
    assert enumerate_hats(Graph(3, [(1, 2)]), BipartiteLayout([0], [1, 2])) == []


def test_max_uncrowded_examples():
    two = Graph(6, [(0, 2), (0, 3), (1, 4), (1, 5)])
    assert len(max_uncrowded_hatset(two, BipartiteLayout([0, 1], [2, 3, 4, 5]))) == 2
    same = Graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    best = max_uncrowded_hatset(same, BipartiteLayout([0, 1], [2, 3]))
    assert len(best) == 1 and best.uncrowded


@st.composite
def bipartite_instances(draw):
    a = draw(st.integers(1, 5))
    b = draw(st.integers(2, 5))
    pairs = [(i, a + j) for i in range(a) for j in range(b)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True))
    return Graph(a + b, edges), BipartiteLayout(range(a), range(a, a + b))


def _brute_uncrowded(g, layout):
    """Each midpoint picks one of its endpoint pairs or nothing; pairs distinct."""
    options = {}
    for h in enumerate_hats(g, layout):
        options.setdefault(h.midpoint, []).append(h.endpoints)
    mids = sorted(options)

    def best(i, used):
        if i == len(mids):
            return 0
        top = best(i + 1, used)
        for pair in options[mids[i]]:
            if pair not in used:
                top = max(top, 1 + best(i + 1, used | {pair}))
        return top

    return best(0, frozenset())


@settings(max_examples=50)
@given(bipartite_instances())
def test_max_uncrowded_is_optimal(inst):
    g, layout = inst
    found = max_uncrowded_hatset(g, layout)
    assert found.uncrowded
    assert len(found) == _brute_uncrowded(g, layout)


def _c6_hats():
    # C_6 read as the 1-subdivision of a triangle: midpoints 3, 4, 5 over B = {0, 1, 2}
    return Graph(6, [(0, 3), (3, 1), (1, 4), (4, 2), (0, 5), (5, 2)]), BipartiteLayout([3, 4, 5], [0, 1, 2])


def test_induce_fixed_point():
    g, layout = _c6_hats()
    out = induce_hats_search(g, layout, 1, relaxed=True, threshold=Fraction(1))
    assert out.vertices == frozenset(range(6))
    assert len(out.hats) == 3 and out.hats.induced and out.hats.uncrowded


def test_induce_drops_crowded_midpoint():
    g, _ = _c6_hats()
    g = Graph(7, list(g.edges) + [(6, 0), (6, 1), (6, 2)])
    out = induce_hats_search(g, BipartiteLayout([3, 4, 5, 6], [0, 1, 2]), 1, relaxed=True, threshold=Fraction(1))
    assert 6 not in out.vertices and out.hats.induced and len(out.hats) == 3


def test_induce_errors():
    g, _ = _c6_hats()
    with pytest.raises(PreconditionFailed):
        induce_hats_search(g, BipartiteLayout([3, 4, 5], []), 1, relaxed=True)
    with pytest.raises(SearchExhausted):
        induce_hats_search(g, BipartiteLayout([3, 4, 5], [0, 1, 2]), 1, relaxed=True, threshold=Fraction(2))
    # strict mode demands r^11/2^8 uncrowded hats per B vertex: 8 when r = 2
    with pytest.raises(PreconditionFailed):
        induce_hats_search(g, BipartiteLayout([3, 4, 5], [0, 1, 2]), 2)


@settings(max_examples=50)
@given(bipartite_instances())
def test_induce_output_contract(inst):
    g, layout = inst
    try:
        out = induce_hats_search(g, layout, 2, relaxed=True, threshold=Fraction(1, 4))
    except SearchExhausted:
        return
    sub = out.graph(g)
    assert out.hats.induced and out.hats.uncrowded
    assert len(out.hats) >= Fraction(1, 4) * len(out.layout.right)
    assert sub.n == len(out.vertices)


def _sub_k4_partition():
    g, _ = subdivision(complete(4), 1)
    return g, (range(4, 10), range(4))


def test_fix_branch_finds_k4():
    g, part = _sub_k4_partition()
    res = fix_branch_search(g, part, 1, relaxed=True, target=Fraction(3))
    assert res.pattern == complete(4) and res.average_degree == 3
    assert verify_witness(g, res.pattern, SubdivisionSpec.exactly(1, induced=True), res.witness) == []


def test_fix_branch_errors():
    g, part = _sub_k4_partition()
    with pytest.raises(SearchExhausted):
        fix_branch_search(g, part, 1, relaxed=True, target=Fraction(4))
    with pytest.raises(PreconditionFailed):
        fix_branch_search(g, (range(0, 5), range(5, 10)), 1, relaxed=True)
    with pytest.raises(PreconditionFailed):
        fix_branch_search(g, part, 3)
    with pytest.raises(InvalidInput):
        fix_branch_search(g, (range(4, 9), range(4)), 1, relaxed=True)
