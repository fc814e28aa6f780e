from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from oracles import density_oracle
from strategies import graphs
from topograd.density import (
    MEASURES,
    NABLA,
    NABLA_EXACT,
    NABLA_INDUCED,
    density_profile,
    family_trend,
    fit_trend,
    nabla_exact_k,
    nabla_induced_k,
    nabla_k,
)
from topograd.errors import InvalidInput
from topograd.generators import complete, cycle, subdivision
from topograd.graph import Graph, average_degree, max_average_degree
from topograd.subdivision import SearchConfig, verify_witness

# least-squares slope of log(n-1) on log(n) for n = 2..5, frozen at first run
CLIQUE_TREND_SLOPE = 1.516401850205031


def test_cycle_depth_one(c6):
    assert nabla_k(c6, 1).value == 2


def test_exact_measure_on_subdivided_k4(sub_k4):
    rep = nabla_exact_k(sub_k4, 1)
    assert rep.value == 3
    assert rep.pattern == complete(4)
    assert verify_witness(sub_k4, rep.pattern, rep.spec, rep.witness) == []


def test_triangle_has_no_exact_one():
    assert nabla_exact_k(complete(3), 1).value == 0


def test_k4_profile(k4):
    rows = density_profile(k4, 2)
    assert [r.values for r in rows] == [
        {NABLA: 3, NABLA_INDUCED: 3, NABLA_EXACT: 3},
        {NABLA: 3, NABLA_INDUCED: 3, NABLA_EXACT: 0},
        {NABLA: 3, NABLA_INDUCED: 3, NABLA_EXACT: 0},
    ]
    assert all(all(r.exact.values()) for r in rows)


def test_edgeless_profile():
    rows = density_profile(Graph(4, []), 2)
    assert all(v == 0 for r in rows for v in r.values.values())


def test_c6_profile(c6):
    rows = density_profile(c6, 1)
    assert rows[0].values == {NABLA: 2, NABLA_INDUCED: 2, NABLA_EXACT: 2}
    assert rows[1].values[NABLA] == 2 and rows[1].values[NABLA_INDUCED] == 2
    assert rows[1].values[NABLA_EXACT] <= 2


def test_bad_arguments():
    with pytest.raises(InvalidInput):
        nabla_k(cycle(4), -1)
    with pytest.raises(InvalidInput):
        nabla_k(Graph(0, []), 1)
    with pytest.raises(InvalidInput):
        density_profile(cycle(4), -1)


@given(graphs(max_n=8))
def test_depth_zero_is_mad(g):
    mad = max_average_degree(g)[0]
    assert nabla_k(g, 0).value == mad
    assert nabla_induced_k(g, 0).value == mad
    assert nabla_exact_k(g, 0).value == mad


@settings(max_examples=40)
@given(graphs(max_n=7))
def test_reports_carry_valid_witnesses(g):
    for k in (1, 2):
        for f in (nabla_k, nabla_induced_k, nabla_exact_k):
            rep = f(g, k)
            assert verify_witness(g, rep.pattern, rep.spec, rep.witness) == []
            assert average_degree(rep.pattern) == rep.value or (rep.pattern.n == 1 and rep.value == 0)


@settings(max_examples=40)
@given(graphs(max_n=7))
def test_monotone_in_depth_and_chain(g):
    rows = density_profile(g, 2)
    for a, b in zip(rows, rows[1:]):
        assert a.values[NABLA] <= b.values[NABLA]
        assert a.values[NABLA_INDUCED] <= b.values[NABLA_INDUCED]
    for r in rows:
        assert r.values[NABLA] >= r.values[NABLA_INDUCED] >= r.values[NABLA_EXACT]


@settings(max_examples=25)
@given(graphs(max_n=6))
def test_matches_image_oracle(g):
    want = density_oracle(g, 2)
    for k in range(3):
        got = {m: f(g, k).value for m, f in ((NABLA, nabla_k), (NABLA_INDUCED, nabla_induced_k), (NABLA_EXACT, nabla_exact_k))}
        assert got == {m: want[m][k] for m in MEASURES}


def test_large_host_uses_budget_and_bound():
    g, _ = subdivision(complete(10), 1)
    rep = nabla_exact_k(g, 1)
    assert rep.value == 9 and rep.exact
    sparse, _ = subdivision(complete(5), 2)
    big = Graph(sparse.n + 2, list(sparse.edges) + [(sparse.n, sparse.n + 1)])
    rep = nabla_k(big, 1, SearchConfig(budget=1000))
    assert verify_witness(big, rep.pattern, rep.spec, rep.witness) == []


def test_workers_agree():
    g = Graph(9, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 2), (6, 7), (7, 8), (8, 6), (1, 6)])
    for f in (nabla_k, nabla_induced_k, nabla_exact_k):
        assert f(g, 2, SearchConfig(workers=1)).value == f(g, 2, SearchConfig(workers=2)).value


def test_trend_examples():
    cycles = family_trend([cycle(n) for n in (4, 6, 8, 10)], 1)
    assert [v for _, v in cycles.points] == [2, 2, 2, 2] and cycles.slope == 0
    cliques = family_trend([complete(n) for n in range(2, 6)], 0)
    assert [v for _, v in cliques.points] == [1, 2, 3, 4]
    assert math.isclose(cliques.slope, CLIQUE_TREND_SLOPE, rel_tol=1e-12)
    assert cliques.hint.startswith("growing")
    empty = family_trend([Graph(n, []) for n in (2, 3, 4)], 0)
    assert empty.slope == 0 and all(v == 0 for _, v in empty.points)


def test_trend_needs_three_sizes():
    with pytest.raises(InvalidInput):
        family_trend([cycle(4), cycle(5)], 1)
    with pytest.raises(InvalidInput):
        family_trend([cycle(4), cycle(4), cycle(5)], 1)


def test_fit_trend_on_power_law():
    pts = [(n, Fraction(n * n)) for n in (2, 4, 8, 16)]
    assert math.isclose(fit_trend(pts), 2.0)
