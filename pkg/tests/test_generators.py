from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topograd.cliques import forbidden_pattern_check
from topograd.errors import BudgetExceeded, InvalidInput
from topograd.generators import (
    biclique,
    complete,
    cycle,
    filtered_family,
    path,
    petersen,
    planted,
    random_bipartite,
    random_gnp,
    subdivision,
)
from topograd.subdivision import SubdivisionSpec, find_clique_subdivision, verify_witness


def test_basic_families():
    assert complete(5).m == 10
    assert biclique(2, 3).m == 6
    assert cycle(7).m == 7 and path(4).m == 3
    assert petersen().m == 15 and all(petersen().degree(v) == 3 for v in range(10))
    with pytest.raises(InvalidInput):
        cycle(2)


def test_subdivision_examples():
    g, _ = subdivision(complete(3), [1, 1, 1])
    # a connected 2-regular graph on 6 vertices is C_6
    assert g.n == 6 and g.m == 6 and all(g.degree(v) == 2 for v in range(6))
    assert find_clique_subdivision(g, 3) is not None
    g, w = subdivision(complete(4), 1)
    assert (g.n, g.m) == (10, 12)
    assert verify_witness(g, complete(4), SubdivisionSpec.exactly(1, induced=True), w) == []
    with pytest.raises(InvalidInput):
        subdivision(complete(3), [1, 1])


def test_random_generators_are_seeded():
    a = random_gnp(9, 0.4, random.Random(5))
    b = random_gnp(9, 0.4, random.Random(5))
    assert a == b
    bip = random_bipartite(3, 4, 1.0, random.Random(0))
    assert bip == biclique(3, 4)


@given(st.integers(0, 3), st.integers(0, 4), st.booleans(), st.integers(0, 10**6))
def test_planted_witness_verifies(k, noise, exact, seed):
    rng = random.Random(seed)
    h = random_gnp(5, 0.6, rng)
    pl = planted(h, k, noise, 0.4, rng, exact=exact)
    spec = SubdivisionSpec.exactly(k) if exact else SubdivisionSpec.at_most(k)
    assert verify_witness(pl.graph, h, spec, pl.witness) == []


def test_filtered_family_members_are_in_class():
    fam = filtered_family(complete(4), 3, 7, 5, seed=1)
    assert len(fam) == 5
    for g in fam:
        rep = forbidden_pattern_check(g, complete(4), 3)
        assert not (rep.has_Ks or rep.has_Kss_induced or rep.has_induced_H_subdivision)
    assert fam == filtered_family(complete(4), 3, 7, 5, seed=1)


def test_filtered_family_gives_up():
    with pytest.raises(BudgetExceeded) as info:
        filtered_family(complete(3), 2, 6, 3, seed=0, p=1.0, max_attempts=20)
    assert info.value.best == []
