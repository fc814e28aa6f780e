from __future__ import annotations

import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from strategies import graphs
from topograd.density import nabla_exact_k
from topograd.errors import InvalidInput
from topograd.generators import complete, cycle, petersen, planted, random_gnp, subdivision
from topograd.graph import Graph, max_average_degree
from topograd.pipeline import (
    STAGES,
    PipelineParams,
    run_main1_pipeline,
    shortcut_path,
    verify_lemma_main1_inequality,
)
from topograd.subdivision import SearchConfig, SubdivisionSpec, SubdivisionWitness, verify_witness


@pytest.fixture(scope="module")
def sub_k10():
    return subdivision(complete(10), 1)


def test_params_validation():
    with pytest.raises(InvalidInput):
        PipelineParams(0, 1, 1)
    strict = PipelineParams(1, 1, 1)
    assert strict.r_eff == 2**25 and strict.d == 2**270
    assert PipelineParams(1, 1, 4, relaxed=True).d == Fraction(5, 64)


def test_shortcut_path_makes_induced_paths():
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
    assert shortcut_path(g, (0, 1, 2, 3, 4)) == (0, 1, 3, 4)
    assert shortcut_path(g, (0, 1)) == (0, 1)


def test_k10_runs_to_completion(sub_k10):
    g, w = sub_k10
    cert = run_main1_pipeline(g, PipelineParams(1, 1, 4, relaxed=True), (complete(10), w))
    assert cert.completed and cert.halted_at is None
    assert [s.stage for s in cert.stages] == list(STAGES)
    assert all(c.holds for s in cert.stages for c in s.checks)
    assert cert.stage("G1").artifacts["edges"] == []
    assert cert.stage("S").artifacts["size"] == 45
    assert cert.final_pattern == complete(10)
    assert verify_witness(g, cert.final_pattern, SubdivisionSpec.exactly(1, induced=True), cert.final_witness) == []
    assert json.loads(cert.to_json())["final"]["average_degree"] == "9"


def test_k10_seed_from_density_search(sub_k10):
    g, _ = sub_k10
    cert = run_main1_pipeline(g, PipelineParams(1, 1, 4, relaxed=True))
    assert cert.completed and cert.final_pattern == complete(10)


def test_c6_halts_at_first_stage():
    cert = run_main1_pipeline(cycle(6), PipelineParams(1, 3, 2, relaxed=True))
    assert cert.halted_at == "H1" and len(cert.stages) == 1
    failed = [c for c in cert.stages[0].checks if not c.holds]
    assert failed and failed[0].lhs == 2


@settings(max_examples=15)
@given(graphs(min_n=2, max_n=8))
def test_strict_mode_halts_on_small_graphs(g):
    if g.m == 0:
        return
    cert = run_main1_pipeline(g, PipelineParams(1, 1, max(1, math.ceil(max_average_degree(g)[0]))))
    assert cert.halted_at == "H1"


def test_invalid_seed_rejected():
    g = cycle(6)
    bad = SubdivisionWitness([0, 1, 2], {(0, 1): (0, 1), (1, 2): (1, 2), (0, 2): (0, 5, 4, 3, 2)})
    with pytest.raises(InvalidInput):
        run_main1_pipeline(g, PipelineParams(1, 1, 2, relaxed=True), (complete(3), bad))


def test_certificate_is_deterministic(sub_k10):
    g, w = sub_k10
    params = PipelineParams(1, 1, 4, relaxed=True)
    first = run_main1_pipeline(g, params, (complete(10), w)).to_json()
    again = run_main1_pipeline(g, params, (complete(10), w), SearchConfig(workers=2)).to_json()
    assert first == again


def test_stage_pass_flags_match_values():
    rng = random.Random(11)
    for _ in range(20):
        h = random_gnp(6, 0.8, rng)
        pl = planted(h, 1, 2, 0.3, rng)
        s = max(1, math.ceil(max_average_degree(pl.graph)[0]))
        cert = run_main1_pipeline(pl.graph, PipelineParams(1, 1, s, relaxed=True), (pl.pattern, pl.witness))
        for st in cert.stages:
            data = st.to_dict()
            assert data["passed"] == (st.error is None and all(c["holds"] for c in data["checks"] if c["required"]))
            for c in data["checks"]:
                lhs, rhs = Fraction(c["lhs"]), Fraction(c["rhs"])
                assert c["holds"] == {"<=": lhs <= rhs, "<": lhs < rhs, ">=": lhs >= rhs, "==": lhs == rhs}[c["op"]]


def test_inequality_examples(sub_k10):
    rep = verify_lemma_main1_inequality(petersen(), 1, 2**25, 3)
    assert rep.holds and rep.applicable and rep.rhs >= 2**270
    assert verify_lemma_main1_inequality(complete(4), 1, 2**25, 3).holds
    g, _ = sub_k10
    rep = verify_lemma_main1_inequality(g, 1, 1, 4, relaxed=True)
    assert rep.applicable is False and rep.nabla_exact == 9


def test_inequality_report_serializes_big_numbers():
    data = verify_lemma_main1_inequality(cycle(5), 1, 3, 2).to_dict()
    assert Fraction(data["rhs"]) > 2**270
    assert data["holds"] is True


@settings(max_examples=20)
@given(graphs(min_n=2, max_n=7))
def test_inequality_holds_under_hypotheses(g):
    s = max(1, math.ceil(max_average_degree(g)[0]))
    r = math.floor(nabla_exact_k(g, 1).value) + 1
    rep = verify_lemma_main1_inequality(g, 1, r, s)
    assert rep.applicable and rep.holds
