from __future__ import annotations

from topograd.bounds import bexp_bound_table, nd_bound_function
from topograd.density import density_profile, family_trend
from topograd.generators import complete, cycle
from topograd.plotting import plot_bounds, plot_profile, plot_trend


def test_profile_figure(tmp_path):
    out = plot_profile(density_profile(complete(4), 2), tmp_path / "p.png", title="K4")
    assert out.stat().st_size > 1000


def test_trend_figure(tmp_path):
    trend = family_trend([complete(n) for n in range(2, 6)], 0)
    assert plot_trend(trend, tmp_path / "t.png").exists()
    flat = family_trend([cycle(n) for n in (4, 5, 6)], 1)
    assert plot_trend(flat, tmp_path / "f.svg").exists()


def test_bounds_figure_handles_huge_values(tmp_path):
    assert plot_bounds(bexp_bound_table({0: 1, 1: 1, 2: 1}, 2), tmp_path / "b.png").exists()
    assert plot_bounds(nd_bound_function(lambda k, n: n, 1, [2, 3]), tmp_path / "nd.pdf").exists()
