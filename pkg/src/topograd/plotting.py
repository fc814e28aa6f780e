"""Figures for the report path of the CLI: density profiles, family trends
and bound tables. Rendering is file-only (Agg backend)."""

from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bounds import BoundTable  # noqa: E402
from .density import MEASURES, ProfileRow, TrendEstimate  # noqa: E402

GOLDEN = (math.sqrt(5) - 1) / 2
STYLE = {
    "axes.labelsize": 9,
    "font.size": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
}
MARKERS = {"nabla": "o", "nabla_induced": "s", "nabla_exact": "^"}


def figsize(width: float = 5.0) -> tuple[float, float]:
    return width, width * GOLDEN


def _log2(x: Fraction) -> float:
    # exact-enough for huge rationals; float(x) would overflow past ~2^1024
    x = Fraction(x)
    return math.log2(x.numerator) - math.log2(x.denominator)


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_profile(rows: Sequence[ProfileRow], path: str | Path, title: str | None = None) -> Path:
    """Density measure against depth; hollow markers are lower bounds."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=figsize())
        measures = [m for m in MEASURES if rows and m in rows[0].values]
        for m in measures:
            ks = [r.k for r in rows]
            vs = [float(r.values[m]) for r in rows]
            ax.plot(ks, vs, marker=MARKERS[m], label=m, lw=1)
            loose = [(r.k, float(r.values[m])) for r in rows if not r.exact[m]]
            if loose:
                ax.scatter(*zip(*loose), facecolors="none", edgecolors="k", s=60, zorder=3)
        ax.set_xlabel("depth k")
        ax.set_ylabel("average degree")
        ax.set_xticks([r.k for r in rows])
        ax.legend(frameon=False)
        if title:
            ax.set_title(title)
        return _save(fig, path)


def plot_trend(trend: TrendEstimate, path: str | Path) -> Path:
    """Log-log scatter of a family's density with the fitted slope."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=figsize())
        pts = [(n, float(v)) for n, v in trend.points if v > 0]
        if pts:
            ns, vs = zip(*pts)
            ax.scatter(ns, vs, s=14)
            usable = [(n, v) for n, v in pts if v >= 1]
            if usable:
                # anchor the fitted line at the geometric mean of the usable points
                gx = math.exp(sum(math.log(n) for n, _ in usable) / len(usable))
                gy = math.exp(sum(math.log(v) for _, v in usable) / len(usable))
                xs = [min(ns), max(ns)]
                ax.plot(xs, [gy * (x / gx) ** trend.slope for x in xs], "k--", lw=1,
                        label=f"slope {trend.slope:.3f}")
                ax.legend(frameon=False)
            ax.set_xscale("log")
            ax.set_yscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel(f"{trend.measure} (k={trend.k})")
        ax.set_title(trend.hint)
        return _save(fig, path)


def plot_bounds(table: BoundTable, path: str | Path) -> Path:
    """log2 of each bound-table entry; one line per n for two-argument tables."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=figsize())
        series: dict[int | None, list[tuple[int, float]]] = {}
        for row in table.rows:
            k, n = (row.key[0], None) if len(row.key) == 1 else row.key
            if row.value > 0:
                series.setdefault(n, []).append((k, _log2(row.value)))
        for n, pts in sorted(series.items(), key=lambda kv: (kv[0] is None, kv[0] or 0)):
            ks, vs = zip(*pts)
            ax.plot(ks, vs, marker="o", lw=1, label=None if n is None else f"n={n}")
        if any(n is not None for n in series):
            ax.legend(frameon=False)
        ax.set_xlabel("k")
        ax.set_ylabel("log2 g")
        ax.set_title(f"{table.kind} bound table")
        return _save(fig, path)
