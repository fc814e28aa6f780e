"""Exact shallow topological densities.

Three measures are computed for a depth ``k``:

* ``nabla``          - patterns whose (<=k)-subdivision is a subgraph,
* ``nabla_induced``  - patterns whose (<=k)-subdivision is an induced subgraph,
* ``nabla_exact``    - patterns whose k-subdivision is an induced subgraph.

The search enumerates branch sets ``B`` and, for each, packs host paths
between pairs of ``B`` so as to maximize the number of realized pattern
edges. A branch set of size ``b`` with ``e`` forced/free direct edges and at
most ``f`` host vertices outside it can realize at most ``e + min(pairs, f)``
pattern edges, which is the prune.
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .errors import InvalidInput
from .graph import Graph, max_average_degree
from .subdivision import SearchConfig, SubdivisionSpec, SubdivisionWitness, verify_witness

NABLA = "nabla"
NABLA_INDUCED = "nabla_induced"
NABLA_EXACT = "nabla_exact"
MEASURES = (NABLA, NABLA_INDUCED, NABLA_EXACT)


def measure_spec(measure: str, k: int) -> SubdivisionSpec:
    if measure == NABLA:
        return SubdivisionSpec.at_most(k)
    if measure == NABLA_INDUCED:
        return SubdivisionSpec.at_most(k, induced=True)
    if measure == NABLA_EXACT:
        return SubdivisionSpec.exactly(k, induced=True)
    raise InvalidInput(f"unknown measure {measure!r}")


@dataclass(frozen=True)
class DensityReport:
    k: int
    measure: str
    value: Fraction
    pattern: Graph
    witness: SubdivisionWitness
    exact: bool = True

    @property
    def spec(self) -> SubdivisionSpec:
        return measure_spec(self.measure, self.k)


@dataclass(frozen=True)
class _Candidate:
    u: int
    v: int
    path: tuple[int, ...]
    bad: int       # branch sets meeting this mask cannot use the path
    interior: int
    block: int     # vertices a later interior must avoid


@dataclass
class _Structure:
    value: Fraction
    branch: tuple[int, ...]
    paths: list[tuple[int, ...]] = field(default_factory=list)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@lru_cache(maxsize=256)
def _candidates(g: Graph, k: int, measure: str) -> dict[tuple[int, int], tuple[_Candidate, ...]]:
    """Host paths with 1..k internal vertices (exactly k for ``nabla_exact``)
    between non-adjacent vertex pairs, one per interior set."""
    induced = measure != NABLA
    lo = k if measure == NABLA_EXACT else 1
    found: dict[tuple[int, int], dict[int, tuple[int, ...]]] = {}
    if k == 0:
        return {}

    def walk(path: list[int], mask: int) -> None:
        u = path[-1]
        interior = len(path) - 1
        if interior >= lo:
            a = path[0]
            for b in g.adj[u]:
                if b > a and not (mask >> b & 1) and not g.has_edge(a, b):
                    full = path + [b]
                    if induced and not _is_induced_path(g, full):
                        continue
                    imask = mask & ~(1 << a)
                    found.setdefault((a, b), {}).setdefault(imask, tuple(full))
        if interior + 1 > k:
            return
        for x in sorted(g.adj[u]):
            if not (mask >> x & 1):
                path.append(x)
                walk(path, mask | 1 << x)
                path.pop()

    for a in range(g.n):
        for x in sorted(g.adj[a]):
            walk([a, x], 1 << a | 1 << x)

    out: dict[tuple[int, int], tuple[_Candidate, ...]] = {}
    for (a, b), by_mask in sorted(found.items()):
        masks = sorted(by_mask, key=lambda m: (bin(m).count("1"), m))
        if not induced:
            # a superset interior is never better than its subset
            kept: list[int] = []
            for m in masks:
                if not any(km & m == km for km in kept):
                    kept.append(m)
            masks = kept
        cands = []
        for m in masks:
            nbhd = 0
            for x in _bits(m):
                nbhd |= g.masks[x]
            ends = 1 << a | 1 << b
            if induced:
                bad = m | (nbhd & ~ends)
                block = m | nbhd
            else:
                bad = m
                block = m
            cands.append(_Candidate(a, b, by_mask[m], bad, m, block))
        out[(a, b)] = tuple(cands)
    return out


def _is_induced_path(g: Graph, path: list[int]) -> bool:
    for i, x in enumerate(path):
        for y in path[i + 2:]:
            if g.has_edge(x, y):
                return False
    return True


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0
        self.exhausted = False

    def tick(self) -> bool:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            self.exhausted = True
        return self.exhausted


def _pack(groups: list[tuple[_Candidate, ...]], need: int, induced: bool, budget: _Budget):
    """Largest set of mutually compatible candidates, one per group, if it
    has at least ``need`` members; else ``None``."""
    best: list | None = None
    best_count = need - 1
    chosen: list[_Candidate] = []
    n = len(groups)

    def dfs(i: int, used: int) -> None:
        nonlocal best, best_count
        if budget.tick():
            return
        if len(chosen) + (n - i) <= best_count:
            return
        if i == n:
            best = list(chosen)
            best_count = len(chosen)
            return
        for c in groups[i]:
            if c.interior & used:
                continue
            chosen.append(c)
            dfs(i + 1, used | (c.block if induced else c.interior))
            chosen.pop()
            if budget.exhausted:
                return
        dfs(i + 1, used)

    dfs(0, 0)
    return best


def _search_masks(g: Graph, k: int, measure: str, masks: Sequence[int], start: _Structure, limit: int | None):
    cands = _candidates(g, k, measure)
    induced = measure != NABLA
    exact_mode = measure == NABLA_EXACT and k > 0
    budget = _Budget(limit)
    best = start
    ceiling = _upper_bound(g, k)
    min_interior = k if exact_mode else 1
    full = (1 << g.n) - 1
    for mask in masks:
        if best.value >= ceiling:
            return best, True
        if budget.tick():
            break
        branch = _bits(mask)
        b = len(branch)
        if b < 2:
            continue
        direct = [(u, v) for u, v in combinations(branch, 2) if g.has_edge(u, v)]
        if exact_mode and direct:
            continue
        free = bin(full & ~mask).count("1") // min_interior if k > 0 else 0
        open_pairs = [(u, v) for u, v in combinations(branch, 2) if (u, v) in cands and not g.has_edge(u, v)]
        ub = len(direct) + min(len(open_pairs), free)
        if Fraction(2 * ub, b) <= best.value:
            continue
        groups = []
        for pair in open_pairs:
            usable = tuple(c for c in cands[pair] if not c.bad & mask)
            if usable:
                groups.append(usable)
        if Fraction(2 * (len(direct) + min(len(groups), free)), b) <= best.value:
            continue
        groups.sort(key=len)
        need = math.floor(best.value * b / 2) - len(direct) + 1
        packed = _pack(groups, max(need, 0), induced, budget)
        if packed is None:
            continue
        value = Fraction(2 * (len(direct) + len(packed)), b)
        if value > best.value:
            best = _Structure(value, tuple(branch), [(u, v) for u, v in direct] + [c.path for c in packed])
    return best, not budget.exhausted


def _upper_bound(g: Graph, k: int) -> Fraction:
    """A (<=k)-subdivision of H with b branch vertices, e edges and I interior
    vertices is a subgraph, so 2(e+I) <= mad(G)(b+I) with I <= ke."""
    m = max_average_degree(g)[0]
    ub = Fraction(max(g.n - 1, 0))
    slack = 2 - k * max(m - 2, 0)
    if slack > 0:
        ub = min(ub, 2 * m / slack)
    return ub


def _run_chunk(args):
    g, k, measure, masks, start, limit = args
    return _search_masks(g, k, measure, masks, start, limit)


def _initial(g: Graph, measure: str, k: int) -> _Structure:
    if measure == NABLA_EXACT and k > 0:
        return _Structure(Fraction(0), (0,), [])
    value, chosen = max_average_degree(g)
    branch = tuple(sorted(chosen))
    inside = set(branch)
    return _Structure(value, branch, [e for e in g.sorted_edges() if e[0] in inside and e[1] in inside])


def _heuristic(g: Graph, k: int, measure: str, start: _Structure) -> _Structure:
    """Lower bound for large hosts: high-degree vertices as branch vertices,
    threads of degree-2 vertices as paths."""
    lo, hi = measure_spec(measure, k).interior_bounds(g.n)
    branch = [v for v in range(g.n) if g.degree(v) >= 3]
    bset = set(branch)
    paths: dict[tuple[int, int], tuple[int, ...]] = {}
    if lo == 0:
        for u, v in g.sorted_edges():
            if u in bset and v in bset:
                paths[(u, v)] = (u, v)
    for a in branch:
        for x in sorted(g.adj[a]):
            if x in bset:
                continue
            path = [a, x]
            while path[-1] not in bset and g.degree(path[-1]) == 2:
                nxt = [w for w in g.adj[path[-1]] if w != path[-2]]
                if not nxt or nxt[0] in path:
                    break
                path.append(nxt[0])
            end = path[-1]
            if end in bset and end != a and lo <= len(path) - 2 <= hi:
                key = (min(a, end), max(a, end))
                if key not in paths:
                    paths[key] = tuple(path) if a < end else tuple(reversed(path))
    if len(branch) < 2:
        return start
    structure = _Structure(Fraction(2 * len(paths), len(branch)), tuple(branch), list(paths.values()))
    report = _to_report(g, k, measure, structure, exact=False)
    if report.value > start.value and not verify_witness(g, report.pattern, report.spec, report.witness):
        return structure
    return start


def _to_report(g: Graph, k: int, measure: str, s: _Structure, exact: bool) -> DensityReport:
    index = {v: i for i, v in enumerate(s.branch)}
    edges = {}
    for path in s.paths:
        a, b = index[path[0]], index[path[-1]]
        if a > b:
            a, b, path = b, a, tuple(reversed(path))
        edges[(a, b)] = path
    pattern = Graph(len(s.branch), edges.keys())
    witness = SubdivisionWitness(s.branch, edges)
    return DensityReport(k, measure, s.value, pattern, witness, exact)


def _measure(g: Graph, k: int, measure: str, config: SearchConfig | None) -> DensityReport:
    if k < 0:
        raise InvalidInput("depth k must be non-negative")
    if g.n == 0:
        raise InvalidInput("density of the empty graph is undefined")
    config = config or SearchConfig()
    start = _initial(g, measure, k)
    small = g.n <= config.exhaustive_bound
    if not small:
        if k == 0:
            # an induced subgraph on a densest set realizes the subgraph optimum
            return _to_report(g, k, measure, start, exact=True)
        start = _heuristic(g, k, measure, start)
        if start.value >= _upper_bound(g, k):
            return _to_report(g, k, measure, start, exact=True)
    limit = None if small else config.budget
    masks = range(1, 1 << g.n)
    if config.workers > 1 and small and g.n >= 8:
        size = -(-len(masks) // config.workers)
        chunks = [masks[i:i + size] for i in range(0, len(masks), size)]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_chunk, [(g, k, measure, c, start, limit) for c in chunks]))
        best, complete = start, True
        for found, done in results:
            complete = complete and done
            if found.value > best.value:
                best = found
    else:
        best, complete = _search_masks(g, k, measure, masks, start, limit)
    return _to_report(g, k, measure, best, exact=complete)


def nabla_k(g: Graph, k: int, config: SearchConfig | None = None) -> DensityReport:
    """Max average degree of a pattern with a (<=k)-subdivision in ``g``."""
    if k == 0:
        if g.n == 0:
            raise InvalidInput("density of the empty graph is undefined")
        return _to_report(g, 0, NABLA, _initial(g, NABLA, 0), exact=True)
    return _measure(g, k, NABLA, config)


def nabla_induced_k(g: Graph, k: int, config: SearchConfig | None = None) -> DensityReport:
    return _measure(g, k, NABLA_INDUCED, config)


def nabla_exact_k(g: Graph, k: int, config: SearchConfig | None = None) -> DensityReport:
    return _measure(g, k, NABLA_EXACT, config)


MEASURE_FUNCS = {NABLA: nabla_k, NABLA_INDUCED: nabla_induced_k, NABLA_EXACT: nabla_exact_k}


@dataclass(frozen=True)
class ProfileRow:
    k: int
    values: dict[str, Fraction]
    exact: dict[str, bool]


def density_profile(
    g: Graph, k_max: int, measures: Sequence[str] = MEASURES, config: SearchConfig | None = None
) -> list[ProfileRow]:
    if k_max < 0:
        raise InvalidInput("k_max must be non-negative")
    rows = []
    for k in range(k_max + 1):
        reports = {m: MEASURE_FUNCS[m](g, k, config) for m in measures}
        rows.append(ProfileRow(k, {m: r.value for m, r in reports.items()}, {m: r.exact for m, r in reports.items()}))
    return rows


# -- trends ------------------------------------------------------------------


@dataclass(frozen=True)
class TrendEstimate:
    k: int
    measure: str
    points: tuple[tuple[int, Fraction], ...]
    slope: float
    hint: str

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "measure": self.measure,
            "points": [[n, str(v)] for n, v in self.points],
            "slope": self.slope,
            "hint": self.hint,
        }


FLAT_SLOPE = 0.1


def fit_trend(points: Sequence[tuple[int, Fraction]]) -> float:
    """Least-squares slope of log(value) against log(n) over points with value >= 1."""
    usable = [(math.log(n), math.log(v)) for n, v in points if v >= 1]
    if len(usable) < 2 or len({x for x, _ in usable}) < 2:
        return 0.0
    xs, ys = zip(*usable)
    return statistics.linear_regression(xs, ys).slope


def family_trend(
    family: Sequence[Graph], k: int, measure: str = NABLA, config: SearchConfig | None = None
) -> TrendEstimate:
    """Log-log growth of a density measure across a graph family.

    A slope near zero at the sampled sizes is what a nowhere-dense class
    looks like; this is a finite-sample indication only, never a proof.
    """
    sizes = {g.n for g in family}
    if len(family) < 3 or len(sizes) < 3:
        raise InvalidInput("need at least three family members of distinct sizes")
    points = tuple(sorted((g.n, MEASURE_FUNCS[measure](g, k, config).value) for g in family))
    slope = fit_trend(points)
    hint = "flat: consistent with nowhere-dense growth" if slope <= FLAT_SLOPE else "growing: polynomial-looking growth"
    return TrendEstimate(k, measure, points, slope, hint)
