"""Subdivision occurrences: specs, witnesses, verification and search.

A witness maps every pattern vertex to a distinct host vertex (its branch
vertex) and every pattern edge to a host path joining the two branch
vertices. Paths may only meet at their ends, and their interiors avoid the
branch vertices. In induced mode the host must have no edges among the used
vertices besides the path edges.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .errors import BudgetExceeded, InvalidInput
from .graph import Graph

AT_MOST = "at_most"
EXACTLY = "exactly"
UNBOUNDED = "unbounded"
SUBGRAPH = "subgraph"
INDUCED = "induced"


@dataclass(frozen=True)
class SubdivisionSpec:
    depth_mode: str = AT_MOST
    occurrence: str = SUBGRAPH
    k: int | None = 0

    def __post_init__(self):
        if self.depth_mode not in (AT_MOST, EXACTLY, UNBOUNDED):
            raise InvalidInput(f"unknown depth mode {self.depth_mode!r}")
        if self.occurrence not in (SUBGRAPH, INDUCED):
            raise InvalidInput(f"unknown occurrence {self.occurrence!r}")
        if self.depth_mode == UNBOUNDED:
            object.__setattr__(self, "k", None)
        elif self.k is None or self.k < 0:
            raise InvalidInput("depth k must be a non-negative integer")

    @classmethod
    def at_most(cls, k: int, induced: bool = False) -> SubdivisionSpec:
        return cls(AT_MOST, INDUCED if induced else SUBGRAPH, k)

    @classmethod
    def exactly(cls, k: int, induced: bool = False) -> SubdivisionSpec:
        return cls(EXACTLY, INDUCED if induced else SUBGRAPH, k)

    @classmethod
    def unbounded(cls, induced: bool = False) -> SubdivisionSpec:
        return cls(UNBOUNDED, INDUCED if induced else SUBGRAPH, None)

    @property
    def induced(self) -> bool:
        return self.occurrence == INDUCED

    def interior_bounds(self, host_n: int) -> tuple[int, int]:
        """Allowed (min, max) number of internal vertices per path."""
        if self.depth_mode == AT_MOST:
            return 0, self.k
        if self.depth_mode == EXACTLY:
            return self.k, self.k
        return 0, host_n

    def to_dict(self) -> dict:
        return {"depth_mode": self.depth_mode, "occurrence": self.occurrence, "k": self.k}

    @classmethod
    def from_dict(cls, data: dict) -> SubdivisionSpec:
        return cls(data["depth_mode"], data["occurrence"], data.get("k"))


@dataclass(frozen=True)
class SubdivisionWitness:
    """``branch_map[h]`` is the host vertex of pattern vertex ``h``;
    ``paths[(a, b)]`` (with ``a < b``) is the host path from ``branch_map[a]``
    to ``branch_map[b]``."""

    branch_map: tuple[int, ...]
    paths: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]

    def __init__(self, branch_map, paths):
        object.__setattr__(self, "branch_map", tuple(int(v) for v in branch_map))
        items = paths.items() if hasattr(paths, "items") else paths
        norm = []
        for (a, b), path in items:
            path = tuple(int(v) for v in path)
            if a > b:
                a, b, path = b, a, path[::-1]
            norm.append(((int(a), int(b)), path))
        object.__setattr__(self, "paths", tuple(sorted(norm)))

    def path_map(self) -> dict[tuple[int, int], tuple[int, ...]]:
        return dict(self.paths)

    def used_vertices(self) -> set[int]:
        used = set(self.branch_map)
        for _, path in self.paths:
            used.update(path)
        return used

    def to_dict(self) -> dict:
        return {
            "branch_map": list(self.branch_map),
            "pattern_edges": [list(e) for e, _ in self.paths],
            "paths": [list(p) for _, p in self.paths],
        }

    @classmethod
    def from_dict(cls, data: dict) -> SubdivisionWitness:
        edges = [tuple(e) for e in data["pattern_edges"]]
        return cls(data["branch_map"], list(zip(edges, data["paths"])))


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str = ""


def verify_witness(g: Graph, h: Graph, spec: SubdivisionSpec, w: SubdivisionWitness) -> list[Violation]:
    """Every clause of the witness definition that ``w`` breaks (empty = valid)."""
    out: list[Violation] = []
    bmap = w.branch_map
    if len(bmap) != h.n:
        out.append(Violation("PatternMismatch", f"branch map has {len(bmap)} entries, pattern has {h.n} vertices"))
        return out
    bad_range = [v for v in bmap if not 0 <= v < g.n]
    if bad_range:
        out.append(Violation("OutOfRange", f"branch vertices {bad_range}"))
        return out
    if len(set(bmap)) != len(bmap):
        out.append(Violation("NotInjective", "two pattern vertices share a branch vertex"))
    paths = w.path_map()
    missing = sorted(h.edges - paths.keys())
    extra = sorted(paths.keys() - h.edges)
    if missing:
        out.append(Violation("MissingPath", f"pattern edges without a path: {missing}"))
    if extra:
        out.append(Violation("ExtraPath", f"paths for non-edges: {extra}"))

    lo, hi = spec.interior_bounds(g.n)
    branch_set = set(bmap)
    owner: dict[int, tuple[int, int]] = {}
    overlaps = []
    for (a, b), path in w.paths:
        if any(not 0 <= v < g.n for v in path):
            out.append(Violation("OutOfRange", f"path {path} leaves the host"))
            continue
        if len(path) < 2 or {path[0], path[-1]} != {bmap[a], bmap[b]} or path[0] != bmap[a]:
            out.append(Violation("BadEndpoints", f"path for {(a, b)} is {path}"))
        if len(set(path)) != len(path):
            out.append(Violation("NotSimple", f"path for {(a, b)} repeats a vertex"))
        if any(not g.has_edge(x, y) for x, y in zip(path, path[1:])):
            out.append(Violation("NotAPath", f"path for {(a, b)} uses a non-edge"))
        interior = path[1:-1]
        if any(v in branch_set for v in interior):
            out.append(Violation("InternalHitsBranch", f"path for {(a, b)} passes through a branch vertex"))
        for v in interior:
            if v in owner and owner[v] != (a, b):
                overlaps.append((owner[v], (a, b), v))
            owner.setdefault(v, (a, b))
        if spec.depth_mode == EXACTLY and len(interior) != spec.k:
            out.append(Violation("DepthMismatch", f"path for {(a, b)} has {len(interior)} internal vertices, need {spec.k}"))
        elif len(interior) > hi:
            out.append(Violation("DepthExceeded", f"path for {(a, b)} has {len(interior)} internal vertices, limit {hi}"))
    for first, second, v in overlaps:
        out.append(Violation("InternalOverlap", f"paths {first} and {second} share vertex {v}"))

    if spec.induced:
        used = w.used_vertices()
        allowed = set()
        for _, path in w.paths:
            for x, y in zip(path, path[1:]):
                allowed.add((min(x, y), max(x, y)))
        for u, v in sorted(g.edges):
            if u in used and v in used and (u, v) not in allowed:
                out.append(Violation("ExtraEdge", f"host edge ({u}, {v}) among used vertices is not a path edge"))
    return out


# -- search ----------------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    """Searches on hosts with at most ``exhaustive_bound`` vertices always run
    to completion; above it they stop after ``budget`` search nodes."""

    exhaustive_bound: int = 12
    budget: int = 2_000_000
    workers: int = 1

    def __post_init__(self):
        if self.budget <= 0 or self.exhaustive_bound < 0 or self.workers < 1:
            raise InvalidInput("search budgets must be positive")


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("TOPOGRAD_WORKERS", "1")))
    except ValueError:
        return 1


class _Search:
    def __init__(self, g: Graph, h: Graph, spec: SubdivisionSpec, config: SearchConfig):
        self.g = g
        self.h = h
        self.spec = spec
        self.lo, self.hi = spec.interior_bounds(g.n)
        self.limit = None if g.n <= config.exhaustive_bound else config.budget
        self.nodes = 0
        self.order = self._vertex_order()
        # pattern edges in the order their second endpoint gets placed
        pos = {v: i for i, v in enumerate(self.order)}
        self.edge_order = sorted(h.edges, key=lambda e: (max(pos[e[0]], pos[e[1]]), min(pos[e[0]], pos[e[1]])))
        self.symmetric = h.m in (0, h.n * (h.n - 1) // 2)

    def _vertex_order(self) -> list[int]:
        h = self.h
        connected = [v for v in range(h.n) if h.degree(v) > 0]
        order: list[int] = []
        rest = set(connected)
        while rest:
            v = max(sorted(rest), key=lambda x: (sum(1 for w in h.adj[x] if w in order), h.degree(x)))
            order.append(v)
            rest.discard(v)
        return order + [v for v in range(h.n) if h.degree(v) == 0]

    def tick(self):
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExceeded(f"search exceeded budget of {self.limit} nodes")

    def branch_candidates(self, idx: int, bmap: dict[int, int]) -> Iterator[int]:
        g, h, spec = self.g, self.h, self.spec
        hv = self.order[idx]
        used = set(bmap.values())
        start = 0
        if self.symmetric and idx > 0:
            start = bmap[self.order[idx - 1]] + 1
        for c in range(start, g.n):
            if c in used or g.degree(c) < h.degree(hv):
                continue
            ok = True
            for hw, gw in bmap.items():
                adjacent = g.has_edge(c, gw)
                if hw in h.adj[hv]:
                    if adjacent and spec.induced and self.lo > 0:
                        ok = False
                    elif not adjacent and self.hi == 0:
                        ok = False
                elif adjacent and spec.induced:
                    ok = False
                if not ok:
                    break
            if ok:
                yield c

    def run(self, first_choices: list[int] | None = None) -> SubdivisionWitness | None:
        n_connected = sum(1 for v in range(self.h.n) if self.h.degree(v) > 0)
        return self._assign(0, {}, n_connected, first_choices)

    def _assign(self, idx, bmap, n_connected, first_choices=None):
        if idx == n_connected:
            return self._route(0, bmap, set(), {}, n_connected)
        cands = self.branch_candidates(idx, bmap)
        if idx == 0 and first_choices is not None:
            cands = [c for c in cands if c in first_choices]
        for c in cands:
            self.tick()
            bmap[self.order[idx]] = c
            found = self._assign(idx + 1, bmap, n_connected)
            del bmap[self.order[idx]]
            if found is not None:
                return found
        return None

    def _blocked(self, x: int, ends: tuple[int, int], used: set[int]) -> bool:
        """Induced mode: may ``x`` be a path interior vertex between ``ends``?"""
        return any(w in used and w not in ends for w in self.g.adj[x])

    def _reachable(self, a: int, b: int, used: set[int]) -> bool:
        """Cheap necessary condition: a path within the length bound exists."""
        g = self.g
        if g.has_edge(a, b) and self.lo == 0:
            return True
        frontier = {a}
        seen = {a} | used
        for _ in range(self.hi):
            nxt = set()
            for u in frontier:
                for w in g.adj[u]:
                    if w == b and u != a:
                        return True
                    if w not in seen and not (self.spec.induced and self._blocked(w, (a, b), used)):
                        seen.add(w)
                        nxt.add(w)
            if not nxt:
                break
            frontier = nxt
        return any(b in g.adj[u] for u in frontier if u != a)

    def paths_between(self, a: int, b: int, used: set[int]) -> list[tuple[int, ...]]:
        """Candidate paths from ``a`` to ``b``, one per interior vertex set."""
        g, lo, hi, induced = self.g, self.lo, self.hi, self.spec.induced
        adjacent = g.has_edge(a, b)
        if adjacent and (induced or lo == 0):
            return [(a, b)] if lo == 0 else []
        found: dict[frozenset, tuple[int, ...]] = {}
        path = [a]
        on_path = {a}

        def extend(u: int) -> None:
            interior = len(path) - 1
            if interior >= lo and u != a and b in g.adj[u]:
                key = frozenset(path[1:])
                if key not in found:
                    found[key] = tuple(path) + (b,)
            if interior >= hi:
                return
            for x in sorted(g.adj[u]):
                if x in on_path or x in used or x == b:
                    continue
                if induced:
                    # x may touch only its predecessor, and b if it ends the path
                    if self._blocked(x, (a, b), used):
                        continue
                    if any(y in g.adj[x] for y in path[:-1]):
                        continue
                    if a in g.adj[x] and interior > 0:
                        continue
                    if b in g.adj[x]:
                        if interior + 1 >= lo:
                            found.setdefault(frozenset(path[1:]) | {x}, tuple(path) + (x, b))
                        continue
                path.append(x)
                on_path.add(x)
                extend(x)
                path.pop()
                on_path.discard(x)

        extend(a)
        return sorted(found.values(), key=lambda p: (len(p), p))

    def _route(self, ei, bmap, used, chosen, n_connected):
        if ei == len(self.edge_order):
            return self._place_isolated(n_connected, bmap, used, chosen)
        ha, hb = self.edge_order[ei]
        a, b = bmap[ha], bmap[hb]
        occupied = used | set(bmap.values())
        for path in self.paths_between(a, b, occupied):
            self.tick()
            interior = set(path[1:-1])
            new_used = used | interior
            new_occupied = occupied | interior
            if all(
                self._reachable(bmap[x], bmap[y], new_occupied)
                for x, y in self.edge_order[ei + 1:]
            ):
                chosen[(ha, hb)] = path
                found = self._route(ei + 1, bmap, new_used, chosen, n_connected)
                if found is not None:
                    return found
                del chosen[(ha, hb)]
        return None

    def _place_isolated(self, idx, bmap, used, chosen):
        if idx == self.h.n:
            return SubdivisionWitness([bmap[v] for v in range(self.h.n)], dict(chosen))
        occupied = used | set(bmap.values())
        hv = self.order[idx]
        start = 0
        if self.symmetric and idx > 0 and self.h.m == 0:
            start = bmap[self.order[idx - 1]] + 1
        for c in range(start, self.g.n):
            if c in occupied:
                continue
            if self.spec.induced and any(w in occupied for w in self.g.adj[c]):
                continue
            self.tick()
            bmap[hv] = c
            found = self._place_isolated(idx + 1, bmap, used, chosen)
            del bmap[hv]
            if found is not None:
                return found
        return None


def _run_prefix(args):
    g, h, spec, config, prefix = args
    return _Search(g, h, spec, config).run(prefix)


def find_subdivision(
    g: Graph,
    h: Graph,
    spec: SubdivisionSpec,
    config: SearchConfig | None = None,
) -> SubdivisionWitness | None:
    """Find a subdivision of ``h`` in ``g`` under ``spec``, or ``None``.

    Branch vertices are tried in increasing host order, so the answer is
    reproducible. With ``config.workers > 1`` the candidates for the first
    pattern vertex are split across processes and the earliest hit wins,
    which gives the same witness as the sequential search.
    """
    config = config or SearchConfig()
    if h.n > g.n:
        return None
    search = _Search(g, h, spec, config)
    if config.workers <= 1 or h.n == 0 or not search.order:
        return search.run()
    firsts = list(search.branch_candidates(0, {}))
    jobs = [(g, h, spec, config, [c]) for c in firsts]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        for result in pool.map(_run_prefix, jobs):
            if result is not None:
                return result
    return None


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def find_clique_subdivision(g: Graph, n: int, config: SearchConfig | None = None) -> SubdivisionWitness | None:
    """A subdivision of ``K_n`` as a subgraph of ``g`` with paths of any length."""
    if n < 1:
        raise InvalidInput("clique order must be positive")
    return find_subdivision(g, complete_graph(n), SubdivisionSpec.unbounded(), config)
