"""Graph generators: classic families, subdivisions, random graphs, planted
instances and rejection-sampled forbidden-pattern families."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .cliques import forbidden_pattern_check
from .errors import BudgetExceeded, InvalidInput
from .graph import Graph
from .subdivision import SearchConfig, SubdivisionWitness


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def biclique(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidInput("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def subdivision(h: Graph, lengths: int | Sequence[int]) -> tuple[Graph, SubdivisionWitness]:
    """Replace each edge of ``h`` (in sorted order) by a path with the given
    number of interior vertices. Branch vertices keep their ids."""
    edges = h.sorted_edges()
    if isinstance(lengths, int):
        lengths = [lengths] * len(edges)
    if len(lengths) != len(edges) or any(x < 0 for x in lengths):
        raise InvalidInput("need one non-negative length per pattern edge")
    out, paths, n = [], {}, h.n
    for (u, v), k in zip(edges, lengths):
        p = [u] + list(range(n, n + k)) + [v]
        n += k
        out.extend(zip(p, p[1:]))
        paths[(u, v)] = tuple(p)
    return Graph(n, out), SubdivisionWitness(list(range(h.n)), paths)


def random_gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_bipartite(a: int, b: int, p: float, rng: random.Random) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b) if rng.random() < p])


@dataclass(frozen=True)
class Planted:
    graph: Graph
    pattern: Graph
    witness: SubdivisionWitness
    k: int


def planted(h: Graph, k: int, noise_vertices: int, noise_p: float, rng: random.Random,
            exact: bool = True) -> Planted:
    """A (<=k)-subdivision of ``h`` (every path of length exactly k when
    ``exact``) plus ``noise_vertices`` extra vertices, each joined to every
    earlier vertex with probability ``noise_p``."""
    lengths = [k if exact else rng.randint(0, k) for _ in range(h.m)]
    g, w = subdivision(h, lengths)
    edges = set(g.edges)
    n = g.n
    for v in range(n, n + noise_vertices):
        edges.update((u, v) for u in range(v) if rng.random() < noise_p)
    return Planted(Graph(n + noise_vertices, edges), h, w, k)


def filtered_family(
    h: Graph, s: int, n: int, count: int, seed: int, p: float | None = None,
    max_attempts: int = 100_000, config: SearchConfig | None = None,
) -> list[Graph]:
    """``count`` random graphs on ``n`` vertices free of K_s, induced K_{s,s}
    and induced subdivisions of ``h`` (rejection sampling from G(n, p))."""
    rng = random.Random(seed)
    out: list[Graph] = []
    attempts = 0
    while len(out) < count:
        if attempts >= max_attempts:
            raise BudgetExceeded(f"only {len(out)} of {count} samples after {attempts} attempts", best=out)
        attempts += 1
        g = random_gnp(n, rng.random() if p is None else p, rng)
        if forbidden_pattern_check(g, h, s, config).in_class:
            out.append(g)
    return out
