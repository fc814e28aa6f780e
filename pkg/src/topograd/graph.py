"""Immutable simple graphs and exact elementary quantities.

Vertices are the integers ``0..n-1``. Densities are returned as
:class:`fractions.Fraction`; nothing in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import DegenerateInput, InvalidInput
from .flow import FlowNetwork


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Equality and hashing use only ``(n, edges)``; labels ride along.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[tuple[int, str], ...] = field(default=(), compare=False)
    adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable = (), labels: Mapping[int, str] | None = None):
        if n < 0:
            raise InvalidInput(f"vertex count must be non-negative, got {n}")
        normalized = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InvalidInput(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge ({u}, {v}) out of range for n={n}")
            key = _norm(u, v)
            if key in normalized:
                raise InvalidInput(f"parallel edge ({u}, {v})")
            normalized.add(key)
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in normalized:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(normalized))
        object.__setattr__(self, "labels", tuple(sorted((labels or {}).items())))
        object.__setattr__(self, "adj", tuple(frozenset(a) for a in adj))
        object.__setattr__(self, "masks", tuple(sum(1 << w for w in a) for a in adj))

    # -- basic queries -----------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def label_map(self) -> dict[int, str]:
        return dict(self.labels)

    def edges_within(self, vertices: Iterable[int]) -> int:
        s = set(vertices)
        return sum(1 for u, v in self.edges if u in s and v in s)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class BipartiteLayout:
    left: frozenset[int]
    right: frozenset[int]

    def __init__(self, left: Iterable[int], right: Iterable[int]):
        object.__setattr__(self, "left", frozenset(left))
        object.__setattr__(self, "right", frozenset(right))
        if self.left & self.right:
            raise InvalidInput("layout sides intersect")

    def check(self, g: Graph, *, bipartite: bool = False) -> None:
        for v in self.left | self.right:
            if not 0 <= v < g.n:
                raise InvalidInput(f"layout vertex {v} out of range")
        if bipartite:
            for u, v in g.edges:
                if not ((u in self.left and v in self.right) or (u in self.right and v in self.left)):
                    raise InvalidInput(f"edge ({u}, {v}) does not cross the bipartition")


# -- densities -------------------------------------------------------------


def average_degree(g: Graph) -> Fraction:
    if g.n == 0:
        raise DegenerateInput("average degree of the empty graph is undefined")
    return Fraction(2 * g.m, g.n)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabelled ``0..|S|-1`` in sorted order.

    Original vertex ids survive as labels (or the original label if one
    was set).
    """
    order = sorted(set(vertices))
    for v in order:
        if not 0 <= v < g.n:
            raise InvalidInput(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(order)}
    old_labels = g.label_map()
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    labels = {i: old_labels.get(v, str(v)) for v, i in index.items()}
    return Graph(len(order), edges, labels)


def _closure(g: Graph, p: int, q: int, maximal: bool) -> tuple[int, set[int]]:
    """Maximize ``q*e(S) - p*|S|`` over vertex sets via a project-selection cut."""
    m = g.m
    source, sink = 0, 1 + m + g.n
    net = FlowNetwork(m + g.n + 2)
    for i, (u, v) in enumerate(g.sorted_edges()):
        node = 1 + i
        net.add_edge(source, node, q)
        net.add_edge(node, 1 + m + u, float("inf"))
        net.add_edge(node, 1 + m + v, float("inf"))
    for v in range(g.n):
        net.add_edge(1 + m + v, sink, p)
    cut = net.max_flow(source, sink)
    if maximal:
        side = set(range(m + g.n + 2)) - net.sink_side(sink)
    else:
        side = net.source_side(source)
    chosen = {x - 1 - m for x in side if 1 + m <= x < 1 + m + g.n}
    return q * m - cut, chosen


def max_average_degree(g: Graph) -> tuple[Fraction, frozenset[int]]:
    """Maximum average degree over nonempty vertex subsets, with a maximizer.

    Binary search on the edge density ``e(S)/|S|`` with a min-cut oracle.
    Distinct candidate densities differ by at least ``1/(n(n-1))``, which
    bounds the number of rounds. The returned set is the largest maximizer.
    """
    if g.n == 0:
        raise DegenerateInput("maximum average degree of the empty graph is undefined")
    if g.m == 0:
        return Fraction(0), frozenset(range(g.n))
    best = Fraction(g.m, g.n)
    lo, hi = best, Fraction(g.n - 1, 2)
    gap = Fraction(1, g.n * (g.n - 1))
    while hi - lo >= gap:
        mid = (lo + hi) / 2
        value, chosen = _closure(g, mid.numerator, mid.denominator, maximal=False)
        if value > 0:
            lo = Fraction(g.edges_within(chosen), len(chosen))
        else:
            hi = mid
    value, chosen = _closure(g, lo.numerator, lo.denominator, maximal=True)
    if not chosen:
        chosen = set(range(g.n))
    assert value == 0 and Fraction(g.edges_within(chosen), len(chosen)) == lo
    return 2 * lo, frozenset(chosen)


def max_average_degree_bruteforce(g: Graph) -> Fraction:
    """Subset-enumeration reference for :func:`max_average_degree` (small n only)."""
    if g.n == 0:
        raise DegenerateInput("maximum average degree of the empty graph is undefined")
    best = Fraction(0)
    for mask in range(1, 1 << g.n):
        size = bin(mask).count("1")
        inside = sum(1 for u, v in g.edges if mask >> u & 1 and mask >> v & 1)
        best = max(best, Fraction(2 * inside, size))
    return best


# -- orderings and colorings ----------------------------------------------


def degeneracy_order(g: Graph) -> tuple[list[int], int]:
    """Smallest-last ordering and the degeneracy; ties broken by vertex id."""
    deg = [g.degree(v) for v in range(g.n)]
    removed = [False] * g.n
    order: list[int] = []
    k = 0
    for _ in range(g.n):
        v = min((d, v) for v, d in enumerate(deg) if not removed[v])[1]
        k = max(k, deg[v])
        removed[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
    order.reverse()
    return order, k


def degeneracy(g: Graph) -> int:
    return degeneracy_order(g)[1]


def greedy_coloring(g: Graph) -> dict[int, int]:
    """Proper coloring along a degeneracy order; uses at most degeneracy+1 colors."""
    order, _ = degeneracy_order(g)
    color: dict[int, int] = {}
    for v in order:
        used = {color[w] for w in g.adj[v] if w in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return {v: color[v] for v in range(g.n)}


def num_colors(coloring: Mapping[int, int]) -> int:
    return len(set(coloring.values()))


def independent_set_from_coloring(g: Graph, coloring: Mapping[int, int] | None = None) -> frozenset[int]:
    """Largest color class of a proper coloring (smallest color index on ties)."""
    if g.n == 0:
        return frozenset()
    coloring = greedy_coloring(g) if coloring is None else coloring
    classes: dict[int, list[int]] = {}
    for v, c in coloring.items():
        classes.setdefault(c, []).append(v)
    best = max(sorted(classes), key=lambda c: len(classes[c]))
    return frozenset(classes[best])


def is_independent(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return not any(g.has_edge(u, v) for u, v in combinations(vs, 2))


def is_proper_coloring(g: Graph, coloring: Mapping[int, int]) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges)
