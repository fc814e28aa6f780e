"""Clique and biclique detection, Ramsey refinement of bicliques, and the
forbidden-pattern membership check."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidInput, SearchExhausted
from .graph import Graph, is_independent
from .subdivision import SearchConfig, SubdivisionSpec, find_subdivision

# diagonal Ramsey numbers R(t, t) known exactly
KNOWN_RAMSEY = {1: 1, 2: 2, 3: 6, 4: 18}


def _is_clique(g: Graph, vertices) -> bool:
    return all(g.has_edge(u, v) for u, v in combinations(vertices, 2))


def find_clique_induced(g: Graph, s: int) -> frozenset[int] | None:
    """An ``s``-clique (cliques are always induced), smallest in lexicographic order."""
    if s < 1:
        raise InvalidInput("clique size must be positive")

    def extend(clique: list[int], cands: list[int]):
        if len(clique) == s:
            return clique
        for i, v in enumerate(cands):
            if len(clique) + len(cands) - i < s:
                return None
            found = extend(clique + [v], [w for w in cands[i + 1:] if g.has_edge(v, w)])
            if found:
                return found
        return None

    found = extend([], [v for v in range(g.n) if g.degree(v) >= s - 1])
    return frozenset(found) if found else None


def _bicliques(g: Graph, s: int, induced: bool):
    if s < 1:
        raise InvalidInput("biclique side size must be positive")
    for left in combinations(range(g.n), s):
        if induced and not is_independent(g, left):
            continue
        common = set(range(g.n))
        for v in left:
            common &= g.adj[v]
        # canonical: the left side holds the smallest vertex
        common = sorted(v for v in common if v > left[0])
        for right in combinations(common, s):
            if induced and not is_independent(g, right):
                continue
            yield frozenset(left), frozenset(right)


def find_biclique_subgraph(g: Graph, s: int) -> tuple[frozenset[int], frozenset[int]] | None:
    """Disjoint ``s``-sets with every cross pair adjacent (edges inside a side allowed)."""
    return next(_bicliques(g, s, induced=False), None)


def find_biclique_induced(g: Graph, s: int) -> tuple[frozenset[int], frozenset[int]] | None:
    """An induced ``K_{s,s}``: both sides independent, all cross pairs adjacent."""
    return next(_bicliques(g, s, induced=True), None)


@dataclass(frozen=True)
class RamseyOutcome:
    """Exactly one of ``clique``/``biclique`` is set, unless ``required_s``
    reports that the biclique was too small to guarantee either."""

    clique: frozenset[int] | None = None
    biclique: tuple[frozenset[int], frozenset[int]] | None = None
    required_s: int | None = None

    @property
    def insufficient(self) -> bool:
        return self.required_s is not None


def _clique_or_independent(g: Graph, side: list[int], t: int):
    for c in combinations(side, t):
        if _is_clique(g, c):
            return "clique", frozenset(c)
    for c in combinations(side, t):
        if is_independent(g, c):
            return "independent", frozenset(c)
    return None, None


def ramsey_refine_biclique(
    g: Graph,
    sides: tuple,
    t: int,
    threshold: int | None = None,
) -> RamseyOutcome:
    """Turn a ``K_{s,s}`` subgraph into an induced ``K_t`` or induced ``K_{t,t}``.

    Each side of size at least R(t, t) holds a t-clique or an independent
    t-set; two independent t-sets on opposite sides span an induced
    ``K_{t,t}``. Only exactly known R(t, t) are used unless the caller passes
    ``threshold``.
    """
    left, right = sorted(sides[0]), sorted(sides[1])
    if t < 1:
        raise InvalidInput("t must be positive")
    if len(left) != len(right) or set(left) & set(right):
        raise InvalidInput("biclique sides must be disjoint and of equal size")
    if any(not 0 <= v < g.n for v in left + right):
        raise InvalidInput("biclique vertex out of range")
    if any(not g.has_edge(u, v) for u in left for v in right):
        raise InvalidInput("sides do not span a complete bipartite subgraph")
    need = threshold if threshold is not None else KNOWN_RAMSEY.get(t)
    if need is None:
        raise InvalidInput(f"R({t},{t}) is not known exactly; pass an explicit threshold")
    s = len(left)
    if s < need:
        return RamseyOutcome(required_s=need)
    picks = []
    for side in (left, right):
        kind, found = _clique_or_independent(g, side, t)
        if kind == "clique":
            return RamseyOutcome(clique=found)
        if kind is None:
            raise SearchExhausted(f"side of size {s} has neither K_{t} nor an independent {t}-set; threshold {need} is wrong")
        picks.append(found)
    return RamseyOutcome(biclique=(picks[0], picks[1]))


@dataclass(frozen=True)
class ForbiddenReport:
    has_Ks: bool
    has_Kss_subgraph: bool
    has_Kss_induced: bool
    has_induced_H_subdivision: bool

    @property
    def in_class(self) -> bool:
        """Free of ``K_s``, induced ``K_{s,s}`` and induced subdivisions of ``H``."""
        return not (self.has_Ks or self.has_Kss_induced or self.has_induced_H_subdivision)

    def to_dict(self) -> dict:
        return {
            "has_Ks": self.has_Ks,
            "has_Kss_subgraph": self.has_Kss_subgraph,
            "has_Kss_induced": self.has_Kss_induced,
            "has_induced_H_subdivision": self.has_induced_H_subdivision,
            "in_class": self.in_class,
        }


def forbidden_pattern_check(g: Graph, h: Graph, s: int, config: SearchConfig | None = None) -> ForbiddenReport:
    has_ks = find_clique_induced(g, s) is not None
    kss_sub = find_biclique_subgraph(g, s) is not None
    kss_ind = kss_sub and find_biclique_induced(g, s) is not None
    sub = find_subdivision(g, h, SubdivisionSpec.unbounded(induced=True), config) is not None
    return ForbiddenReport(has_ks, kss_sub, kss_ind, sub)
