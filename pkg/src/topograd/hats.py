"""Hats over a bipartition and the two searches built on them.

A hat is a 3-vertex path whose midpoint lies in ``A`` and whose ends lie in
``B``. Only edges crossing the bipartition count when hats are formed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import InvalidInput, PreconditionFailed, SearchExhausted
from .graph import BipartiteLayout, Graph, greedy_coloring, induced_subgraph, is_independent, max_average_degree, num_colors
from .subdivision import SearchConfig, SubdivisionSpec, SubdivisionWitness, verify_witness

log = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Hat:
    midpoint: int
    endpoints: tuple[int, int]

    def __init__(self, midpoint: int, endpoints: Iterable[int]):
        a, b = sorted(endpoints)
        if a == b:
            raise InvalidInput("hat endpoints must be distinct")
        object.__setattr__(self, "midpoint", midpoint)
        object.__setattr__(self, "endpoints", (a, b))


@dataclass(frozen=True)
class HatSet:
    hats: tuple[Hat, ...]
    layout: BipartiteLayout
    uncrowded: bool
    induced: bool

    def __len__(self) -> int:
        return len(self.hats)


def _side_neighbors(g: Graph, v: int, side: frozenset[int]) -> frozenset[int]:
    return g.adj[v] & side


def hat_flags(g: Graph, layout: BipartiteLayout, hats: Iterable[Hat]) -> tuple[bool, bool]:
    hats = list(hats)
    mids = [h.midpoint for h in hats]
    pairs = [h.endpoints for h in hats]
    uncrowded = len(set(mids)) == len(mids) and len(set(pairs)) == len(pairs)
    induced = all(len(_side_neighbors(g, m, layout.right)) == 2 for m in mids)
    return uncrowded, induced


def make_hatset(g: Graph, layout: BipartiteLayout, hats: Iterable[Hat]) -> HatSet:
    hats = tuple(sorted(hats))
    for h in hats:
        if h.midpoint not in layout.left or not set(h.endpoints) <= layout.right:
            raise InvalidInput(f"{h} does not sit over the bipartition")
        if not all(g.has_edge(h.midpoint, e) for e in h.endpoints):
            raise InvalidInput(f"{h} is not a path in the graph")
    uncrowded, induced = hat_flags(g, layout, hats)
    return HatSet(hats, layout, uncrowded, induced)


def enumerate_hats(g: Graph, layout: BipartiteLayout) -> list[Hat]:
    layout.check(g)
    out = []
    for a in sorted(layout.left):
        ends = sorted(_side_neighbors(g, a, layout.right))
        out.extend(Hat(a, pair) for pair in combinations(ends, 2))
    return out


def max_uncrowded_hatset(g: Graph, layout: BipartiteLayout) -> HatSet:
    """Maximum uncrowded hat set, as a maximum matching between midpoints
    and endpoint pairs (augmenting paths, canonical order)."""
    hats = enumerate_hats(g, layout)
    by_mid: dict[int, list[tuple[int, int]]] = {}
    for h in hats:
        by_mid.setdefault(h.midpoint, []).append(h.endpoints)
    owner: dict[tuple[int, int], int] = {}

    def augment(a: int, seen: set) -> bool:
        for pair in by_mid[a]:
            if pair in seen:
                continue
            seen.add(pair)
            if pair not in owner or augment(owner[pair], seen):
                owner[pair] = a
                return True
        return False

    for a in sorted(by_mid):
        augment(a, set())
    return make_hatset(g, layout, [Hat(a, pair) for pair, a in owner.items()])


def induced_uncrowded_count(g: Graph, left: Iterable[int], right: frozenset[int]) -> int:
    """Size of the largest induced uncrowded hat set using midpoints in ``left``."""
    pairs = set()
    for a in left:
        nb = _side_neighbors(g, a, right)
        if len(nb) == 2:
            pairs.add(tuple(sorted(nb)))
    return len(pairs)


# -- induced uncrowded hats --------------------------------------------------


@dataclass(frozen=True)
class InducedHats:
    """An induced subgraph (in host vertex ids) whose hats form an induced
    uncrowded set."""

    vertices: frozenset[int]
    layout: BipartiteLayout
    hats: HatSet
    threshold: Fraction
    via: str

    def graph(self, g: Graph) -> Graph:
        return induced_subgraph(g, self.vertices)


def _clean(g: Graph, left: set[int], right: frozenset[int], designated) -> set[int]:
    left = set(left)
    while True:
        worst = None
        for a in sorted(left):
            nb = _side_neighbors(g, a, right)
            bad = len(nb) > 2 or (designated is not None and len(nb) == 2 and tuple(sorted(nb)) != designated.get(a))
            if bad and (worst is None or len(nb) > worst[0]):
                worst = (len(nb), a)
        if worst is None:
            break
        left.discard(worst[1])
    seen = set()
    for a in sorted(left):
        nb = _side_neighbors(g, a, right)
        if len(nb) == 2:
            pair = tuple(sorted(nb))
            if pair in seen:
                left.discard(a)
            seen.add(pair)
    return left


def _check_induced_output(g: Graph, left, right, threshold) -> HatSet:
    right = frozenset(right)
    layout = BipartiteLayout(left, right)
    hats, crowded = [], []
    for a in sorted(left):
        nb = _side_neighbors(g, a, right)
        if len(nb) == 2:
            hats.append(Hat(a, nb))
        elif len(nb) > 2:
            crowded.append(a)
    hatset = make_hatset(g, layout, hats)
    if not right or crowded or not hatset.uncrowded or not hatset.induced or len(hatset) < threshold * len(right):
        raise AssertionError("induced hat search produced an output that fails its contract")
    return hatset


def induce_hats_search(
    g: Graph,
    layout: BipartiteLayout,
    r: Fraction | int,
    relaxed: bool = False,
    threshold: Fraction | None = None,
    input_threshold: Fraction | None = None,
    designated: Mapping[int, tuple[int, int]] | None = None,
    config: SearchConfig | None = None,
) -> InducedHats:
    """Find an induced subgraph in which all hats are induced and uncrowded,
    with at least ``threshold * |B'|`` of them.

    Strict mode enforces the hypotheses (A-degrees at most 4r and an
    uncrowded set of ``r^11/2^8 * |B|`` hats) and the output ratio
    ``r^9/2^15``. Relaxed mode takes ``threshold`` (and optionally
    ``input_threshold``) from the caller. ``designated`` restricts each
    midpoint to one allowed endpoint pair.
    """
    config = config or SearchConfig()
    if not layout.right:
        raise PreconditionFailed("B is empty", stage="induce_hats")
    layout.check(g, bipartite=True)
    r = Fraction(r)
    if r <= 0:
        raise InvalidInput("r must be positive")
    left, right = layout.left, layout.right
    if not relaxed:
        if r.denominator != 1:
            raise PreconditionFailed("r must be an integer in strict mode", stage="induce_hats")
        input_threshold = r**11 / 2**8
        threshold = r**9 / 2**15
    elif threshold is None:
        threshold = r**9 / 2**15
    over = [a for a in sorted(left) if g.degree(a) > 4 * r]
    if over:
        raise PreconditionFailed(f"A-vertices {over} have degree above 4r", stage="induce_hats")
    if input_threshold is not None:
        have = len(max_uncrowded_hatset(g, layout))
        if have < input_threshold * len(right):
            raise PreconditionFailed(
                f"uncrowded hat count {have} below {input_threshold} * |B| = {input_threshold * len(right)}",
                stage="induce_hats",
            )

    kept = _clean(g, set(left), right, designated)
    count = induced_uncrowded_count(g, kept, right)
    if count >= threshold * len(right) and count > 0:
        hatset = _check_induced_output(g, kept, right, threshold)
        return InducedHats(frozenset(kept | right), hatset.layout, hatset, threshold, "cleaning")

    if len(right) > config.exhaustive_bound:
        log.warning("induced hat search gave up: |B|=%d above exhaustive bound", len(right))
        raise SearchExhausted("cleaning fell short and |B| is above the exhaustive bound", stage="induce_hats",
                              instance=(g, layout, threshold))
    rights = sorted(right)
    best = None
    for mask in range(1, 1 << len(rights)):
        sub = frozenset(v for i, v in enumerate(rights) if mask >> i & 1)
        chosen: dict[tuple[int, int], int] = {}
        for a in sorted(left):
            nb = _side_neighbors(g, a, sub)
            if len(nb) != 2:
                continue
            pair = tuple(sorted(nb))
            if designated is not None and designated.get(a) != pair:
                continue
            chosen.setdefault(pair, a)
        ratio = Fraction(len(chosen), len(sub))
        if best is None or ratio > best[0]:
            best = (ratio, sub, frozenset(chosen.values()))
    ratio, sub, mids = best
    if not mids or ratio < threshold:
        log.warning("induced hat search exhausted: best ratio %s below threshold %s; instance n=%d edges=%s layout=%s",
                    ratio, threshold, g.n, g.sorted_edges(), (sorted(left), sorted(right)))
        raise SearchExhausted(f"best induced hat ratio {ratio} is below {threshold}", stage="induce_hats",
                              instance=(g, layout, threshold))
    hatset = _check_induced_output(g, mids, sub, threshold)
    return InducedHats(frozenset(mids | sub), hatset.layout, hatset, threshold, "exhaustive")


# -- branch vertices on one side --------------------------------------------


@dataclass(frozen=True)
class BranchResult:
    pattern: Graph
    witness: SubdivisionWitness
    average_degree: Fraction
    branch: tuple[int, ...]


def fix_branch_search(
    g: Graph,
    partition: tuple[Iterable[int], Iterable[int]],
    r: Fraction | int,
    relaxed: bool = False,
    target: Fraction | None = None,
    hat_threshold: Fraction | None = None,
    config: SearchConfig | None = None,
) -> BranchResult:
    """Find an induced 1-subdivision with branch vertices in ``B`` and
    subdivision vertices in ``A`` whose pattern has average degree at least
    ``target`` (``r`` in strict mode)."""
    config = config or SearchConfig()
    left, right = frozenset(partition[0]), frozenset(partition[1])
    if left & right or (left | right) != frozenset(range(g.n)):
        raise InvalidInput("(A, B) must partition the vertex set")
    r = Fraction(r)
    if r <= 0:
        raise InvalidInput("r must be positive")
    if not is_independent(g, left):
        raise PreconditionFailed("A is not an independent set", stage="fix_branch")
    gb = induced_subgraph(g, right)
    if not relaxed:
        if r.denominator != 1 or r < 2**25:
            raise PreconditionFailed("strict mode needs an integer r >= 2^25", stage="fix_branch")
        target = r
        hat_threshold = r**9 / 2**15
        if gb.n and num_colors(greedy_coloring(gb)) > r:
            raise PreconditionFailed("greedy coloring of G[B] uses more than r colors", stage="fix_branch")
        if gb.n and max_average_degree(gb)[0] > r**3:
            raise PreconditionFailed("G[B] is denser than r^3", stage="fix_branch")
    elif target is None:
        target = r
    if hat_threshold is not None:
        have = induced_uncrowded_count(g, left, right)
        if have < hat_threshold * len(right):
            raise PreconditionFailed(f"only {have} induced uncrowded hats over (A, B)", stage="fix_branch")

    rights = sorted(right)
    if len(rights) > config.exhaustive_bound:
        masks = [(1 << len(rights)) - 1]
    else:
        masks = range(1, 1 << len(rights))
    best = None
    for mask in masks:
        branch = [v for i, v in enumerate(rights) if mask >> i & 1]
        if not is_independent(g, branch):
            continue
        bset = frozenset(branch)
        mids: dict[tuple[int, int], int] = {}
        for a in sorted(left):
            nb = g.adj[a] & bset
            if len(nb) == 2:
                mids.setdefault(tuple(sorted(nb)), a)
        value = Fraction(2 * len(mids), len(branch))
        if best is None or value > best[0]:
            best = (value, branch, mids)
    if best is None or best[0] < target:
        got = None if best is None else best[0]
        log.warning("branch search exhausted: best %s below target %s; n=%d edges=%s", got, target, g.n, g.sorted_edges())
        raise SearchExhausted(f"no induced 1-subdivision with average degree >= {target} (best {got})", stage="fix_branch",
                              instance=(g, (left, right), target))
    value, branch, mids = best
    index = {v: i for i, v in enumerate(branch)}
    paths = {(index[x], index[y]): (x, a, y) for (x, y), a in mids.items()}
    pattern = Graph(len(branch), paths.keys())
    witness = SubdivisionWitness(branch, paths)
    problems = verify_witness(g, pattern, SubdivisionSpec.exactly(1, induced=True), witness)
    if problems:
        raise AssertionError(f"branch search produced an invalid witness: {problems}")
    return BranchResult(pattern, witness, value, tuple(branch))
