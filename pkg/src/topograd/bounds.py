"""Exact bound calculus: the per-depth increment constant and the
recurrences that turn bounds on exact-depth induced densities into bounds on
shallow-subdivision densities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import InvalidInput
from .graph import Graph

MIN_R = 2**25


def raised_r(r: int, k: int, s: int) -> int:
    """Smallest admissible r for the strict constant: max(r, 2^25, s+1, ceil(sk/2))."""
    return max(r, MIN_R, s + 1, -(-s * k // 2))


def d_constant(r: int, k: int, s: int, relaxed: bool = False) -> Fraction:
    """``r^11 (sk+1) / 2^6``, with ``r`` first raised to the admissible range
    unless ``relaxed``."""
    if min(r, k, s) < 1:
        raise InvalidInput("r, k and s must be positive integers")
    if not relaxed:
        r = raised_r(r, k, s)
    return Fraction(r**11 * (s * k + 1), 2**6)


def format_number(x) -> str:
    """Lossless decimal text for ints and Fractions (``"p"`` or ``"p/q"``)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_number(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class BoundRow:
    key: tuple[int, ...]
    value: Fraction
    provenance: str


@dataclass
class BoundTable:
    kind: str
    rows: list[BoundRow] = field(default_factory=list)

    def value(self, *key: int) -> Fraction:
        for row in self.rows:
            if row.key == key:
                return row.value
        raise KeyError(key)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "rows": [
                {"key": list(r.key), "value": format_number(r.value), "provenance": r.provenance}
                for r in self.rows
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> BoundTable:
        return cls(
            data["kind"],
            [BoundRow(tuple(r["key"]), parse_number(r["value"]), r["provenance"]) for r in data["rows"]],
        )


def _positive_int(x, what: str) -> int:
    if Fraction(x).denominator != 1 or x < 0:
        raise InvalidInput(f"{what} must be a non-negative integer, got {x}")
    return int(x)


def bexp_bound_table(f: Mapping[int, int] | Callable[[int], int], k_max: int) -> BoundTable:
    """g(0) = f(0); g(k) = g(k-1) + d(f(k)+1, k, f(0))."""
    get = f if callable(f) else f.__getitem__
    if k_max < 0:
        raise InvalidInput("k_max must be non-negative")
    s = _positive_int(get(0), "f(0)")
    if s < 1:
        raise InvalidInput("f(0) is used as s and must be at least 1")
    table = BoundTable("bexp")
    g = Fraction(s)
    table.rows.append(BoundRow((0,), g, "g(0)=f(0)"))
    for k in range(1, k_max + 1):
        r = _positive_int(get(k), f"f({k})") + 1
        g = g + d_constant(r, k, s)
        table.rows.append(BoundRow((k,), g, f"g({k})=g({k - 1})+d(r={r},k={k},s={s})"))
    return table


def nd_bound_function(
    f: Mapping[tuple[int, int], int] | Callable[[int, int], int],
    k_max: int,
    sizes: Iterable[int],
) -> BoundTable:
    """g(0,n) = f(0,n); g(k,n) = g(k-1,n) + d(f(k,n)+1, k, f(0,n)).

    ``f`` is first replaced by its running maximum over the sorted sizes so
    it is non-decreasing in ``n``.
    """
    get = f if callable(f) else (lambda k, n: f[(k, n)])
    sizes = sorted(set(sizes))
    table = BoundTable("nd")
    running = {k: 0 for k in range(k_max + 1)}
    for n in sizes:
        for k in range(k_max + 1):
            running[k] = max(running[k], _positive_int(get(k, n), f"f({k},{n})"))
        s = running[0]
        if s < 1:
            raise InvalidInput("f(0, n) is used as s and must be at least 1")
        g = Fraction(s)
        table.rows.append(BoundRow((0, n), g, f"g(0,{n})=f(0,{n})"))
        for k in range(1, k_max + 1):
            r = running[k] + 1
            g = g + d_constant(r, k, s)
            table.rows.append(BoundRow((k, n), g, f"g({k},{n})=g({k - 1},{n})+d(r={r},k={k},s={s})"))
    return table


def main1_bound_f(h: Graph, s: int, c: Fraction | int, d: int, k_max: int = 3) -> dict[int, int]:
    """f(0) = d and f(k) = ceil(c n^2) for k >= 1, with n = |V(H)|.

    ``c`` and ``d`` are caller parameters; no numeric value is implied for
    either. ``f`` is integer valued, hence the ceiling.
    """
    c = Fraction(c)
    if c <= 0:
        raise InvalidInput("c must be positive")
    if d < 1 or Fraction(d).denominator != 1:
        raise InvalidInput("d must be a positive integer")
    if s < 1:
        raise InvalidInput("s must be positive")
    n = h.n
    top = math.ceil(c * n * n)
    return {k: (int(d) if k == 0 else top) for k in range(k_max + 1)}
