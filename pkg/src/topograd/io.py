"""Edge-list files and the versioned JSON schemas.

Edge-list format: the first non-comment line is the vertex count, every
following line is ``u v``. ``#`` starts a comment, blank lines are ignored.
Large numbers in JSON are decimal strings so they survive any JSON reader.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from .bounds import BoundTable
from .density import ProfileRow
from .errors import InvalidInput, ParseError
from .graph import Graph
from .subdivision import SubdivisionSpec, SubdivisionWitness

WITNESS_SCHEMA = "topograd.witness/1"
BOUNDS_SCHEMA = "topograd.bound_table/1"
TREND_SCHEMA = "topograd.trend/1"


def parse_edge_list(text: str) -> Graph:
    n = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            numbers = [int(x) for x in fields]
        except ValueError:
            raise ParseError(lineno, f"expected integers, got {line!r}") from None
        if n is None:
            if len(numbers) != 1 or numbers[0] < 0:
                raise ParseError(lineno, "first line must be a non-negative vertex count")
            n = numbers[0]
            continue
        if len(numbers) != 2:
            raise ParseError(lineno, "edge lines hold exactly two vertex ids")
        u, v = numbers
        if u == v:
            raise ParseError(lineno, f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"vertex out of range 0..{n - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(lineno, f"duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        edges.append(key)
    if n is None:
        raise ParseError(0, "missing vertex count")
    return Graph(n, edges)


def serialize_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_graph(path: str | os.PathLike) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


# -- witnesses ----------------------------------------------------------------


def witness_to_dict(h: Graph, w: SubdivisionWitness, spec: SubdivisionSpec) -> dict:
    return {
        "schema": WITNESS_SCHEMA,
        "pattern_vertices": h.n,
        "spec": spec.to_dict(),
        **w.to_dict(),
    }


def witness_from_dict(data: dict) -> tuple[Graph, SubdivisionWitness, SubdivisionSpec]:
    if data.get("schema") != WITNESS_SCHEMA:
        raise InvalidInput(f"unsupported witness schema {data.get('schema')!r}")
    try:
        w = SubdivisionWitness.from_dict(data)
        h = Graph(int(data["pattern_vertices"]), [tuple(e) for e in data["pattern_edges"]])
        spec = SubdivisionSpec.from_dict(data["spec"])
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed witness JSON: {exc}") from None
    return h, w, spec


# -- bound tables -------------------------------------------------------------


def bound_table_to_dict(table: BoundTable) -> dict:
    return {"schema": BOUNDS_SCHEMA, **table.to_dict()}


def bound_table_from_dict(data: dict) -> BoundTable:
    if data.get("schema") != BOUNDS_SCHEMA:
        raise InvalidInput(f"unsupported bound table schema {data.get('schema')!r}")
    return BoundTable.from_dict(data)


# -- density profiles ---------------------------------------------------------


def profile_to_csv(rows: list[ProfileRow]) -> str:
    """One row per depth; an inexact value (search budget ran out) is a
    lower bound and is written as ``>=value``."""
    if not rows:
        return "k\n"
    measures = list(rows[0].values)
    out = [",".join(["k", *measures])]
    for row in rows:
        cells = [str(row.k)]
        for m in measures:
            v = row.values[m]
            text = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
            cells.append(text if row.exact[m] else ">=" + text)
        out.append(",".join(cells))
    return "\n".join(out) + "\n"
