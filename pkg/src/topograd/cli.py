"""Command-line interface.

Exit codes: 0 success, 1 error (JSON on stderr), 2 a negative but
well-formed answer (pipeline halted, witness rejected).
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import generators, io
from .bounds import bexp_bound_table, main1_bound_f, nd_bound_function
from .density import MEASURES, NABLA, NABLA_EXACT, NABLA_INDUCED, density_profile, family_trend
from .errors import InvalidInput, InvalidSpec, TopogradError
from .pipeline import PipelineParams, run_main1_pipeline
from .subdivision import (
    AT_MOST, EXACTLY, UNBOUNDED, SearchConfig, SubdivisionSpec, Violation, default_workers, find_subdivision,
    verify_witness,
)

log = logging.getLogger("topograd")

MEASURE_NAMES = {"nabla": NABLA, "induced": NABLA_INDUCED, "exact": NABLA_EXACT}
MODES = {"atmost": AT_MOST, "exact": EXACTLY, "unbounded": UNBOUNDED}


@dataclass(frozen=True)
class RunConfig:
    exhaustive_bound: int
    budget: int
    workers: int
    output: Path | None = None
    figure: Path | None = None

    def __post_init__(self):
        if self.budget < 1 or self.workers < 1 or self.exhaustive_bound < 0:
            raise InvalidInput("budget and workers must be positive")

    @classmethod
    def from_args(cls, args) -> RunConfig:
        return cls(args.exhaustive_bound, args.budget, args.workers,
                   getattr(args, "output", None), getattr(args, "figure", None))

    def search(self) -> SearchConfig:
        return SearchConfig(self.exhaustive_bound, self.budget, self.workers)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output:
        io.write_atomic(cfg.output, text)
    else:
        sys.stdout.write(text)


def _figure(cfg: RunConfig, draw, *args) -> None:
    if cfg.figure:
        from . import plotting

        getattr(plotting, draw)(*args, cfg.figure)


# -- subcommands ----------------------------------------------------------------


def cmd_density(args, cfg: RunConfig) -> int:
    g = io.read_graph(args.graph)
    measures = MEASURES if args.measure == "all" else (MEASURE_NAMES[args.measure],)
    rows = density_profile(g, args.kmax, measures, cfg.search())
    _emit(io.profile_to_csv(rows), cfg)
    _figure(cfg, "plot_profile", rows)
    return 0


def cmd_find(args, cfg: RunConfig) -> int:
    g, h = io.read_graph(args.graph), io.read_graph(args.pattern)
    mode = MODES[args.mode]
    if mode != UNBOUNDED and args.k is None:
        raise InvalidSpec("--k is required unless --mode unbounded")
    spec = SubdivisionSpec(mode, args.occurrence, None if mode == UNBOUNDED else args.k)
    w = find_subdivision(g, h, spec, cfg.search())
    _emit("none\n" if w is None else io.dumps(io.witness_to_dict(h, w, spec)), cfg)
    return 0


def cmd_pipeline(args, cfg: RunConfig) -> int:
    g = io.read_graph(args.graph)
    params = PipelineParams(args.k, args.r, args.s, relaxed=args.relaxed)
    seed = None
    if args.seed_pattern:
        h = io.read_graph(args.seed_pattern)
        w = find_subdivision(g, h, SubdivisionSpec.at_most(args.k), cfg.search())
        if w is None:
            raise InvalidInput("seed pattern has no (<=k)-subdivision in the graph")
        seed = (h, w)
    cert = run_main1_pipeline(g, params, seed, cfg.search())
    _emit(cert.to_json() + "\n", cfg)
    return 0 if cert.completed else 2


def _read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc})") from None


def _int_table(data, what: str) -> dict[int, int]:
    if isinstance(data, list):
        data = dict(enumerate(data))
    if not isinstance(data, dict):
        raise InvalidInput(f"{what} must be a JSON list or object")
    return {int(k): int(v) for k, v in data.items()}


def cmd_bounds(args, cfg: RunConfig) -> int:
    if args.mode == "bexp":
        f = _int_table(_read_json(args.f), "f")
        k_max = args.kmax if args.kmax is not None else max(f)
        missing = [k for k in range(k_max + 1) if k not in f]
        if missing:
            raise InvalidInput(f"f is missing values for k={missing}")
        table = bexp_bound_table(f, k_max)
    elif args.mode == "nd":
        # {"n": [f(0,n), f(1,n), ...], ...}
        raw = _read_json(args.f)
        if not isinstance(raw, dict):
            raise InvalidInput("nd mode expects an object mapping n to a list of f(k, n)")
        f = {(k, int(n)): int(v) for n, vals in raw.items() for k, v in enumerate(vals)}
        k_max = args.kmax if args.kmax is not None else min(len(v) for v in raw.values()) - 1
        table = nd_bound_function(f, k_max, sorted({n for _, n in f}))
    else:
        if args.pattern is None or args.c is None or args.d is None or args.s is None:
            raise InvalidInput("main1 mode needs --pattern, --s, --c and --d")
        h = io.read_graph(args.pattern)
        k_max = args.kmax if args.kmax is not None else 3
        f = main1_bound_f(h, args.s, Fraction(args.c), args.d, k_max)
        table = bexp_bound_table(f, k_max)
    _emit(io.dumps(io.bound_table_to_dict(table)), cfg)
    _figure(cfg, "plot_bounds", table)
    return 0


def cmd_gen(args, cfg: RunConfig) -> int:
    rng = random.Random(args.seed)
    kind = args.kind
    if kind == "family":
        h = io.read_graph(args.pattern)
        members = generators.filtered_family(h, args.s, args.n, args.count, args.seed, args.p,
                                             args.max_attempts, cfg.search())
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(members):
            io.write_atomic(out / f"n{args.n:03d}_{i:04d}.el", io.serialize_edge_list(g))
        return 0
    witness = None
    if kind == "complete":
        g = generators.complete(args.n)
    elif kind == "biclique":
        g = generators.biclique(args.a, args.b)
    elif kind == "cycle":
        g = generators.cycle(args.n)
    elif kind == "path":
        g = generators.path(args.n)
    elif kind == "petersen":
        g = generators.petersen()
    elif kind == "subdivision":
        h = io.read_graph(args.pattern)
        lengths = [int(x) for x in args.lengths.split(",")]
        g, w = generators.subdivision(h, lengths[0] if len(lengths) == 1 else lengths)
        witness = io.witness_to_dict(h, w, SubdivisionSpec.at_most(max(lengths, default=0)))
    elif kind == "gnp":
        g = generators.random_gnp(args.n, args.p, rng)
    elif kind == "bipartite":
        g = generators.random_bipartite(args.a, args.b, args.p, rng)
    else:  # planted
        h = io.read_graph(args.pattern)
        pl = generators.planted(h, args.k, args.noise_vertices, args.noise_p, rng, exact=not args.at_most)
        g = pl.graph
        spec = SubdivisionSpec.at_most(args.k) if args.at_most else SubdivisionSpec.exactly(args.k)
        witness = io.witness_to_dict(h, pl.witness, spec)
    text = io.serialize_edge_list(g)
    if args.output:
        io.write_atomic(args.output, text)
        if witness is not None:
            io.write_atomic(Path(str(args.output) + ".witness.json"), io.dumps(witness))
    else:
        sys.stdout.write(text)
    return 0


def cmd_trend(args, cfg: RunConfig) -> int:
    files = sorted(Path(args.family).glob("*.el"))
    family = [io.read_graph(p) for p in files]
    trend = family_trend(family, args.k, MEASURE_NAMES[args.measure], cfg.search())
    _emit(io.dumps({"schema": io.TREND_SCHEMA, **trend.to_dict()}), cfg)
    _figure(cfg, "plot_trend", trend)
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    g, h = io.read_graph(args.graph), io.read_graph(args.pattern)
    data = _read_json(args.witness)
    wh, w, spec = io.witness_from_dict(data)
    problems = verify_witness(g, h, spec, w)
    if wh != h:
        problems.insert(0, Violation("PatternMismatch", "witness pattern edges differ from the pattern file"))
    _emit(io.dumps([{"code": p.code, "detail": p.detail} for p in problems]), cfg)
    return 0 if not problems else 2


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=default_workers(),
                        help="worker processes (default: $TOPOGRAD_WORKERS or 1)")
    common.add_argument("--budget", type=int, default=SearchConfig.budget,
                        help="search steps allowed on hosts above the exhaustive bound")
    common.add_argument("--exhaustive-bound", type=int, default=SearchConfig.exhaustive_bound,
                        help="hosts up to this many vertices are searched exhaustively")
    common.add_argument("-o", "--output", type=Path, help="write the primary output here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="topograd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", parents=[common], help="density profile as CSV")
    p.add_argument("graph", type=Path)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--measure", choices=["all", *MEASURE_NAMES], default="all")
    p.add_argument("--figure", type=Path, help="also render the profile to this image file")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("find", parents=[common], help="find a subdivision of a pattern")
    p.add_argument("graph", type=Path)
    p.add_argument("--pattern", type=Path, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--mode", choices=list(MODES), default="atmost")
    p.add_argument("--occurrence", choices=["subgraph", "induced"], default="subgraph")
    p.set_defaults(func=cmd_find)

    p = sub.add_parser("pipeline", parents=[common], help="run the certified construction")
    p.add_argument("graph", type=Path)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--relaxed", action="store_true", help="use r as given and the small thresholds")
    p.add_argument("--seed-pattern", type=Path)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("bounds", parents=[common], help="exact bound tables")
    p.add_argument("--mode", choices=["bexp", "nd", "main1"], required=True)
    p.add_argument("--f", type=Path, help="JSON: list/object k->f(k) (bexp) or n->[f(0,n), ...] (nd)")
    p.add_argument("--kmax", type=int)
    p.add_argument("--pattern", type=Path, help="main1: the pattern H")
    p.add_argument("--s", type=int)
    p.add_argument("--c", type=str, help="main1: positive rational, e.g. 1/2")
    p.add_argument("--d", type=int)
    p.add_argument("--figure", type=Path)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("gen", parents=[common], help="generate graphs")
    p.add_argument("kind", choices=["complete", "biclique", "cycle", "path", "petersen", "subdivision",
                                    "gnp", "bipartite", "planted", "family"])
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pattern", type=Path)
    p.add_argument("--lengths", default="1", help="one length for all edges or a comma list")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--at-most", action="store_true", help="planted: random path lengths in 0..k")
    p.add_argument("--noise-vertices", type=int, default=0)
    p.add_argument("--noise-p", type=float, default=0.0)
    p.add_argument("--s", type=int)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--max-attempts", type=int, default=100_000)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("trend", parents=[common], help="log-log density trend of a family directory")
    p.add_argument("--family", type=Path, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--measure", choices=list(MEASURE_NAMES), default="nabla")
    p.add_argument("--figure", type=Path)
    p.set_defaults(func=cmd_trend)

    p = sub.add_parser("verify", parents=[common], help="check a witness JSON")
    p.add_argument("--witness", type=Path, required=True)
    p.add_argument("--graph", type=Path, required=True)
    p.add_argument("--pattern", type=Path, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def _require(args, names: list[str]) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidSpec(f"gen {args.kind} needs " + ", ".join("--" + m.replace("_", "-") for m in missing))


GEN_REQUIRED = {
    "complete": ["n"], "cycle": ["n"], "path": ["n"], "biclique": ["a", "b"], "petersen": [],
    "subdivision": ["pattern"], "gnp": ["n", "p"], "bipartite": ["a", "b", "p"],
    "planted": ["pattern"], "family": ["pattern", "s", "n", "output"],
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "gen":
            _require(args, GEN_REQUIRED[args.kind])
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except TopogradError as exc:
        sys.stderr.write(json.dumps(exc.to_dict(), sort_keys=True) + "\n")
        return 1
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "io_error", "message": str(exc)}, sort_keys=True) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
