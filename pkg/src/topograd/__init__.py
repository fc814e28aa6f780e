"""Exact shallow-subdivision density measures, subdivision search with
verifiable witnesses, and a certified construction of induced exact-depth
subdivisions."""

from .bounds import bexp_bound_table, d_constant, main1_bound_f, nd_bound_function
from .cliques import (
    find_biclique_induced,
    find_biclique_subgraph,
    find_clique_induced,
    forbidden_pattern_check,
    ramsey_refine_biclique,
)
from .density import (
    density_profile,
    family_trend,
    nabla_exact_k,
    nabla_induced_k,
    nabla_k,
)
from .errors import (
    BudgetExceeded,
    DegenerateInput,
    InvalidInput,
    InvalidSpec,
    ParseError,
    PreconditionFailed,
    SearchExhausted,
    TopogradError,
)
from .graph import BipartiteLayout, Graph, average_degree, max_average_degree
from .hats import fix_branch_search, induce_hats_search, max_uncrowded_hatset
from .io import parse_edge_list, serialize_edge_list
from .pipeline import PipelineParams, run_main1_pipeline, verify_lemma_main1_inequality
from .subdivision import (
    SearchConfig,
    SubdivisionSpec,
    SubdivisionWitness,
    find_clique_subdivision,
    find_subdivision,
    verify_witness,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteLayout",
    "BudgetExceeded",
    "DegenerateInput",
    "Graph",
    "InvalidInput",
    "InvalidSpec",
    "ParseError",
    "PipelineParams",
    "PreconditionFailed",
    "SearchConfig",
    "SearchExhausted",
    "SubdivisionSpec",
    "SubdivisionWitness",
    "TopogradError",
    "average_degree",
    "bexp_bound_table",
    "d_constant",
    "density_profile",
    "family_trend",
    "find_biclique_induced",
    "find_biclique_subgraph",
    "find_clique_induced",
    "find_clique_subdivision",
    "find_subdivision",
    "fix_branch_search",
    "forbidden_pattern_check",
    "induce_hats_search",
    "main1_bound_f",
    "max_average_degree",
    "max_uncrowded_hatset",
    "nabla_exact_k",
    "nabla_induced_k",
    "nabla_k",
    "nd_bound_function",
    "parse_edge_list",
    "ramsey_refine_biclique",
    "run_main1_pipeline",
    "serialize_edge_list",
    "verify_lemma_main1_inequality",
    "verify_witness",
]
