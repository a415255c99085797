"""Broadcast Independence / Broadcast Packing solver toolkit.

Exact dynamic programming over nice tree decompositions (with a
compiled kernel core and a pure-Python fallback), a brute-force oracle,
structural truncation transforms, a treewidth-parameterized
approximation, and hardness-instance generators.
"""

from .errors import BcastError, InputError, InternalError
from .graph import (
    Broadcast,
    WeightedGraph,
    broadcast_neighborhood,
    format_graph,
    format_witness,
    is_broadcast_packing,
    is_independent_broadcast,
    parse_graph,
    parse_witness,
)
from .treedecomp import (
    NiceTreeDecomposition,
    TreeDecomposition,
    heuristic_decompose,
    make_nice,
    parse_td,
)
from .dp import solve_p_bi, solve_p_bp
from .oracle import brute_force_optimum, brute_force_profile, enumerate_small_graphs
from .transforms import (
    ApproxConfig,
    approx_bi,
    canonical_single_broadcast,
    decide_value_k,
    truncate_independent,
    truncate_packing,
)
from .validate import find_violation

__version__ = "0.1.0"

__all__ = [
    "ApproxConfig",
    "BcastError",
    "Broadcast",
    "InputError",
    "InternalError",
    "NiceTreeDecomposition",
    "TreeDecomposition",
    "WeightedGraph",
    "approx_bi",
    "broadcast_neighborhood",
    "brute_force_optimum",
    "brute_force_profile",
    "canonical_single_broadcast",
    "decide_value_k",
    "enumerate_small_graphs",
    "find_violation",
    "format_graph",
    "format_witness",
    "heuristic_decompose",
    "is_broadcast_packing",
    "is_independent_broadcast",
    "make_nice",
    "parse_graph",
    "parse_td",
    "parse_witness",
    "solve_p_bi",
    "solve_p_bp",
    "truncate_independent",
    "truncate_packing",
]
