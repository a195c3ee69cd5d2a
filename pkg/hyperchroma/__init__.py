"""hyperchroma - randomized two-phase r-coloring of uniform hypergraphs."""

from hyperchroma.bounds import (
    FailureBound,
    LLLWitness,
    bound_table,
    evaluate_bound,
    failure_probability_upper,
    lll_check,
    lll_max_degree,
    q_prime,
)
from hyperchroma.chains import (
    find_ordered_chain,
    find_strong_ordered_chain,
    greedy_color,
    is_proper_coloring,
)
from hyperchroma.colorer import ColoringOutcome, color_hypergraph, default_p
from hyperchroma.config import BoundsInput, ColorerConfig, ExperimentSpec, HyperchromaConfig
from hyperchroma.config_manager import ConfigManager
from hyperchroma.errors import HyperchromaError
from hyperchroma.experiment import ExperimentSummary, run_experiment
from hyperchroma.hypergraph import EdgeLabeling, Hypergraph, PartialColoring, VertexOrdering
from hyperchroma.mcp import (
    BoundsResult,
    ColorResult,
    LLLResult,
    VerifyResult,
    setup_mcp,
)

__all__ = [
    "HyperchromaConfig",
    "ColorerConfig",
    "BoundsInput",
    "ExperimentSpec",
    "ConfigManager",
    "HyperchromaError",
    "Hypergraph",
    "PartialColoring",
    "VertexOrdering",
    "EdgeLabeling",
    "find_ordered_chain",
    "find_strong_ordered_chain",
    "greedy_color",
    "is_proper_coloring",
    "color_hypergraph",
    "default_p",
    "ColoringOutcome",
    "bound_table",
    "evaluate_bound",
    "q_prime",
    "failure_probability_upper",
    "FailureBound",
    "lll_check",
    "lll_max_degree",
    "LLLWitness",
    "run_experiment",
    "ExperimentSummary",
    "setup_mcp",
    "BoundsResult",
    "ColorResult",
    "VerifyResult",
    "LLLResult",
]
