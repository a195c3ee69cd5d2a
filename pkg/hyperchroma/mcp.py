"""MCP tools for hypergraph coloring and bound evaluation."""

import asyncio
from dataclasses import dataclass, field

from mcp.server.fastmcp import FastMCP

from hyperchroma.bounds import bound_table, lll_check, q_prime
from hyperchroma.chains import first_bad_edge, first_monochromatic_edge, is_proper_coloring
from hyperchroma.colorer import color_hypergraph as run_colorer
from hyperchroma.colorer import default_p
from hyperchroma.config import BoundsInput, ColorerConfig, HyperchromaConfig, PSetting
from hyperchroma.config_manager import ConfigManager
from hyperchroma.formats import parse_coloring, parse_hypergraph, parse_labeling, serialize_coloring
from hyperchroma.logger import RunLogger


@dataclass(frozen=True)
class BoundEntry:
    """One lower bound on m(n, r)."""

    name: str
    log_value: float
    value: float | None
    dominates: bool


@dataclass(frozen=True)
class BoundsResult:
    """Result from evaluating the lower bounds."""

    success: bool
    q_prime: float = 0.0
    bounds: list[BoundEntry] = field(default_factory=list)
    error: str = ""


@dataclass(frozen=True)
class ColorResult:
    """Result from a two-phase coloring run."""

    success: bool
    coloring: str = ""
    attempts: int = 0
    p: float = 0.0
    failure_counts: dict[str, int] = field(default_factory=dict)
    error: str = ""


@dataclass(frozen=True)
class VerifyResult:
    """Result from checking a coloring."""

    success: bool
    valid: bool = False
    offending_edge: int | None = None
    error: str = ""


@dataclass(frozen=True)
class LLLResult:
    """Result from the local lemma search."""

    success: bool
    feasible: bool = False
    x: float = 0.0
    y: float = 0.0
    log_p1: float = 0.0
    log_p2: float = 0.0
    profile: list[int] = field(default_factory=list)
    error: str = ""


def setup_mcp(
    profile: str,
    config_override: HyperchromaConfig | None = None,
    enable_guidance_tool: bool = False,
) -> FastMCP:
    """Initialize tools for a specific profile.

    Args:
        profile: Config profile whose defaults the tools use
        config_override: Optional config to override loaded configuration
        enable_guidance_tool: Whether to enable the guidance tool (default: False)

    Returns:
        Configured FastMCP server instance
    """
    with RunLogger(profile) as logger:
        logger.info(f"Setting up MCP tools for profile: {profile}")

        if config_override:
            config = config_override
            logger.info(f"Using config override: {config.model_dump_json()}")
        else:
            config = ConfigManager.load_for_profile(profile)
            logger.info(f"Config loaded: {config.model_dump_json()}")

        logger.info("MCP tools setup complete")

    mcp = FastMCP("hyperchroma")

    USAGE_GUIDE = """Use these tools to color n-uniform hypergraphs with r colors and to
evaluate how many edges such a hypergraph needs before it stops being r-colorable.

Hypergraphs are passed as text: a `v <count>` line, an optional `n <size>` line, then
one `e <vertex> <vertex> ...` line per edge. Colorings use `c <vertex> <color>` lines
and edge labelings `l <edge> <color>` lines.

**Core operations:**
- `color_hypergraph(hypergraph, r, p, seed, max_retries)` - Randomized two-phase coloring
- `verify_coloring(hypergraph, coloring, r, labels)` - Check properness or goodness
- `evaluate_bounds(n, r, q)` - Lower bounds on m(n, r), as natural logs
- `lll_search(n, r, max_degree, p)` - Local lemma feasibility at a maximum edge degree

**Best practices:**
- Always check `success` field; handle errors via `error` field
- The same seed always gives the same coloring
- Bounds grow exponentially in n; read `log_value` when `value` is null
"""

    @mcp.resource("hyperchroma://usage-guide")
    async def get_usage_guide() -> str:
        """Usage guide for hyperchroma tools."""
        return f"# Hypergraph Coloring with hyperchroma\n\n{USAGE_GUIDE}"

    if enable_guidance_tool:

        @mcp.tool(description=USAGE_GUIDE)
        async def guidance() -> None:
            pass

    @mcp.tool()
    async def evaluate_bounds(n: int, r: int, q: float | None = None) -> BoundsResult:
        """Evaluate every lower bound on m(n, r) that applies to r.

        Args:
            n: Edge size (at least 3)
            r: Number of colors (at least 2)
            q: Coefficient below q'(r) used by eq1 and eq6 (default: q'(r)/2)

        Returns:
            BoundsResult containing:
            - success (bool): True if evaluation succeeded
            - q_prime (float): The threshold q'(r)
            - bounds (list[BoundEntry]): name, log_value, value and dominates per bound
            - error (str): Error message if failed
        """
        with RunLogger(profile) as logger:
            logger.info(f"Tool called: evaluate_bounds (n={n}, r={r}, q={q})")

            try:
                rows = bound_table(BoundsInput(n=n, r=r, q=q))
                return BoundsResult(
                    success=True,
                    q_prime=q_prime(r),
                    bounds=[
                        BoundEntry(row.name, row.log_value, row.value, row.dominates)
                        for row in rows
                    ],
                )
            except Exception as e:
                logger.error(f"Failed to evaluate bounds: {e}")
                return BoundsResult(success=False, error=str(e))

    @mcp.tool()
    async def color_hypergraph(
        hypergraph: str,
        r: int | None = None,
        p: PSetting | None = None,
        seed: int | None = None,
        max_retries: int | None = None,
    ) -> ColorResult:
        """Color a hypergraph with the randomized two-phase algorithm.

        Phase 1 leaves each vertex colorless with probability p and otherwise colors it
        uniformly. Phase 2 colors the colorless vertices greedily along a random order.
        Attempts repeat with derived seeds until one gives a proper coloring.

        Args:
            hypergraph: Hypergraph in the text format
            r: Number of colors (default: profile config)
            p: Colorless probability or "auto" (default: profile config)
            seed: Master seed (default: profile config)
            max_retries: Attempts before giving up (default: profile config)

        Returns:
            ColorResult containing:
            - success (bool): True if a proper coloring was found
            - coloring (str): The coloring as `c <vertex> <color>` lines
            - attempts (int): Attempts used
            - p (float): The colorless probability that was used
            - failure_counts (dict): Failed attempts by failure kind
            - error (str): Error message if failed
        """
        with RunLogger(profile) as logger:
            logger.info(f"Tool called: color_hypergraph (r={r}, p={p}, seed={seed})")

            try:
                parsed = parse_hypergraph(hypergraph)
                colorer_config = ColorerConfig.from_config(
                    config, r=r, p=p, seed=seed, max_retries=max_retries
                )
                with logger.timed("Two-phase coloring"):
                    outcome = await asyncio.to_thread(run_colorer, parsed, colorer_config, logger)
                if not outcome.success or outcome.coloring is None:
                    return ColorResult(
                        success=False,
                        attempts=len(outcome.attempts),
                        p=outcome.p,
                        failure_counts=outcome.failure_counts,
                        error=f"no proper {colorer_config.r}-coloring found",
                    )
                return ColorResult(
                    success=True,
                    coloring=serialize_coloring(outcome.coloring),
                    attempts=len(outcome.attempts),
                    p=outcome.p,
                    failure_counts=outcome.failure_counts,
                )
            except Exception as e:
                logger.error(f"Failed to color hypergraph: {e}")
                return ColorResult(success=False, error=str(e))

    @mcp.tool()
    async def verify_coloring(
        hypergraph: str, coloring: str, r: int, labels: str | None = None
    ) -> VerifyResult:
        """Check a coloring against a hypergraph.

        Without labels the coloring must be a proper total r-coloring. With labels it
        must be good: no edge colored entirely in its own label.

        Args:
            hypergraph: Hypergraph in the text format
            coloring: Coloring as `c <vertex> <color>` lines
            r: Number of colors
            labels: Optional edge labeling as `l <edge> <color>` lines

        Returns:
            VerifyResult containing:
            - success (bool): True if the inputs could be checked
            - valid (bool): True if the coloring passes
            - offending_edge (int | None): First failing edge index
            - error (str): Error message if failed
        """
        with RunLogger(profile) as logger:
            logger.info(f"Tool called: verify_coloring (r={r}, labeled={labels is not None})")

            try:
                parsed = parse_hypergraph(hypergraph)
                colors = parse_coloring(coloring, parsed.vertex_count, r)
                if labels is not None:
                    labeling = parse_labeling(labels, parsed, r)
                    bad = first_bad_edge(parsed, labeling, colors)
                else:
                    is_proper_coloring(parsed, colors, r)
                    bad = first_monochromatic_edge(parsed, colors)
                return VerifyResult(success=True, valid=bad is None, offending_edge=bad)
            except Exception as e:
                logger.error(f"Failed to verify coloring: {e}")
                return VerifyResult(success=False, error=str(e))

    @mcp.tool()
    async def lll_search(
        n: int, r: int, max_degree: int, p: float | None = None
    ) -> LLLResult:
        """Search for (x, y) satisfying the local lemma conditions at a maximum edge degree.

        A feasible pair means every n-uniform hypergraph with that maximum edge degree
        is colored by the two-phase algorithm with positive probability.

        Args:
            n: Edge size (at least 3)
            r: Number of colors (at least 2)
            max_degree: Maximum number of other edges any edge meets
            p: Colorless probability (default: the closed-form choice)

        Returns:
            LLLResult containing:
            - success (bool): True if the search ran
            - feasible (bool): True if a pair was found
            - x, y (float): The pair found
            - log_p1, log_p2 (float): Log probabilities of the two event types
            - profile (list[int]): Truncated sizes maximizing the chain event
            - error (str): Error message if failed
        """
        with RunLogger(profile) as logger:
            logger.info(f"Tool called: lll_search (n={n}, r={r}, max_degree={max_degree})")

            try:
                rate = p if p is not None else default_p(n, r)
                witness = await asyncio.to_thread(
                    lll_check, n, r, max_degree, rate, config.lll_grid_points
                )
                if witness is None:
                    return LLLResult(success=True, feasible=False)
                return LLLResult(
                    success=True,
                    feasible=True,
                    x=witness.x,
                    y=witness.y,
                    log_p1=witness.log_p1,
                    log_p2=witness.log_p2,
                    profile=list(witness.profile),
                )
            except Exception as e:
                logger.error(f"Failed LLL search: {e}")
                return LLLResult(success=False, error=str(e))

    return mcp
