"""Two-phase randomized r-coloring of uniform hypergraphs.

Phase 1 leaves each vertex colorless with probability p and otherwise gives it
a uniform color from 1..r. The attempt is abandoned if some edge is
monochromatic, almost monochromatic or fully colorless. Otherwise the colorless
vertices W carry a truncated hypergraph whose edges B = A & W are labeled with
the single color of A - B; phase 2 draws a random ordering of W and, unless it
contains a strong ordered r-chain, finishes with the greedy coloring.
"""

import csv
import math
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path

import numpy as np

from hyperchroma.chains import (
    ChainCandidate,
    find_strong_ordered_chain,
    greedy_color,
    is_proper_coloring,
)
from hyperchroma.config import ColorerConfig, PSetting
from hyperchroma.errors import (
    InternalError,
    InvalidParameterError,
    PreconditionError,
    UnsupportedInstanceError,
)
from hyperchroma.hypergraph import (
    COLORLESS,
    EdgeLabeling,
    Hypergraph,
    PartialColoring,
    VertexOrdering,
    infer_uniformity,
    require_valid,
)
from hyperchroma.logger import RunLogger

ATTEMPT_REPORT_COLUMNS = (
    "attempt",
    "seed",
    "phase1_verdict",
    "bad_edge_kind",
    "chain_found",
    "success",
)


class BadEdgeKind(StrEnum):
    """Why phase 1 rejects an edge."""

    MONOCHROMATIC = "monochromatic"
    ALMOST_MONOCHROMATIC = "almost-monochromatic"
    FULLY_COLORLESS = "fully-colorless"


def classify_edge(colors: Iterable[int]) -> BadEdgeKind | None:
    """Phase-1 screening of one edge given its vertex colors (0 = colorless)."""
    values = list(colors)
    colorless = values.count(COLORLESS)
    if colorless == len(values):
        return BadEdgeKind.FULLY_COLORLESS
    if len({color for color in values if color != COLORLESS}) != 1:
        return None
    if colorless == 0:
        return BadEdgeKind.MONOCHROMATIC
    if colorless == 1:
        return BadEdgeKind.ALMOST_MONOCHROMATIC
    return None


def derive_seed(master: int, index: int) -> int:
    """Sub-seed of a master seed: first 64-bit word of SeedSequence([master, index])."""
    sequence = np.random.SeedSequence([master, index])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def default_p(n: int, r: int) -> float:
    """p = (r-1) ln(r^(r/(r-1)) n ln^2 n) / (r n).

    Raises:
        InvalidParameterError: If n < 2, r < 2 or the value falls outside (0, 1)
    """
    if n < 2 or r < 2:
        raise InvalidParameterError(f"default p needs n >= 2 and r >= 2, got n={n}, r={r}")
    log_n = math.log(n)
    p = (r - 1) * (r / (r - 1) * math.log(r) + log_n + 2 * math.log(log_n)) / (r * n)
    if not 0 < p < 1:
        raise InvalidParameterError(
            f"default p = {p:.6g} for n={n}, r={r} is outside (0, 1); pass an explicit p"
        )
    return p


def resolve_p(setting: PSetting, hypergraph: Hypergraph, r: int) -> float:
    """Explicit p, or the default for the hypergraph's uniformity when setting is "auto".

    Raises:
        UnsupportedInstanceError: If p is "auto" and the hypergraph is not uniform
        InvalidParameterError: If the default falls outside (0, 1)
    """
    if setting != "auto":
        return float(setting)
    n = infer_uniformity(hypergraph)
    if n is None:
        raise UnsupportedInstanceError("p='auto' needs a uniform hypergraph; pass an explicit p")
    return default_p(n, r)


@dataclass(frozen=True)
class Phase1Outcome:
    """Random partial coloring plus the first bad edge found, if any."""

    coloring: PartialColoring
    bad_kind: BadEdgeKind | None = None
    bad_edge: int | None = None

    @property
    def ok(self) -> bool:
        return self.bad_kind is None

    @property
    def verdict(self) -> str:
        return "ok" if self.ok else "bad-edge"


def _screen(hypergraph: Hypergraph, coloring: PartialColoring) -> tuple[BadEdgeKind, int] | None:
    for index, edge in enumerate(hypergraph.edges):
        kind = classify_edge(coloring[v] for v in edge)
        if kind is not None:
            return kind, index
    return None


def phase1(hypergraph: Hypergraph, r: int, p: float, rng: np.random.Generator) -> Phase1Outcome:
    """Color each vertex independently: colorless w.p. p, else uniform over 1..r.

    p may be 0 or 1 here; the degenerate ends are useful for testing.
    """
    if not 0 <= p <= 1:
        raise InvalidParameterError(f"p must lie in [0, 1], got {p}")
    colorless = rng.random(hypergraph.vertex_count) < p
    palette = rng.integers(1, r + 1, size=hypergraph.vertex_count)
    colors = np.where(colorless, COLORLESS, palette)
    coloring = PartialColoring(tuple(int(color) for color in colors), r)

    bad = _screen(hypergraph, coloring)
    if bad is None:
        return Phase1Outcome(coloring)
    return Phase1Outcome(coloring, bad_kind=bad[0], bad_edge=bad[1])


@dataclass(frozen=True)
class TruncatedHypergraph:
    """Colorless vertices W with the kept truncated edges B = A & W.

    Attributes:
        vertices: W in increasing id order
        edges: Kept edges B, in original vertex ids
        origins: Index of the originating edge A for every B
        labeling: f(B), the single color of A - B
    """

    vertices: tuple[int, ...]
    edges: tuple[frozenset[int], ...]
    origins: tuple[int, ...]
    labeling: EdgeLabeling
    local_id: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "local_id", {v: i for i, v in enumerate(self.vertices)})

    def local(self) -> Hypergraph:
        """The same hypergraph relabeled onto vertices 0..|W|-1."""
        return Hypergraph.from_edges(
            len(self.vertices), ([self.local_id[v] for v in edge] for edge in self.edges)
        )


def build_truncated(hypergraph: Hypergraph, coloring: PartialColoring) -> TruncatedHypergraph:
    """Truncated hypergraph of a phase-1 coloring that passed screening.

    Raises:
        PreconditionError: If some edge is monochromatic, almost monochromatic or
            fully colorless under the coloring
    """
    if len(coloring) != hypergraph.vertex_count:
        raise PreconditionError("coloring must cover every vertex")
    bad = _screen(hypergraph, coloring)
    if bad is not None:
        raise PreconditionError(f"edge {bad[1]} is {bad[0]}; phase 1 did not pass screening")

    edges: list[frozenset[int]] = []
    origins: list[int] = []
    labels: list[int] = []
    for index, edge in enumerate(hypergraph.edges):
        truncated = frozenset(v for v in edge if coloring[v] == COLORLESS)
        if not truncated:
            continue
        rest = {coloring[v] for v in edge - truncated}
        if len(rest) != 1:
            continue
        edges.append(truncated)
        origins.append(index)
        labels.append(rest.pop())

    return TruncatedHypergraph(
        vertices=coloring.colorless_vertices(),
        edges=tuple(edges),
        origins=tuple(origins),
        labeling=EdgeLabeling.from_sequence(labels),
    )


@dataclass(frozen=True)
class Phase2Outcome:
    """Random ordering of W and either the greedy coloring of W or a blocking chain.

    Colors and chain edge ids refer to the local numbering of the truncated hypergraph.
    """

    ordering: VertexOrdering
    coloring: PartialColoring | None = None
    chain: ChainCandidate | None = None

    @property
    def ok(self) -> bool:
        return self.coloring is not None


def phase2(truncated: TruncatedHypergraph, r: int, rng: np.random.Generator) -> Phase2Outcome:
    """Color the colorless vertices W greedily along a random ordering.

    Args:
        truncated: Edges restricted to W, each labeled with its phase-1 color
        r: Number of colors
        rng: Source of the random ordering

    Returns:
        Phase2Outcome with the greedy coloring of W, or with the strong ordered
        chain that would make the greedy pass fail
    """
    local = truncated.local()
    ordering = VertexOrdering(tuple(int(v) for v in rng.permutation(local.vertex_count)))
    chain = find_strong_ordered_chain(local, ordering, truncated.labeling, r)
    if chain is not None:
        return Phase2Outcome(ordering, chain=chain)
    return Phase2Outcome(ordering, coloring=greedy_color(local, truncated.labeling, ordering, r))


def merge_colorings(
    phase1_coloring: PartialColoring, truncated: TruncatedHypergraph, w_coloring: PartialColoring
) -> PartialColoring:
    """Phase-1 colors stand; every vertex of W takes its phase-2 color."""
    colors = list(phase1_coloring)
    for local, vertex in enumerate(truncated.vertices):
        colors[vertex] = w_coloring[local]
    return PartialColoring(tuple(colors), phase1_coloring.r)


@dataclass(frozen=True)
class AttemptRecord:
    """One colorer attempt: its seed, the phase-1 verdict and how it ended."""

    attempt: int
    seed: int
    phase1_verdict: str
    bad_edge_kind: BadEdgeKind | None
    chain_found: bool
    success: bool

    @property
    def failure_kind(self) -> str | None:
        """Bad-edge kind, "chain", or None for a successful attempt."""
        if self.bad_edge_kind is not None:
            return str(self.bad_edge_kind)
        return "chain" if self.chain_found else None


@dataclass(frozen=True)
class ColoringOutcome:
    """Result of color_hypergraph: a verified proper coloring or the failure report."""

    success: bool
    coloring: PartialColoring | None
    attempts: tuple[AttemptRecord, ...]
    p: float

    @property
    def failure_counts(self) -> dict[str, int]:
        counts = Counter(record.failure_kind for record in self.attempts)
        counts.pop(None, None)
        return dict(counts)

    @property
    def phase1_failures(self) -> int:
        return sum(1 for record in self.attempts if record.bad_edge_kind is not None)

    @property
    def chain_failures(self) -> int:
        return sum(1 for record in self.attempts if record.chain_found)


def _require_colorable_instance(hypergraph: Hypergraph) -> None:
    require_valid(hypergraph)
    for index, edge in enumerate(hypergraph.edges):
        if len(edge) < 2:
            raise UnsupportedInstanceError(
                f"edge {index} has a single vertex and can never be properly colored"
            )


def color_hypergraph(
    hypergraph: Hypergraph, config: ColorerConfig, logger: RunLogger | None = None
) -> ColoringOutcome:
    """Run up to max_retries two-phase attempts; attempt k uses derive_seed(seed, k).

    Raises:
        InvalidParameterError: If the hypergraph is invalid or p cannot be resolved
        UnsupportedInstanceError: On size-1 edges, or p="auto" without uniformity
        InternalError: If a merged coloring fails verification
    """
    _require_colorable_instance(hypergraph)
    r = config.r

    if not hypergraph.edges:
        p = math.nan if config.p == "auto" else float(config.p)
        coloring = PartialColoring((1,) * hypergraph.vertex_count, r)
        record = AttemptRecord(0, derive_seed(config.seed, 0), "ok", None, False, True)
        return ColoringOutcome(True, coloring, (record,), p)

    p = resolve_p(config.p, hypergraph, r)
    if logger:
        logger.info(
            f"Coloring v={hypergraph.vertex_count} m={hypergraph.edge_count} "
            f"r={r} p={p:.6g} seed={config.seed}"
        )

    records: list[AttemptRecord] = []
    for attempt in range(config.max_retries):
        seed = derive_seed(config.seed, attempt)
        rng = np.random.default_rng(seed)

        first = phase1(hypergraph, r, p, rng)
        if not first.ok:
            record = AttemptRecord(attempt, seed, first.verdict, first.bad_kind, False, False)
            records.append(record)
            if logger:
                logger.debug(f"Attempt {attempt} (seed {seed}): {record.failure_kind} edge")
            continue

        truncated = build_truncated(hypergraph, first.coloring)
        second = phase2(truncated, r, rng)
        if second.coloring is None:
            records.append(AttemptRecord(attempt, seed, first.verdict, None, True, False))
            if logger:
                logger.debug(f"Attempt {attempt} (seed {seed}): strong ordered chain in W")
            continue

        merged = merge_colorings(first.coloring, truncated, second.coloring)
        if not is_proper_coloring(hypergraph, merged, r):
            raise InternalError(f"attempt {attempt} (seed {seed}) merged to an improper coloring")
        records.append(AttemptRecord(attempt, seed, first.verdict, None, False, True))
        if logger:
            logger.info(f"Proper {r}-coloring found on attempt {attempt}")
        return ColoringOutcome(True, merged, tuple(records), p)

    outcome = ColoringOutcome(False, None, tuple(records), p)
    if logger:
        logger.warning(
            f"No coloring after {config.max_retries} attempts: {outcome.failure_counts}"
        )
    return outcome


def write_attempt_report(outcome: ColoringOutcome, path: Path) -> None:
    """One CSV row per attempt."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(ATTEMPT_REPORT_COLUMNS)
        for record in outcome.attempts:
            writer.writerow(
                [
                    record.attempt,
                    record.seed,
                    record.phase1_verdict,
                    record.bad_edge_kind or "",
                    str(record.chain_found).lower(),
                    str(record.success).lower(),
                ]
            )
