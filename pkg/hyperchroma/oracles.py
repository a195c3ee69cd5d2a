"""Slow exhaustive ground truth for colorability, chain existence and chain probabilities.

These searches follow the definitions directly and never call the chain
dynamic program; the ordered-chain predicates are the only shared code.
"""

import math
import time
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

import numpy as np

from hyperchroma.chains import ChainCandidate, is_ordered_chain, is_strong_ordered_chain
from hyperchroma.errors import BudgetExceededError, InvalidParameterError, UnsupportedInstanceError
from hyperchroma.hypergraph import EdgeLabeling, Hypergraph, VertexOrdering
from hyperchroma.logger import RunLogger

CHROMATIC_MAX_VERTICES = 20
GOOD_COLORING_MAX_VERTICES = 12
ORDERING_MAX_VERTICES = 8
CHAIN_ENUMERATION_MAX_VERTICES = 10


@dataclass(frozen=True)
class SearchBudget:
    """Limits for the m(n, r) search.

    Attributes:
        max_vertices: Vertex set size instances are drawn on
        max_edges: Largest edge count tried
        time_cap: Wall-clock seconds before the search reports a partial result
    """

    max_vertices: int = 5
    max_edges: int = 8
    time_cap: float = 60.0

    def __post_init__(self) -> None:
        if self.max_vertices < 1 or self.max_edges < 1 or self.time_cap <= 0:
            raise InvalidParameterError(f"search budget values must be positive: {self}")


def _deadline(time_cap: float | None) -> float:
    return math.inf if time_cap is None else time.monotonic() + time_cap


def _check_deadline(deadline: float) -> None:
    if time.monotonic() > deadline:
        raise BudgetExceededError("exhaustive search exceeded its time cap")


def _require_vertices(hypergraph: Hypergraph, limit: int, what: str) -> None:
    if hypergraph.vertex_count > limit:
        raise BudgetExceededError(
            f"{what} enumerates at most {limit} vertices, got {hypergraph.vertex_count}"
        )


def _search_coloring(
    hypergraph: Hypergraph,
    r: int,
    labels: Sequence[int] | None,
    deadline: float,
) -> tuple[int, ...] | None:
    """Backtracking over V -> {1..r}; an edge is checked once its largest vertex is set.

    With labels None an edge is bad when monochromatic, and vertex 0 is fixed to
    color 1 since colors are interchangeable. With labels an edge is bad when all
    its vertices carry its label.
    """
    closing: list[list[int]] = [[] for _ in range(hypergraph.vertex_count)]
    for index, edge in enumerate(hypergraph.edges):
        closing[max(edge)].append(index)
    colors = [0] * hypergraph.vertex_count

    def violates(vertex: int, color: int) -> bool:
        for index in closing[vertex]:
            if labels is not None and labels[index] != color:
                continue
            if all(colors[u] == color for u in hypergraph.edges[index] if u != vertex):
                return True
        return False

    def extend(vertex: int) -> bool:
        if vertex == hypergraph.vertex_count:
            return True
        _check_deadline(deadline)
        palette = (1,) if labels is None and vertex == 0 else range(1, r + 1)
        for color in palette:
            if violates(vertex, color):
                continue
            colors[vertex] = color
            if extend(vertex + 1):
                return True
        colors[vertex] = 0
        return False

    return tuple(colors) if extend(0) else None


def chromatic_number(hypergraph: Hypergraph, time_cap: float | None = None) -> int:
    """Smallest r with a proper r-coloring; 1 when there are no edges.

    Raises:
        BudgetExceededError: Beyond 20 vertices or past the time cap
        UnsupportedInstanceError: If an edge has a single vertex
    """
    _require_vertices(hypergraph, CHROMATIC_MAX_VERTICES, "chromatic number")
    if any(len(edge) < 2 for edge in hypergraph.edges):
        raise UnsupportedInstanceError("a single-vertex edge has no proper coloring")
    if not hypergraph.edges:
        return 1
    deadline = _deadline(time_cap)
    r = 1
    while _search_coloring(hypergraph, r, None, deadline) is None:
        r += 1
    return r


def exists_good_coloring(
    hypergraph: Hypergraph, labeling: EdgeLabeling, r: int, time_cap: float | None = None
) -> bool:
    """Some assignment V -> {1..r} leaves no edge A colored entirely f(A).

    Raises:
        BudgetExceededError: Beyond 12 vertices or past the time cap
    """
    _require_vertices(hypergraph, GOOD_COLORING_MAX_VERTICES, "good-coloring search")
    labels = [labeling.label(index) for index in range(hypergraph.edge_count)]
    return _search_coloring(hypergraph, r, labels, _deadline(time_cap)) is not None


def exists_ordered_chain(
    hypergraph: Hypergraph,
    ordering: VertexOrdering,
    r: int,
    labeling: EdgeLabeling | None = None,
) -> bool:
    """Depth-first search over edge sequences, pruning prefixes that fail the chain predicate.

    Strong chains are searched when a labeling is given.
    """
    if r < 1:
        raise InvalidParameterError(f"chain length must be positive, got {r}")

    def holds(edge_ids: tuple[int, ...]) -> bool:
        candidate = ChainCandidate(edge_ids)
        if labeling is None:
            return is_ordered_chain(hypergraph, ordering, candidate)
        return is_strong_ordered_chain(hypergraph, ordering, labeling, candidate)

    def extend(prefix: tuple[int, ...]) -> bool:
        if len(prefix) == r:
            return True
        return any(
            holds(prefix + (index,)) and extend(prefix + (index,))
            for index in range(hypergraph.edge_count)
        )

    return extend(())


def exists_chain_free_ordering(
    hypergraph: Hypergraph,
    r: int,
    labeling: EdgeLabeling | None = None,
    time_cap: float | None = None,
) -> bool:
    """Some ordering of V has no (strong, given a labeling) ordered r-chain.

    Raises:
        BudgetExceededError: Beyond 8 vertices or past the time cap
    """
    _require_vertices(hypergraph, ORDERING_MAX_VERTICES, "ordering enumeration")
    deadline = _deadline(time_cap)
    for order in permutations(hypergraph.vertices()):
        _check_deadline(deadline)
        if not exists_ordered_chain(hypergraph, VertexOrdering(order), r, labeling):
            return True
    return False


def _canonical_chain(sizes: Sequence[int]) -> Hypergraph:
    """Edges on consecutive vertex runs; edge i+1 starts at the last vertex of edge i."""
    edges = []
    start = 0
    for size in sizes:
        edges.append(range(start, start + size))
        start += size - 1
    return Hypergraph.from_edges(start + 1, edges)


def exact_ordered_probability(a: Sequence[int]) -> Fraction:
    """Fraction of all orderings in which the canonical chain with sizes a is ordered.

    Raises:
        BudgetExceededError: If the chain has more than 10 vertices
    """
    if len(a) < 1 or any(size < 2 for size in a):
        raise InvalidParameterError(f"chain sizes must all be >= 2, got {tuple(a)}")
    chain = _canonical_chain(a)
    _require_vertices(chain, CHAIN_ENUMERATION_MAX_VERTICES, "ordered-chain enumeration")

    candidate = ChainCandidate(tuple(range(len(a))))
    favourable = 0
    total = 0
    for order in permutations(chain.vertices()):
        total += 1
        if is_ordered_chain(chain, VertexOrdering(order), candidate):
            favourable += 1
    return Fraction(favourable, total)


def exact_strong_probability(n: int, r: int, a: Sequence[int], p: Fraction) -> Fraction:
    """Exact probability that phase 1 turns a fixed chain of n-sets into a strong one
    with truncated sizes a.

    Sums the weight p^(#colorless) ((1-p)/r)^(#colored) of every coloring in which
    the shared vertices are colorless, edge i has exactly a_i colorless vertices
    and its colored vertices all carry color i.

    Raises:
        BudgetExceededError: If the chain has more than 10 vertices
    """
    if len(a) != r or r < 2:
        raise InvalidParameterError(f"need r >= 2 sizes for r={r}, got {tuple(a)}")
    if not 0 <= p <= 1:
        raise InvalidParameterError(f"p must lie in [0, 1], got {p}")
    chain = _canonical_chain([n] * r)
    _require_vertices(chain, CHAIN_ENUMERATION_MAX_VERTICES, "coloring enumeration")

    q = (1 - p) / r
    shared = [max(edge) for edge in chain.edges[:-1]]
    edges = [sorted(edge) for edge in chain.edges]
    probability = Fraction(0)
    for colors in product(range(r + 1), repeat=chain.vertex_count):
        if any(colors[v] != 0 for v in shared):
            continue
        strong = all(
            sum(1 for v in edge if colors[v] == 0) == size
            and all(colors[v] in (0, color) for v in edge)
            for color, (edge, size) in enumerate(zip(edges, a, strict=True), start=1)
        )
        if strong:
            colorless = colors.count(0)
            probability += p**colorless * q ** (chain.vertex_count - colorless)
    return probability


def small_hypergraphs(max_vertices: int, max_edges: int) -> Iterator[Hypergraph]:
    """Every family of 1..max_edges distinct subsets of size >= 2 of {0..max_vertices-1}.

    Smaller vertex sets appear as instances with isolated vertices.
    """
    subsets = [
        frozenset(subset)
        for size in range(2, max_vertices + 1)
        for subset in combinations(range(max_vertices), size)
    ]
    for count in range(1, max_edges + 1):
        for family in combinations(subsets, count):
            yield Hypergraph(max_vertices, family)


def random_small_hypergraphs(
    count: int, vertex_counts: Sequence[int], max_edges: int, seed: int
) -> Iterator[Hypergraph]:
    """Seeded random instances with 1..max_edges edges of random sizes >= 2."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        vertex_count = int(rng.choice(vertex_counts))
        edges = []
        for _ in range(int(rng.integers(1, max_edges + 1))):
            size = int(rng.integers(2, vertex_count + 1))
            edges.append(rng.choice(vertex_count, size=size, replace=False).tolist())
        yield Hypergraph.from_edges(vertex_count, edges)


@dataclass(frozen=True)
class PropositionMismatch:
    """An instance where the coloring side and the ordering side disagree."""

    hypergraph: Hypergraph
    r: int
    labeling: EdgeLabeling | None
    colorable: bool
    chain_free: bool


def check_proposition_one(
    instances: Iterable[Hypergraph],
    r_values: Sequence[int] = (2, 3),
    logger: RunLogger | None = None,
) -> list[PropositionMismatch]:
    """Compare chromatic_number <= r with the existence of an ordering free of ordered r-chains."""
    mismatches = []
    checked = 0
    for hypergraph in instances:
        chromatic = chromatic_number(hypergraph)
        for r in r_values:
            colorable = chromatic <= r
            chain_free = exists_chain_free_ordering(hypergraph, r)
            if colorable != chain_free:
                mismatches.append(PropositionMismatch(hypergraph, r, None, colorable, chain_free))
        checked += 1
    if logger:
        logger.info(f"Ordered-chain check: {checked} instances, {len(mismatches)} mismatches")
    return mismatches


def check_proposition_two(
    instances: Iterable[Hypergraph],
    r_values: Sequence[int] = (2, 3),
    labelings_per_instance: int = 100,
    seed: int = 0,
    logger: RunLogger | None = None,
) -> list[PropositionMismatch]:
    """Compare exists_good_coloring with the existence of an ordering free of strong r-chains,
    over random labelings drawn from the seed.
    """
    rng = np.random.default_rng(seed)
    mismatches = []
    checked = 0
    for hypergraph in instances:
        for r in r_values:
            for _ in range(labelings_per_instance):
                labels = rng.integers(1, r + 1, size=hypergraph.edge_count)
                labeling = EdgeLabeling.from_sequence([int(label) for label in labels])
                colorable = exists_good_coloring(hypergraph, labeling, r)
                chain_free = exists_chain_free_ordering(hypergraph, r, labeling)
                if colorable != chain_free:
                    mismatches.append(
                        PropositionMismatch(hypergraph, r, labeling, colorable, chain_free)
                    )
        checked += 1
    if logger:
        logger.info(f"Strong-chain check: {checked} instances, {len(mismatches)} mismatches")
    return mismatches


@dataclass(frozen=True)
class MinEdgesResult:
    """Outcome of the m(n, r) search.

    Attributes:
        minimum: Fewest edges of a non-r-colorable instance found, None if none
        witness: An instance attaining the minimum
        searched_up_to: Every edge count up to this one was searched completely
        complete: False when the time cap cut the search short
    """

    n: int
    r: int
    vertex_limit: int
    minimum: int | None
    witness: Hypergraph | None
    searched_up_to: int
    complete: bool


def min_edges_uncolorable(
    n: int, r: int, budget: SearchBudget, logger: RunLogger | None = None
) -> MinEdgesResult:
    """Fewest edges of an n-uniform hypergraph on max_vertices vertices with chromatic number > r.

    Edge counts grow one at a time. The first edge is fixed to {0..n-1}, and an
    instance is only tested when every non-isolated vertex lies in at least r
    edges: a vertex of smaller degree can always be recolored, so no edge-minimal
    non-r-colorable instance has one.
    """
    if n < 2 or r < 2:
        raise InvalidParameterError(f"need n >= 2 and r >= 2, got n={n}, r={r}")
    vertex_limit = budget.max_vertices
    if n > vertex_limit:
        raise InvalidParameterError(f"edge size {n} exceeds the vertex budget {vertex_limit}")
    _require_vertices(Hypergraph(vertex_limit), CHROMATIC_MAX_VERTICES, "m(n, r) search")

    deadline = _deadline(budget.time_cap)
    first = frozenset(range(n))
    others = [frozenset(s) for s in combinations(range(vertex_limit), n) if frozenset(s) != first]
    searched = 0

    try:
        for count in range(1, budget.max_edges + 1):
            for rest in combinations(others, count - 1):
                _check_deadline(deadline)
                family = (first, *rest)
                degrees = np.bincount([v for edge in family for v in edge])
                if degrees[degrees > 0].min() < r:
                    continue
                hypergraph = Hypergraph(vertex_limit, family, uniformity=n)
                if _search_coloring(hypergraph, r, None, deadline) is None:
                    if logger:
                        logger.info(f"m({n},{r}) = {count} within {vertex_limit} vertices")
                    return MinEdgesResult(n, r, vertex_limit, count, hypergraph, count, True)
            searched = count
    except BudgetExceededError:
        if logger:
            logger.warning(f"m({n},{r}) search hit its time cap after {searched} edges")
        return MinEdgesResult(n, r, vertex_limit, None, None, searched, False)

    return MinEdgesResult(n, r, vertex_limit, None, None, searched, True)
