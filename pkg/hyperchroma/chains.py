"""Ordered r-chains, strong ordered r-chains and the greedy coloring built on them.

A family of edges A_1..A_r is an ordered r-chain in an ordering sigma when
consecutive edges share exactly one vertex, non-consecutive edges are disjoint,
and every vertex of A_i comes no later than every vertex of A_{i+1}. With an
edge labeling f it is strong when additionally f(A_i) = i.
"""

from dataclasses import dataclass
from itertools import combinations

from hyperchroma.errors import InvalidParameterError, PreconditionError, UnsupportedInstanceError
from hyperchroma.hypergraph import EdgeLabeling, Hypergraph, PartialColoring, VertexOrdering


@dataclass(frozen=True)
class ChainCandidate:
    """A sequence of edge indices A_1..A_r (repeats allowed)."""

    edge_ids: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.edge_ids:
            raise InvalidParameterError("a chain has at least one edge")

    @property
    def r(self) -> int:
        return len(self.edge_ids)


def _chain_edges(hypergraph: Hypergraph, chain: ChainCandidate) -> list[frozenset[int]]:
    try:
        return [hypergraph.edges[index] for index in chain.edge_ids]
    except IndexError:
        raise PreconditionError(f"chain {chain.edge_ids} names a missing edge") from None


def _span(ordering: VertexOrdering, edge: frozenset[int]) -> tuple[int, int]:
    ranks = [ordering.rank(vertex) for vertex in edge]
    return min(ranks), max(ranks)


def is_ordered_chain(
    hypergraph: Hypergraph, ordering: VertexOrdering, chain: ChainCandidate
) -> bool:
    """Check the three ordered-chain conditions for a candidate.

    Raises:
        PreconditionError: If the ordering misses a vertex of the chain's edges
    """
    edges = _chain_edges(hypergraph, chain)
    spans = [_span(ordering, edge) for edge in edges]

    for i in range(len(edges) - 1):
        if len(edges[i] & edges[i + 1]) != 1:
            return False
        if spans[i][1] > spans[i + 1][0]:
            return False

    return all(
        not edges[i] & edges[j] for i, j in combinations(range(len(edges)), 2) if j - i > 1
    )


def is_strong_ordered_chain(
    hypergraph: Hypergraph,
    ordering: VertexOrdering,
    labeling: EdgeLabeling,
    chain: ChainCandidate,
) -> bool:
    """Ordered chain whose i-th edge (1-based) carries label i.

    Raises:
        PreconditionError: If an edge of the chain is unlabeled or a vertex is unordered
    """
    labels = [labeling.label(index) for index in chain.edge_ids]
    ordered = is_ordered_chain(hypergraph, ordering, chain)
    return ordered and all(label == position for position, label in enumerate(labels, start=1))


def _require_chain_search_instance(hypergraph: Hypergraph) -> None:
    for index, edge in enumerate(hypergraph.edges):
        if len(edge) < 2:
            raise UnsupportedInstanceError(
                f"edge {index} has {len(edge)} vertex; chain search needs edges of size >= 2"
            )


def _find_chain(
    hypergraph: Hypergraph,
    ordering: VertexOrdering,
    r: int,
    labeling: EdgeLabeling | None,
) -> ChainCandidate | None:
    if r < 1:
        raise InvalidParameterError(f"chain length must be positive, got {r}")
    _require_chain_search_instance(hypergraph)

    # A link e -> e' exists iff they share exactly one vertex which is the sigma-last
    # vertex of e and the sigma-first vertex of e'. Edges of size >= 2 then occupy
    # strictly increasing sigma-intervals, so non-adjacent links are disjoint.
    first_vertex: list[int] = []
    last_vertex: list[int] = []
    starting_at: dict[int, list[int]] = {}
    for index, edge in enumerate(hypergraph.edges):
        lo, hi = _span(ordering, edge)
        first_vertex.append(ordering.order[lo])
        last_vertex.append(ordering.order[hi])
        starting_at.setdefault(ordering.order[lo], []).append(index)

    def admissible(index: int, position: int) -> bool:
        return labeling is None or labeling.label(index) == position

    level = sorted(
        (index for index in range(hypergraph.edge_count) if admissible(index, 1)),
        key=lambda index: (ordering.rank(first_vertex[index]), index),
    )
    parents: list[dict[int, int]] = []
    for position in range(2, r + 1):
        reached: dict[int, int] = {}
        for index in level:
            edge = hypergraph.edges[index]
            for successor in starting_at.get(last_vertex[index], ()):
                if successor in reached or not admissible(successor, position):
                    continue
                if len(edge & hypergraph.edges[successor]) == 1:
                    reached[successor] = index
        if not reached:
            return None
        parents.append(reached)
        level = list(reached)

    if not level:
        return None

    tail = level[0]
    chain = [tail]
    for reached in reversed(parents):
        tail = reached[tail]
        chain.append(tail)
    return ChainCandidate(tuple(reversed(chain)))


def find_ordered_chain(
    hypergraph: Hypergraph, ordering: VertexOrdering, r: int
) -> ChainCandidate | None:
    """Some ordered r-chain in sigma, or None when there is none.

    Raises:
        UnsupportedInstanceError: If an edge has fewer than 2 vertices
        PreconditionError: If the ordering misses a vertex of some edge
    """
    return _find_chain(hypergraph, ordering, r, None)


def find_strong_ordered_chain(
    hypergraph: Hypergraph, ordering: VertexOrdering, labeling: EdgeLabeling, r: int
) -> ChainCandidate | None:
    """Some strong ordered r-chain in sigma under f, or None when there is none.

    Raises:
        UnsupportedInstanceError: If an edge has fewer than 2 vertices
        PreconditionError: If f is not total or the ordering misses a vertex
    """
    for index in range(hypergraph.edge_count):
        labeling.label(index)
    return _find_chain(hypergraph, ordering, r, labeling)


def _closes_bad_edge(
    hypergraph: Hypergraph,
    closing: list[int],
    targets: list[int | None],
    colors: list[int],
    vertex: int,
    color: int,
) -> bool:
    """Would giving vertex this color make one of the closing edges bad?"""
    for index in closing:
        target = targets[index]
        if target is not None and target != color:
            continue
        if all(colors[u] == color for u in hypergraph.edges[index] if u != vertex):
            return True
    return False


def greedy_color(
    hypergraph: Hypergraph,
    labeling: EdgeLabeling | None,
    ordering: VertexOrdering,
    r: int,
) -> PartialColoring:
    """Greedy coloring along sigma.

    Every vertex starts with color 1. Scanning sigma, a vertex that is the
    sigma-last vertex of at least one edge is recolored with the least color c
    for which no edge ending at it would become all c with f(A) = c (any c when
    labeling is None); if every color conflicts it gets color r.

    Without a strong ordered r-chain in sigma the result is good for f; with no
    labeling and no ordered r-chain it is proper.

    Raises:
        PreconditionError: If sigma does not cover every vertex or f is not total
    """
    if r < 1:
        raise InvalidParameterError(f"number of colors must be positive, got {r}")
    if len(ordering) != hypergraph.vertex_count or any(
        vertex not in ordering for vertex in hypergraph.vertices()
    ):
        raise PreconditionError("ordering must cover every vertex")

    ending_at: dict[int, list[int]] = {}
    for index, edge in enumerate(hypergraph.edges):
        last = max(edge, key=ordering.rank)
        ending_at.setdefault(last, []).append(index)

    targets = [
        None if labeling is None else labeling.label(index)
        for index in range(hypergraph.edge_count)
    ]
    colors = [1] * hypergraph.vertex_count

    for vertex in ordering.order:
        closing = ending_at.get(vertex)
        if not closing:
            continue
        colors[vertex] = next(
            (
                color
                for color in range(1, r + 1)
                if not _closes_bad_edge(hypergraph, closing, targets, colors, vertex, color)
            ),
            r,
        )

    return PartialColoring(tuple(colors), r)


def first_bad_edge(
    hypergraph: Hypergraph, labeling: EdgeLabeling, coloring: PartialColoring
) -> int | None:
    """Index of the first edge whose vertices all carry its own label, or None."""
    if not coloring.is_total:
        raise PreconditionError("coloring must be total")
    for index, edge in enumerate(hypergraph.edges):
        label = labeling.label(index)
        if all(coloring[v] == label for v in edge):
            return index
    return None


def is_good_coloring(
    hypergraph: Hypergraph, labeling: EdgeLabeling, coloring: PartialColoring
) -> bool:
    """True iff no edge A is colored entirely f(A)."""
    return first_bad_edge(hypergraph, labeling, coloring) is None


def first_monochromatic_edge(hypergraph: Hypergraph, coloring: PartialColoring) -> int | None:
    """Index of the first edge with a single color, or None."""
    if not coloring.is_total:
        raise PreconditionError("coloring must be total")
    for index, edge in enumerate(hypergraph.edges):
        if len({coloring[v] for v in edge}) == 1:
            return index
    return None


def is_proper_coloring(hypergraph: Hypergraph, coloring: PartialColoring, r: int) -> bool:
    """True iff the coloring uses colors 1..r and leaves no edge monochromatic."""
    if any(not 1 <= color <= r for color in coloring):
        raise PreconditionError(f"coloring uses colors outside 1..{r}")
    return first_monochromatic_edge(hypergraph, coloring) is None


def ordering_from_coloring(hypergraph: Hypergraph, coloring: PartialColoring) -> VertexOrdering:
    """Vertices sorted by color, ties by vertex id.

    For a coloring that is good for f this ordering has no strong ordered r-chain.
    """
    if len(coloring) != hypergraph.vertex_count:
        raise PreconditionError("coloring must cover every vertex")
    if not coloring.is_total:
        raise PreconditionError("coloring must be total")
    return VertexOrdering(tuple(sorted(hypergraph.vertices(), key=lambda v: (coloring[v], v))))
