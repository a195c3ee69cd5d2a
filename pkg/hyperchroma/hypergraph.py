"""Hypergraph representation, validation and instance generators."""

from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from hyperchroma.errors import InvalidParameterError, PreconditionError

COLORLESS = 0


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph H = (V, E) on dense vertex ids 0..vertex_count-1.

    Edges keep their input order and duplicates are stored as-is.

    Attributes:
        vertex_count: Number of vertices
        edges: Edge list, each edge a frozenset of vertex ids
        uniformity: Declared edge size n, or None when not declared
    """

    vertex_count: int
    edges: tuple[frozenset[int], ...] = ()
    uniformity: int | None = None

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[Iterable[int]],
        uniformity: int | None = None,
    ) -> "Hypergraph":
        """Build a hypergraph from any iterable of vertex-id iterables."""
        return cls(vertex_count, tuple(frozenset(edge) for edge in edges), uniformity)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def edge_sizes(self) -> tuple[int, ...]:
        return tuple(len(edge) for edge in self.edges)

    def vertices(self) -> range:
        return range(self.vertex_count)

    def incidence(self) -> list[list[int]]:
        """Edge indices containing each vertex, in edge order."""
        incident: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for index, edge in enumerate(self.edges):
            for vertex in edge:
                incident[vertex].append(index)
        return incident


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of validating a hypergraph.

    Attributes:
        ok: True when every invariant holds
        error: Description of the first violated invariant
        edge_index: Index of the offending edge, -1 when not edge-specific
    """

    ok: bool
    error: str = ""
    edge_index: int = -1


@dataclass(frozen=True)
class PartialColoring:
    """Per-vertex colors in {1..r}, with 0 standing for colorless."""

    colors: tuple[int, ...]
    r: int

    def __post_init__(self) -> None:
        if self.r < 1:
            raise InvalidParameterError(f"number of colors must be positive, got {self.r}")
        for vertex, color in enumerate(self.colors):
            if not COLORLESS <= color <= self.r:
                raise InvalidParameterError(
                    f"vertex {vertex} has color {color} outside 0..{self.r}"
                )

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, vertex: int) -> int:
        return self.colors[vertex]

    def __iter__(self) -> Iterator[int]:
        return iter(self.colors)

    @property
    def is_total(self) -> bool:
        return COLORLESS not in self.colors

    def colorless_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, color in enumerate(self.colors) if color == COLORLESS)


@dataclass(frozen=True)
class VertexOrdering:
    """An ordering sigma of a vertex subset, with its inverse rank map."""

    order: tuple[int, ...]
    position: Mapping[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        position = {vertex: rank for rank, vertex in enumerate(self.order)}
        if len(position) != len(self.order):
            raise InvalidParameterError("vertex ordering repeats a vertex")
        object.__setattr__(self, "position", position)

    @classmethod
    def identity(cls, vertex_count: int) -> "VertexOrdering":
        return cls(tuple(range(vertex_count)))

    def __len__(self) -> int:
        return len(self.order)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self.position

    def rank(self, vertex: int) -> int:
        """Rank of a vertex in the ordering.

        Raises:
            PreconditionError: If the vertex is not ordered
        """
        try:
            return self.position[vertex]
        except KeyError:
            raise PreconditionError(f"vertex {vertex} is not covered by the ordering") from None


@dataclass(frozen=True)
class EdgeLabeling:
    """A map f from edge indices to colors in {1..r}."""

    labels: Mapping[int, int]

    @classmethod
    def from_sequence(cls, labels: Sequence[int]) -> "EdgeLabeling":
        """Total labeling where edge i gets labels[i]."""
        return cls({index: label for index, label in enumerate(labels)})

    def __len__(self) -> int:
        return len(self.labels)

    def label(self, edge_index: int) -> int:
        """Label of an edge.

        Raises:
            PreconditionError: If the edge is unlabeled
        """
        try:
            return self.labels[edge_index]
        except KeyError:
            raise PreconditionError(f"edge {edge_index} has no label") from None

    def is_total_on(self, hypergraph: Hypergraph) -> bool:
        return all(index in self.labels for index in range(hypergraph.edge_count))

    def check_host(self, hypergraph: Hypergraph, r: int | None = None) -> None:
        """Check every labeled edge exists (and, given r, that labels lie in 1..r).

        Raises:
            InvalidParameterError: On the first offending entry
        """
        for index, label in self.labels.items():
            if not 0 <= index < hypergraph.edge_count:
                raise InvalidParameterError(f"labeled edge {index} does not exist")
            if r is not None and not 1 <= label <= r:
                raise InvalidParameterError(f"edge {index} has label {label} outside 1..{r}")


def validate(hypergraph: Hypergraph) -> ValidationResult:
    """Check the hypergraph invariants and report the first violation."""
    if hypergraph.vertex_count < 0:
        return ValidationResult(ok=False, error="vertex count is negative")
    if hypergraph.uniformity is not None and hypergraph.uniformity < 1:
        return ValidationResult(ok=False, error="uniformity must be positive")

    last = hypergraph.vertex_count - 1
    for index, edge in enumerate(hypergraph.edges):
        if not edge:
            return ValidationResult(ok=False, error=f"edge {index} is empty", edge_index=index)
        for vertex in sorted(edge):
            if not 0 <= vertex < hypergraph.vertex_count:
                return ValidationResult(
                    ok=False,
                    error=f"edge {index} has vertex {vertex} outside 0..{last}",
                    edge_index=index,
                )
        if hypergraph.uniformity is not None and len(edge) != hypergraph.uniformity:
            return ValidationResult(
                ok=False,
                error=f"edge {index} has {len(edge)} vertices, expected {hypergraph.uniformity}",
                edge_index=index,
            )
    return ValidationResult(ok=True)


def require_valid(hypergraph: Hypergraph) -> None:
    """Raise InvalidParameterError unless the hypergraph validates."""
    result = validate(hypergraph)
    if not result.ok:
        raise InvalidParameterError(f"invalid hypergraph: {result.error}")


def infer_uniformity(hypergraph: Hypergraph) -> int | None:
    """Declared uniformity, else the common edge size, else None."""
    if hypergraph.uniformity is not None:
        return hypergraph.uniformity
    sizes = set(hypergraph.edge_sizes)
    return sizes.pop() if len(sizes) == 1 else None


def complete_uniform(vertex_count: int, edge_size: int) -> Hypergraph:
    """All edge_size-subsets of {0..vertex_count-1}, in lexicographic order.

    Raises:
        InvalidParameterError: Unless 1 <= edge_size <= vertex_count
    """
    if not 1 <= edge_size <= vertex_count:
        raise InvalidParameterError(
            f"need 1 <= n <= v, got v={vertex_count}, n={edge_size}"
        )
    return Hypergraph.from_edges(
        vertex_count, combinations(range(vertex_count), edge_size), uniformity=edge_size
    )


def random_uniform(vertex_count: int, edge_size: int, edge_count: int, seed: int) -> Hypergraph:
    """Draw edge_count edges uniformly, with replacement, from all edge_size-subsets.

    The result is a pure function of the four arguments.

    Raises:
        InvalidParameterError: If edge_size > vertex_count or edge_count < 0
    """
    if not 1 <= edge_size <= vertex_count:
        raise InvalidParameterError(
            f"need 1 <= n <= v, got v={vertex_count}, n={edge_size}"
        )
    if edge_count < 0:
        raise InvalidParameterError(f"edge count must be nonnegative, got {edge_count}")

    rng = np.random.default_rng(seed)
    edges = [
        rng.choice(vertex_count, size=edge_size, replace=False).tolist()
        for _ in range(edge_count)
    ]
    return Hypergraph.from_edges(vertex_count, edges, uniformity=edge_size)


def fano_plane() -> Hypergraph:
    """The seven lines of the Fano plane: 3-uniform, 7 edges, not 2-colorable."""
    lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    return Hypergraph.from_edges(7, lines, uniformity=3)


def max_edge_degree(hypergraph: Hypergraph) -> int:
    """Largest number of other edges meeting a single edge.

    Duplicate copies of an edge count as distinct neighbours; the edge's own
    index does not.
    """
    incident = hypergraph.incidence()
    best = 0
    for index, edge in enumerate(hypergraph.edges):
        neighbours: set[int] = set()
        for vertex in edge:
            neighbours.update(incident[vertex])
        neighbours.discard(index)
        best = max(best, len(neighbours))
    return best

