"""Line-oriented text formats for hypergraphs, edge labelings and colorings.

Hypergraph::

    # comment
    v 3
    e 0 1
    e 1 2

An optional ``n <size>`` line after the header declares the uniformity.
Labelings use ``l <edge_index> <color>`` lines and colorings ``c <vertex> <color>``
lines, where color 0 means colorless.
"""

from collections.abc import Iterator
from pathlib import Path

from hyperchroma.errors import InvalidParameterError, ParseError
from hyperchroma.hypergraph import (
    EdgeLabeling,
    Hypergraph,
    PartialColoring,
    validate,
)


def _records(text: str) -> Iterator[tuple[int, str, list[str]]]:
    """Yield (line_number, tag, fields) for every non-comment, non-blank line."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, *fields = line.split()
        yield number, tag, fields


def _integers(fields: list[str], line: int) -> list[int]:
    values = []
    for token in fields:
        if not token.isdecimal():
            raise ParseError(f"expected a nonnegative integer, got {token!r}", line)
        values.append(int(token))
    return values


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the hypergraph text format.

    Raises:
        ParseError: On a malformed line, out-of-range id or missing header
    """
    vertex_count: int | None = None
    uniformity: int | None = None
    edges: list[frozenset[int]] = []

    for line, tag, fields in _records(text):
        if tag == "v":
            if vertex_count is not None:
                raise ParseError("duplicate 'v' header", line)
            values = _integers(fields, line)
            if len(values) != 1:
                raise ParseError("'v' header takes exactly one vertex count", line)
            vertex_count = values[0]
        elif tag == "n":
            if vertex_count is None or edges or uniformity is not None:
                raise ParseError("'n' line must directly follow the 'v' header", line)
            values = _integers(fields, line)
            if len(values) != 1 or values[0] < 1:
                raise ParseError("'n' line takes one positive edge size", line)
            uniformity = values[0]
        elif tag == "e":
            if vertex_count is None:
                raise ParseError("edge before 'v' header", line)
            vertices = _integers(fields, line)
            if not vertices:
                raise ParseError("empty edge", line)
            edge = frozenset(vertices)
            if len(edge) != len(vertices):
                raise ParseError("edge repeats a vertex", line)
            out_of_range = [v for v in vertices if v >= vertex_count]
            if out_of_range:
                raise ParseError(
                    f"vertex {out_of_range[0]} outside 0..{vertex_count - 1}", line
                )
            if uniformity is not None and len(edge) != uniformity:
                raise ParseError(f"edge has {len(edge)} vertices, expected {uniformity}", line)
            edges.append(edge)
        else:
            raise ParseError(f"unknown line tag {tag!r}", line)

    if vertex_count is None:
        raise ParseError("missing 'v <vertex_count>' header")
    return Hypergraph(vertex_count, tuple(edges), uniformity)


def serialize_hypergraph(hypergraph: Hypergraph) -> str:
    """Canonical text: header, optional uniformity, sorted ids per edge, edges in order.

    Raises:
        InvalidParameterError: If the hypergraph does not validate
    """
    result = validate(hypergraph)
    if not result.ok:
        raise InvalidParameterError(f"cannot serialize invalid hypergraph: {result.error}")

    lines = [f"v {hypergraph.vertex_count}"]
    if hypergraph.uniformity is not None:
        lines.append(f"n {hypergraph.uniformity}")
    lines.extend("e " + " ".join(str(v) for v in sorted(edge)) for edge in hypergraph.edges)
    return "\n".join(lines) + "\n"


def parse_labeling(
    text: str, hypergraph: Hypergraph | None = None, r: int | None = None
) -> EdgeLabeling:
    """Parse ``l <edge_index> <color>`` lines.

    Raises:
        ParseError: On malformed or duplicate entries, unknown edges, or labels outside 1..r
    """
    labels: dict[int, int] = {}
    for line, tag, fields in _records(text):
        if tag != "l":
            raise ParseError(f"unknown line tag {tag!r}", line)
        values = _integers(fields, line)
        if len(values) != 2:
            raise ParseError("'l' line takes an edge index and a color", line)
        index, color = values
        if index in labels:
            raise ParseError(f"edge {index} labeled twice", line)
        if hypergraph is not None and index >= hypergraph.edge_count:
            raise ParseError(f"edge {index} does not exist", line)
        if color < 1 or (r is not None and color > r):
            raise ParseError(f"label {color} outside 1..{r if r is not None else 'r'}", line)
        labels[index] = color
    return EdgeLabeling(labels)


def serialize_labeling(labeling: EdgeLabeling) -> str:
    """One ``l <edge_index> <color>`` line per labeled edge, by edge index."""
    return "".join(f"l {index} {labeling.labels[index]}\n" for index in sorted(labeling.labels))


def parse_coloring(text: str, vertex_count: int, r: int | None = None) -> PartialColoring:
    """Parse ``c <vertex> <color>`` lines covering every vertex exactly once.

    When r is None it is taken as the largest color present (at least 1).

    Raises:
        ParseError: On malformed, duplicate, missing or out-of-range entries
    """
    colors: dict[int, int] = {}
    for line, tag, fields in _records(text):
        if tag != "c":
            raise ParseError(f"unknown line tag {tag!r}", line)
        values = _integers(fields, line)
        if len(values) != 2:
            raise ParseError("'c' line takes a vertex id and a color", line)
        vertex, color = values
        if vertex >= vertex_count:
            raise ParseError(f"vertex {vertex} outside 0..{vertex_count - 1}", line)
        if vertex in colors:
            raise ParseError(f"vertex {vertex} colored twice", line)
        if r is not None and color > r:
            raise ParseError(f"color {color} outside 0..{r}", line)
        colors[vertex] = color

    missing = [v for v in range(vertex_count) if v not in colors]
    if missing:
        raise ParseError(f"vertex {missing[0]} has no color")
    palette = r if r is not None else max([1, *colors.values()])
    return PartialColoring(tuple(colors[v] for v in range(vertex_count)), palette)


def serialize_coloring(coloring: PartialColoring) -> str:
    """One ``c <vertex> <color>`` line per vertex; colorless vertices are written as 0."""
    return "".join(f"c {vertex} {color}\n" for vertex, color in enumerate(coloring))


def read_hypergraph(path: Path) -> Hypergraph:
    """Read a hypergraph file.

    Args:
        path: File with ``v``, optional ``n`` and ``e`` lines

    Returns:
        Parsed Hypergraph

    Raises:
        ParseError: If the file content is malformed
        OSError: If the file cannot be read
    """
    return parse_hypergraph(path.read_text(encoding="utf-8"))


def write_coloring(path: Path, coloring: PartialColoring) -> None:
    """Write a coloring file, creating parent directories as needed."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_coloring(coloring), encoding="utf-8")

