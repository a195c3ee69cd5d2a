"""Tests for formats module."""

from pathlib import Path

import pytest

from hyperchroma.errors import InvalidParameterError, ParseError
from hyperchroma.formats import (
    parse_coloring,
    parse_hypergraph,
    parse_labeling,
    read_hypergraph,
    serialize_coloring,
    serialize_hypergraph,
    serialize_labeling,
    write_coloring,
)
from hyperchroma.hypergraph import EdgeLabeling, Hypergraph, PartialColoring


def test_parse_hypergraph() -> None:
    """Test parsing with comments, blank lines and a uniformity line."""
    text = "# a path\nv 4\nn 2\n\ne 0 1\ne 2 1\n  e 3 2  \n"

    hypergraph = parse_hypergraph(text)

    assert hypergraph.vertex_count == 4
    assert hypergraph.uniformity == 2
    assert hypergraph.edges == (frozenset({0, 1}), frozenset({1, 2}), frozenset({2, 3}))


def test_parse_hypergraph_without_edges() -> None:
    """Test a header-only file."""
    hypergraph = parse_hypergraph("v 5\n")

    assert hypergraph.vertex_count == 5
    assert hypergraph.edges == ()
    assert hypergraph.uniformity is None


@pytest.mark.parametrize(
    ("text", "line", "message"),
    [
        ("v 3\ne 0 3\n", 2, "outside"),
        ("v 3\ne 0 0\n", 2, "repeats"),
        ("v 3\ne\n", 2, "empty edge"),
        ("e 0 1\nv 3\n", 1, "before"),
        ("v 3\nv 4\n", 2, "duplicate"),
        ("v 3\nx 1\n", 2, "unknown"),
        ("v 3\ne 0 -1\n", 2, "nonnegative integer"),
        ("v 3\nn 2\ne 0 1 2\n", 3, "expected 2"),
        ("v 3\ne 0 1\nn 2\n", 3, "directly follow"),
    ],
)
def test_parse_hypergraph_errors(text: str, line: int, message: str) -> None:
    """Test that malformed lines are reported with their line number."""
    with pytest.raises(ParseError, match=message) as excinfo:
        parse_hypergraph(text)

    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}:")


def test_parse_hypergraph_missing_header() -> None:
    """Test that a file without a vertex count is rejected."""
    with pytest.raises(ParseError, match="missing"):
        parse_hypergraph("# nothing here\n")


def test_serialize_hypergraph_is_canonical() -> None:
    """Test canonical output: sorted vertex ids, edges in input order."""
    hypergraph = Hypergraph.from_edges(4, [(3, 1, 2), (1, 0, 2)], uniformity=3)

    text = serialize_hypergraph(hypergraph)

    assert text == "v 4\nn 3\ne 1 2 3\ne 0 1 2\n"
    assert parse_hypergraph(text) == hypergraph

    with pytest.raises(InvalidParameterError):
        serialize_hypergraph(Hypergraph.from_edges(2, [(0, 5)]))


def test_parse_labeling() -> None:
    """Test labeling parsing against a host hypergraph."""
    host = Hypergraph.from_edges(3, [(0, 1), (1, 2)])

    labeling = parse_labeling("l 1 2\nl 0 1\n", host, 2)

    assert labeling.label(0) == 1
    assert labeling.label(1) == 2
    assert serialize_labeling(labeling) == "l 0 1\nl 1 2\n"

    with pytest.raises(ParseError, match="twice"):
        parse_labeling("l 0 1\nl 0 2\n", host)

    with pytest.raises(ParseError, match="does not exist"):
        parse_labeling("l 2 1\n", host)

    with pytest.raises(ParseError, match="outside"):
        parse_labeling("l 0 3\n", host, 2)

    with pytest.raises(ParseError, match="outside"):
        parse_labeling("l 0 0\n", host)


def test_parse_coloring() -> None:
    """Test coloring parsing, including colorless entries."""
    coloring = parse_coloring("c 1 2\nc 0 1\nc 2 0\n", 3)

    assert coloring.colors == (1, 2, 0)
    assert coloring.r == 2
    assert serialize_coloring(coloring) == "c 0 1\nc 1 2\nc 2 0\n"

    with pytest.raises(ParseError, match="no color"):
        parse_coloring("c 0 1\n", 2)

    with pytest.raises(ParseError, match="twice"):
        parse_coloring("c 0 1\nc 0 2\n", 1)

    with pytest.raises(ParseError, match="outside 0..2"):
        parse_coloring("c 0 3\nc 1 1\n", 2, r=2)

    with pytest.raises(ParseError, match="outside 0..1"):
        parse_coloring("c 2 1\n", 2)


def test_file_helpers(tmp_path: Path) -> None:
    """Test reading hypergraph files and writing coloring files."""
    base = tmp_path
    (base / "h.hg").write_text("v 2\ne 0 1\n", encoding="utf-8")

    assert read_hypergraph(base / "h.hg").edge_count == 1

    write_coloring(base / "out" / "c.col", PartialColoring((1, 2), 2))
    assert (base / "out" / "c.col").read_text(encoding="utf-8") == "c 0 1\nc 1 2\n"


def test_labeling_round_trip_keeps_partial_maps() -> None:
    """Test that a partial labeling survives serialization."""
    labeling = EdgeLabeling({3: 2, 1: 1})

    assert parse_labeling(serialize_labeling(labeling)).labels == {1: 1, 3: 2}
