"""Tests for colorer module."""

import csv
import logging
import math
from itertools import permutations
from pathlib import Path

import numpy as np
import pytest
from pytest import MonkeyPatch

from hyperchroma.chains import find_strong_ordered_chain, is_proper_coloring
from hyperchroma.colorer import (
    ATTEMPT_REPORT_COLUMNS,
    BadEdgeKind,
    build_truncated,
    classify_edge,
    color_hypergraph,
    default_p,
    derive_seed,
    merge_colorings,
    phase1,
    phase2,
    resolve_p,
    write_attempt_report,
)
from hyperchroma.config import ColorerConfig
from hyperchroma.config_manager import ConfigManager
from hyperchroma.errors import InvalidParameterError, PreconditionError, UnsupportedInstanceError
from hyperchroma.hypergraph import (
    Hypergraph,
    PartialColoring,
    VertexOrdering,
    fano_plane,
    random_uniform,
)
from hyperchroma.logger import RunLogger


@pytest.mark.parametrize(
    ("colors", "expected"),
    [
        ((1, 1, 1), BadEdgeKind.MONOCHROMATIC),
        ((2, 0, 2), BadEdgeKind.ALMOST_MONOCHROMATIC),
        ((0, 0, 0), BadEdgeKind.FULLY_COLORLESS),
        ((1, 0, 0), None),
        ((1, 2, 0), None),
        ((1, 2, 2), None),
        ((0, 3), BadEdgeKind.ALMOST_MONOCHROMATIC),
    ],
)
def test_classify_edge(colors: tuple[int, ...], expected: BadEdgeKind | None) -> None:
    """Test phase-1 screening of a single edge."""
    assert classify_edge(colors) == expected


def test_derive_seed() -> None:
    """Test that sub-seeds are stable, distinct and 64-bit."""
    assert derive_seed(42, 0) == derive_seed(42, 0)
    assert derive_seed(42, 0) != derive_seed(42, 1)
    assert derive_seed(42, 0) != derive_seed(43, 0)
    assert 0 <= derive_seed(2**64 - 1, 10**6) < 2**64


def test_default_p() -> None:
    """Test the closed-form colorless probability."""
    assert default_p(10, 2) == pytest.approx(0.26784721, abs=1e-7)
    assert 0 < default_p(2, 2) < 1
    assert default_p(1000, 2) < default_p(100, 2)

    with pytest.raises(InvalidParameterError):
        default_p(1, 2)

    with pytest.raises(InvalidParameterError):
        default_p(10, 1)


def test_resolve_p() -> None:
    """Test explicit and automatic p."""
    uniform = Hypergraph.from_edges(6, [(0, 1, 2), (3, 4, 5)])
    mixed = Hypergraph.from_edges(6, [(0, 1), (3, 4, 5)])

    assert resolve_p(0.2, mixed, 2) == 0.2
    assert resolve_p("auto", uniform, 2) == default_p(3, 2)

    with pytest.raises(UnsupportedInstanceError):
        resolve_p("auto", mixed, 2)


def test_phase1_extremes() -> None:
    """Test phase 1 at p = 0 and p = 1."""
    hypergraph = Hypergraph.from_edges(4, [(0, 1, 2, 3)])
    rng = np.random.default_rng(0)

    outcome = phase1(hypergraph, 3, 0.0, rng)
    assert outcome.coloring.is_total

    outcome = phase1(hypergraph, 3, 1.0, rng)
    assert outcome.coloring.colorless_vertices() == (0, 1, 2, 3)
    assert outcome.bad_kind == BadEdgeKind.FULLY_COLORLESS
    assert outcome.bad_edge == 0
    assert outcome.verdict == "bad-edge"

    with pytest.raises(InvalidParameterError):
        phase1(hypergraph, 3, 1.5, rng)


def test_phase1_is_reproducible() -> None:
    """Test that phase 1 depends only on the generator state."""
    hypergraph = random_uniform(40, 5, 20, seed=1)

    first = phase1(hypergraph, 2, 0.3, np.random.default_rng(9))
    second = phase1(hypergraph, 2, 0.3, np.random.default_rng(9))

    assert first == second


def test_phase1_term_frequencies() -> None:
    """Test single-edge bad-event frequencies against their exact probabilities."""
    n, r, trials = 8, 2, 100_000
    p = default_p(n, r)
    q = (1 - p) / r
    hypergraph = Hypergraph.from_edges(n, [range(n)])
    rng = np.random.default_rng(123)

    counts = dict.fromkeys(BadEdgeKind, 0)
    for _ in range(trials):
        kind = phase1(hypergraph, r, p, rng).bad_kind
        if kind is not None:
            counts[kind] += 1

    expected = {
        BadEdgeKind.MONOCHROMATIC: r * q**n,
        BadEdgeKind.ALMOST_MONOCHROMATIC: r * n * p * q ** (n - 1),
        BadEdgeKind.FULLY_COLORLESS: p**n,
    }
    for kind, probability in expected.items():
        standard_error = math.sqrt(probability * (1 - probability) / trials)
        assert abs(counts[kind] / trials - probability) <= 3 * standard_error, kind


def test_build_truncated() -> None:
    """Test truncated edges, their origins and labels."""
    hypergraph = Hypergraph.from_edges(5, [(0, 1, 2), (1, 2, 3), (2, 3, 4)])
    coloring = PartialColoring((1, 0, 0, 2, 1), 2)

    truncated = build_truncated(hypergraph, coloring)

    assert truncated.vertices == (1, 2)
    assert truncated.edges == (frozenset({1, 2}), frozenset({1, 2}))
    assert truncated.origins == (0, 1)
    assert truncated.labeling.labels == {0: 1, 1: 2}
    assert truncated.local().edges == (frozenset({0, 1}), frozenset({0, 1}))


def test_build_truncated_requires_screening() -> None:
    """Test that a coloring with a bad edge is refused."""
    hypergraph = Hypergraph.from_edges(3, [(0, 1, 2)])

    with pytest.raises(PreconditionError):
        build_truncated(hypergraph, PartialColoring((1, 1, 0), 2))

    with pytest.raises(PreconditionError):
        build_truncated(hypergraph, PartialColoring((1, 2), 2))


def test_phase2_completes_truncated_coloring() -> None:
    """Test that phase 2 plus merging yields a proper coloring."""
    hypergraph = Hypergraph.from_edges(5, [(0, 1, 2), (1, 2, 3), (2, 3, 4)])
    first = PartialColoring((1, 0, 0, 2, 1), 2)
    truncated = build_truncated(hypergraph, first)

    for seed in range(5):
        second = phase2(truncated, 2, np.random.default_rng(seed))
        assert second.ok
        assert second.chain is None
        merged = merge_colorings(first, truncated, second.coloring)
        assert merged.is_total
        assert merged[0] == 1 and merged[3] == 2 and merged[4] == 1
        assert is_proper_coloring(hypergraph, merged, 2)


def test_phase2_reports_blocking_chain() -> None:
    """Test that exactly one of the six orderings blocks phase 2 with a strong chain."""
    hypergraph = Hypergraph.from_edges(5, [(0, 1, 2), (2, 3, 4)])
    first = PartialColoring((1, 0, 0, 0, 2), 2)
    truncated = build_truncated(hypergraph, first)
    local = truncated.local()
    assert local.edges == (frozenset({0, 1}), frozenset({1, 2}))

    blocking = [
        order
        for order in permutations(range(local.vertex_count))
        if find_strong_ordered_chain(local, VertexOrdering(order), truncated.labeling, 2)
        is not None
    ]
    assert blocking == [(0, 1, 2)]

    outcomes = [phase2(truncated, 2, np.random.default_rng(seed)) for seed in range(2000)]
    failures = sum(not outcome.ok for outcome in outcomes)
    assert failures / len(outcomes) == pytest.approx(1 / 6, abs=0.05)

    for outcome in outcomes:
        chain = find_strong_ordered_chain(local, outcome.ordering, truncated.labeling, 2)
        assert outcome.ok == (chain is None)
        assert outcome.chain == chain


def test_color_hypergraph_triangle(triangle: Hypergraph) -> None:
    """Test coloring a triangle with three colors."""
    outcome = color_hypergraph(triangle, ColorerConfig(r=3, seed=1))

    assert outcome.success
    assert outcome.coloring is not None
    assert is_proper_coloring(triangle, outcome.coloring, 3)
    assert outcome.attempts[-1].success
    assert all(not record.success for record in outcome.attempts[:-1])
    assert outcome.p == default_p(2, 3)


def test_color_hypergraph_is_deterministic() -> None:
    """Test that the outcome is a pure function of input and seed."""
    hypergraph = random_uniform(60, 6, 40, seed=3)
    config = ColorerConfig(r=2, seed=99)

    assert color_hypergraph(hypergraph, config) == color_hypergraph(hypergraph, config)


def test_color_hypergraph_never_succeeds_on_uncolorable() -> None:
    """Test that the Fano plane is never reported 2-colored."""
    outcome = color_hypergraph(fano_plane(), ColorerConfig(r=2, p=0.3, max_retries=50))

    assert not outcome.success
    assert outcome.coloring is None
    assert len(outcome.attempts) == 50
    assert sum(outcome.failure_counts.values()) == 50
    assert outcome.phase1_failures + outcome.chain_failures == 50


def test_color_hypergraph_empty() -> None:
    """Test a hypergraph without edges."""
    outcome = color_hypergraph(Hypergraph(4), ColorerConfig(r=2, seed=1))

    assert outcome.success
    assert outcome.coloring == PartialColoring((1, 1, 1, 1), 2)
    assert len(outcome.attempts) == 1
    assert math.isnan(outcome.p)

    explicit = color_hypergraph(Hypergraph(0), ColorerConfig(r=2, p=0.2))
    assert explicit.success
    assert explicit.p == 0.2


def test_color_hypergraph_rejects_unsupported_input() -> None:
    """Test invalid and unsupported instances."""
    with pytest.raises(UnsupportedInstanceError):
        color_hypergraph(Hypergraph.from_edges(2, [(0,), (0, 1)]), ColorerConfig(p=0.1))

    with pytest.raises(InvalidParameterError):
        color_hypergraph(Hypergraph.from_edges(2, [(0, 4)]), ColorerConfig(p=0.1))

    with pytest.raises(UnsupportedInstanceError):
        color_hypergraph(Hypergraph.from_edges(4, [(0, 1), (1, 2, 3)]), ColorerConfig())


def test_color_hypergraph_non_uniform_with_explicit_p() -> None:
    """Test that mixed edge sizes work when p is given."""
    hypergraph = Hypergraph.from_edges(8, [(0, 1, 2), (2, 3, 4, 5), (5, 6, 7), (0, 7)])

    outcome = color_hypergraph(hypergraph, ColorerConfig(r=2, p=0.2, seed=4))

    assert outcome.success
    assert is_proper_coloring(hypergraph, outcome.coloring, 2)


def test_write_attempt_report(tmp_path: Path) -> None:
    """Test the per-attempt CSV report."""
    outcome = color_hypergraph(fano_plane(), ColorerConfig(r=2, p=0.3, max_retries=5))
    path = tmp_path / "reports" / "attempts.csv"

    write_attempt_report(outcome, path)

    with open(path, encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    assert tuple(rows[0]) == ATTEMPT_REPORT_COLUMNS
    assert len(rows) == 6
    assert [row[0] for row in rows[1:]] == ["0", "1", "2", "3", "4"]
    assert all(row[-1] == "false" for row in rows[1:])


def test_color_hypergraph_logs_failed_attempts(
    temp_hyperchroma_home: Path, monkeypatch: MonkeyPatch
) -> None:
    """Test that each failed attempt is logged with its seed at debug level."""
    monkeypatch.setattr(ConfigManager, "HYPERCHROMA_HOME", temp_hyperchroma_home)
    config = ColorerConfig(r=2, p=0.3, max_retries=5, seed=4)

    with RunLogger("attempts", level=logging.DEBUG) as logger:
        outcome = color_hypergraph(fano_plane(), config, logger)
        text = logger.log_path.read_text(encoding="utf-8")

    assert not outcome.success
    for record in outcome.attempts:
        assert f"DEBUG - Attempt {record.attempt} (seed {record.seed}): " in text
    assert "WARNING - No coloring after 5 attempts" in text
