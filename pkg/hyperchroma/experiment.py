"""Seeded Monte Carlo sweeps of the two-phase colorer with CSV output."""

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from pathlib import Path

from hyperchroma.bounds import failure_probability_upper
from hyperchroma.chains import is_proper_coloring
from hyperchroma.colorer import color_hypergraph, derive_seed
from hyperchroma.config import ColorerConfig, ExperimentSpec
from hyperchroma.errors import PreconditionError
from hyperchroma.formats import read_hypergraph
from hyperchroma.hypergraph import Hypergraph, infer_uniformity, random_uniform
from hyperchroma.logger import RunLogger

CSV_VERSION_LINE = "# hyperchroma-csv v1"
EXPERIMENT_COLUMNS = (
    "trial",
    "seed",
    "n",
    "r",
    "m",
    "p",
    "attempts",
    "phase1_failures",
    "chain_failures",
    "success",
    "verified",
)


@dataclass(frozen=True)
class TrialRecord:
    """One coloring run. verified is set only after an independent properness check."""

    trial: int
    seed: int
    n: int | None
    r: int
    m: int
    p: float
    attempts: int
    phase1_failures: int
    chain_failures: int
    failure_kinds: tuple[str, ...]
    success: bool
    verified: bool


@dataclass(frozen=True)
class ExperimentSummary:
    """All trial records of one experiment and the analytic single-attempt failure bound."""

    spec: ExperimentSpec
    records: tuple[TrialRecord, ...]
    failure_bound: float | None

    @property
    def success_rate(self) -> float:
        return sum(record.success for record in self.records) / len(self.records)

    @property
    def first_attempt_failure_rate(self) -> float:
        failed = sum(1 for record in self.records if record.attempts > 1 or not record.success)
        return failed / len(self.records)

    @property
    def total_attempts(self) -> int:
        return sum(record.attempts for record in self.records)

    @property
    def total_phase1_failures(self) -> int:
        return sum(record.phase1_failures for record in self.records)

    @property
    def total_chain_failures(self) -> int:
        return sum(record.chain_failures for record in self.records)


def trial_instance(spec: ExperimentSpec, seed: int, source: Hypergraph | None) -> Hypergraph:
    """The fixed input instance, or a fresh random one drawn from the trial seed."""
    if spec.generator is None:
        if source is None:
            raise PreconditionError("experiment without a generator needs a source hypergraph")
        return source
    return random_uniform(spec.generator.v, spec.generator.n, spec.generator.m, seed)


def run_trial(spec: ExperimentSpec, trial: int, source: Hypergraph | None) -> TrialRecord:
    """Run one trial on the sub-seed derived from its index.

    Args:
        spec: Experiment parameters
        trial: Trial index; the trial seed is derived from it and the master seed
        source: Fixed instance for experiments without a generator

    Returns:
        TrialRecord; success requires the coloring to pass an independent check
    """
    seed = derive_seed(spec.seed, trial)
    hypergraph = trial_instance(spec, seed, source)
    config = ColorerConfig(r=spec.r, p=spec.p, max_retries=spec.max_retries, seed=seed)
    outcome = color_hypergraph(hypergraph, config)

    verified = outcome.coloring is not None and is_proper_coloring(
        hypergraph, outcome.coloring, spec.r
    )
    return TrialRecord(
        trial=trial,
        seed=seed,
        n=infer_uniformity(hypergraph),
        r=spec.r,
        m=hypergraph.edge_count,
        p=outcome.p,
        attempts=len(outcome.attempts),
        phase1_failures=outcome.phase1_failures,
        chain_failures=outcome.chain_failures,
        failure_kinds=tuple(
            record.failure_kind for record in outcome.attempts if record.failure_kind
        ),
        success=outcome.success and verified,
        verified=verified,
    )


def _failure_bound(records: tuple[TrialRecord, ...], r: int) -> float | None:
    first = records[0]
    if first.n is None or first.n < 2 or first.m < 1 or not 0 < first.p < 1:
        return None
    return failure_probability_upper(first.n, r, first.m, first.p)


def run_experiment(spec: ExperimentSpec, logger: RunLogger | None = None) -> ExperimentSummary:
    """Run every trial; trial t uses derive_seed(spec.seed, t) whatever the worker count.

    Results are collected in trial order, so serial and parallel runs agree.
    """
    source = read_hypergraph(spec.input_path) if spec.input_path is not None else None
    if logger:
        logger.info(f"Experiment: {spec.trials} trials, r={spec.r}, workers={spec.workers}")

    trials = range(spec.trials)
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as executor:
            records = tuple(executor.map(run_trial, repeat(spec), trials, repeat(source)))
    else:
        records = tuple(run_trial(spec, trial, source) for trial in trials)

    summary = ExperimentSummary(spec, records, _failure_bound(records, spec.r))
    if logger:
        logger.info(
            f"Experiment done: success rate {summary.success_rate:.4f}, "
            f"first-attempt failure rate {summary.first_attempt_failure_rate:.4f}, "
            f"bound {summary.failure_bound}"
        )
    return summary


def _number(value: float | None) -> str:
    if value is None or math.isnan(value):
        return ""
    return f"{value:.12g}"


def write_experiment_csv(summary: ExperimentSummary, path: Path) -> None:
    """Version line, header, one row per trial in order, then the summary row.

    The summary row has trial "summary"; attempts and failure columns hold totals,
    success holds the success rate and verified the analytic failure bound.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    first = summary.records[0]
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(CSV_VERSION_LINE + "\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(EXPERIMENT_COLUMNS)
        for record in summary.records:
            writer.writerow(
                [
                    record.trial,
                    record.seed,
                    record.n if record.n is not None else "",
                    record.r,
                    record.m,
                    _number(record.p),
                    record.attempts,
                    record.phase1_failures,
                    record.chain_failures,
                    str(record.success).lower(),
                    str(record.verified).lower(),
                ]
            )
        writer.writerow(
            [
                "summary",
                summary.spec.seed,
                first.n if first.n is not None else "",
                first.r,
                first.m,
                _number(first.p),
                summary.total_attempts,
                summary.total_phase1_failures,
                summary.total_chain_failures,
                _number(summary.success_rate),
                _number(summary.failure_bound),
            ]
        )
