"""CLI commands for hyperchroma.

Exit status: 0 on success, 1 when the computation fails (no coloring found, a
check does not hold), 2 on unusable input or arguments.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import NoReturn

from pydantic import ValidationError

from hyperchroma.bounds import bound_table, empirical_c, lll_check, lll_max_degree, q_prime
from hyperchroma.chains import first_bad_edge, first_monochromatic_edge, is_proper_coloring
from hyperchroma.colorer import color_hypergraph, default_p, write_attempt_report
from hyperchroma.config import (
    BoundsInput,
    ColorerConfig,
    ExperimentSpec,
    GeneratorSpec,
    HyperchromaConfig,
    PSetting,
)
from hyperchroma.config_manager import ConfigManager
from hyperchroma.errors import HyperchromaError
from hyperchroma.experiment import run_experiment, write_experiment_csv
from hyperchroma.formats import (
    parse_coloring,
    parse_labeling,
    read_hypergraph,
    serialize_coloring,
    write_coloring,
)
from hyperchroma.hypergraph import Hypergraph, fano_plane
from hyperchroma.logger import RunLogger
from hyperchroma.oracles import (
    PropositionMismatch,
    SearchBudget,
    check_proposition_one,
    check_proposition_two,
    chromatic_number,
    exists_chain_free_ordering,
    exists_good_coloring,
    min_edges_uncolorable,
    random_small_hypergraphs,
    small_hypergraphs,
)

EXIT_FAILURE = 1
EXIT_USAGE = 2


def _fail(message: str, code: int = EXIT_FAILURE) -> NoReturn:
    print(f"✗ {message}", file=sys.stderr)
    sys.exit(code)


def parse_p(text: str) -> PSetting:
    """argparse type for --p: a float or the word "auto"."""
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        message = f"expected a probability or 'auto', got {text!r}"
        raise argparse.ArgumentTypeError(message) from None


def _profile(args: argparse.Namespace) -> str:
    return getattr(args, "profile", None) or ConfigManager.DEFAULT_PROFILE


def _run_logger(args: argparse.Namespace) -> RunLogger:
    level = logging.DEBUG if getattr(args, "verbose", False) else logging.INFO
    return RunLogger(_profile(args), level)


def _load_config(args: argparse.Namespace) -> HyperchromaConfig:
    return ConfigManager.load_for_profile(_profile(args))


def cmd_color(args: argparse.Namespace) -> None:
    """Color a hypergraph file with the two-phase algorithm.

    CLI: hyperchroma color --input H.hg --r R [--p P] [--seed S] [--max-retries K]
         [--out C.col] [--report attempts.csv]
    """
    try:
        hypergraph = read_hypergraph(Path(args.input))
        config = ColorerConfig.from_config(
            _load_config(args),
            r=args.r,
            p=args.p,
            seed=args.seed,
            max_retries=args.max_retries,
        )
    except (ValueError, OSError) as e:
        _fail(f"Invalid input: {e}", EXIT_USAGE)

    with _run_logger(args) as logger:
        try:
            outcome = color_hypergraph(hypergraph, config, logger)
            if args.report:
                write_attempt_report(outcome, Path(args.report))
        except (ValueError, OSError) as e:
            _fail(f"Cannot color: {e}", EXIT_USAGE)
        except HyperchromaError as e:
            logger.error(f"Coloring failed: {e}")
            _fail(f"Coloring failed: {e}")

    if not outcome.success or outcome.coloring is None:
        failures = sorted(outcome.failure_counts.items())
        counts = ", ".join(f"{kind}={count}" for kind, count in failures)
        _fail(f"No proper {config.r}-coloring after {len(outcome.attempts)} attempts ({counts})")

    if args.out:
        try:
            write_coloring(Path(args.out), outcome.coloring)
        except OSError as e:
            _fail(f"Cannot write coloring: {e}", EXIT_USAGE)
        print(f"✓ Proper {config.r}-coloring written to {args.out}")
    else:
        sys.stdout.write(serialize_coloring(outcome.coloring))
    print(
        f"✓ Found on attempt {len(outcome.attempts)} (p={outcome.p:.6g}, seed={config.seed})",
        file=sys.stderr,
    )


def cmd_experiment(args: argparse.Namespace) -> None:
    """Run a seeded Monte Carlo sweep and write the CSV.

    CLI: hyperchroma experiment (--input H.hg | --v V --n N --m M) --trials T --out runs.csv
         [--r R] [--p P] [--seed S] [--max-retries K] [--workers W]
    """
    config = _load_config(args)
    try:
        generator = None
        if args.input is None:
            generator = GeneratorSpec(v=args.v, n=args.n, m=args.m)
        spec = ExperimentSpec(
            input_path=Path(args.input) if args.input else None,
            generator=generator,
            r=args.r if args.r is not None else config.r,
            p=args.p if args.p is not None else config.p,
            trials=args.trials,
            max_retries=args.max_retries if args.max_retries is not None else config.max_retries,
            seed=args.seed if args.seed is not None else config.seed,
            workers=args.workers if args.workers is not None else config.workers,
            output_path=Path(args.out),
        )
    except ValidationError as e:
        _fail(f"Invalid experiment: {e}", EXIT_USAGE)

    with _run_logger(args) as logger:
        try:
            with logger.timed(f"Experiment of {spec.trials} trials"):
                summary = run_experiment(spec, logger)
            write_experiment_csv(summary, spec.output_path)
        except (ValueError, OSError) as e:
            _fail(f"Experiment failed: {e}", EXIT_USAGE)
        except HyperchromaError as e:
            logger.error(f"Experiment failed: {e}")
            _fail(f"Experiment failed: {e}")

    print(f"✓ {spec.trials} trials written to {spec.output_path}")
    print(f"  success rate: {summary.success_rate:.4f}")
    print(f"  first-attempt failure rate: {summary.first_attempt_failure_rate:.4f}")
    if summary.failure_bound is not None:
        print(f"  analytic failure bound: {summary.failure_bound:.6g}")


def cmd_bounds(args: argparse.Namespace) -> None:
    """Print the lower bounds on m(n, r) as natural logs.

    CLI: hyperchroma bounds --n N --r R [--q Q]
    """
    try:
        bounds = BoundsInput(n=args.n, r=args.r, q=args.q)
        rows = bound_table(bounds)
    except ValueError as e:
        _fail(f"Invalid bounds input: {e}", EXIT_USAGE)

    print(f"# Lower bounds on m(n={bounds.n}, r={bounds.r}) as natural logs")
    print(f"q'(r) = {q_prime(bounds.r):.12g}")
    try:
        print(f"default p = {default_p(bounds.n, bounds.r):.12g}")
    except ValueError as e:
        print(f"default p = - ({e})")
    print()
    print(f"{'bound':<6} {'log-value':>22} {'value':>14}  dominates")
    for row in rows:
        value = f"{row.value:.6g}" if row.value is not None else "-"
        marker = "yes" if row.dominates else "no"
        print(f"{row.name:<6} {row.log_value:>22.12g} {value:>14}  {marker}")


def cmd_verify(args: argparse.Namespace) -> None:
    """Check a coloring file against a hypergraph.

    CLI: hyperchroma verify --input H.hg --coloring C.col --r R [--labels f.lab]
    """
    try:
        hypergraph = read_hypergraph(Path(args.input))
        coloring_text = Path(args.coloring).read_text(encoding="utf-8")
        coloring = parse_coloring(coloring_text, hypergraph.vertex_count, args.r)
        if args.labels:
            labels_text = Path(args.labels).read_text(encoding="utf-8")
            labeling = parse_labeling(labels_text, hypergraph, args.r)
            bad = first_bad_edge(hypergraph, labeling, coloring)
        else:
            is_proper_coloring(hypergraph, coloring, args.r)
            bad = first_monochromatic_edge(hypergraph, coloring)
    except (ValueError, OSError) as e:
        _fail(f"Invalid input: {e}", EXIT_USAGE)

    if bad is not None:
        vertices = " ".join(str(v) for v in sorted(hypergraph.edges[bad]))
        kind = "colored entirely in its label" if args.labels else "monochromatic"
        _fail(f"Edge {bad} ({vertices}) is {kind}")
    if args.labels:
        print("✓ Coloring is good for the labeling")
    else:
        print(f"✓ Proper {args.r}-coloring")


def cmd_oracle_chromatic(args: argparse.Namespace) -> None:
    """Exact chromatic number by exhaustion.

    CLI: hyperchroma oracle chromatic --input H.hg
    """
    config = _load_config(args)
    try:
        hypergraph = read_hypergraph(Path(args.input))
        print(chromatic_number(hypergraph, time_cap=config.oracle_time_cap))
    except (ValueError, OSError) as e:
        _fail(f"Invalid input: {e}", EXIT_USAGE)
    except HyperchromaError as e:
        _fail(f"Search failed: {e}")


def _report_mismatches(mismatches: list[PropositionMismatch], what: str) -> None:
    if not mismatches:
        print(f"✓ {what}: no mismatches")
        return
    for mismatch in mismatches[:10]:
        edges = [sorted(edge) for edge in mismatch.hypergraph.edges]
        print(
            f"  v={mismatch.hypergraph.vertex_count} edges={edges} r={mismatch.r} "
            f"colorable={mismatch.colorable} chain_free={mismatch.chain_free}"
        )
    _fail(f"{what}: {len(mismatches)} mismatches")


def _oracle_instances(args: argparse.Namespace) -> list[Hypergraph]:
    if args.input:
        return [read_hypergraph(Path(args.input))]
    instances = list(small_hypergraphs(args.max_vertices, args.max_edges))
    if args.random:
        instances.extend(
            random_small_hypergraphs(args.random, (6, 7), args.max_edges, args.seed)
        )
    return instances


def cmd_oracle_prop1(args: argparse.Namespace) -> None:
    """Compare r-colorability with chain-free orderings.

    CLI: hyperchroma oracle prop1 [--input H.hg] [--max-vertices 5] [--max-edges 4]
         [--random 1000] [--r 2 3]
    """
    try:
        instances = _oracle_instances(args)
    except (ValueError, OSError) as e:
        _fail(f"Invalid input: {e}", EXIT_USAGE)

    with _run_logger(args) as logger:
        try:
            with logger.timed("Ordered-chain check"):
                mismatches = check_proposition_one(instances, args.r, logger)
        except (ValueError, HyperchromaError) as e:
            _fail(f"Check failed: {e}")
    _report_mismatches(mismatches, f"ordered chains over {len(instances)} instances")


def cmd_oracle_prop2(args: argparse.Namespace) -> None:
    """Compare good colorings with strong-chain-free orderings.

    CLI: hyperchroma oracle prop2 --input H.hg --labels f.lab --r R
         hyperchroma oracle prop2 [--max-vertices 5] [--max-edges 4] [--labelings 100] [--r 2 3]
    """
    try:
        if args.labels and (not args.input or len(args.r) != 1):
            raise ValueError("--labels needs --input and a single --r")
        instances = _oracle_instances(args)
        labeling = None
        if args.labels:
            labels_text = Path(args.labels).read_text(encoding="utf-8")
            labeling = parse_labeling(labels_text, instances[0], args.r[0])
    except (ValueError, OSError) as e:
        _fail(f"Invalid input: {e}", EXIT_USAGE)

    if labeling is not None:
        try:
            colorable = exists_good_coloring(instances[0], labeling, args.r[0])
            chain_free = exists_chain_free_ordering(instances[0], args.r[0], labeling)
        except (ValueError, HyperchromaError) as e:
            _fail(f"Check failed: {e}")
        print(f"good coloring exists: {colorable}")
        print(f"ordering without strong {args.r[0]}-chain exists: {chain_free}")
        if colorable != chain_free:
            _fail("the two sides disagree")
        print("✓ Both sides agree")
        return

    with _run_logger(args) as logger:
        try:
            with logger.timed("Strong-chain check"):
                mismatches = check_proposition_two(
                    instances, args.r, args.labelings, args.seed, logger
                )
        except (ValueError, HyperchromaError) as e:
            _fail(f"Check failed: {e}")
    _report_mismatches(mismatches, f"strong chains over {len(instances)} instances")


def cmd_oracle_m(args: argparse.Namespace) -> None:
    """Search the fewest edges of a non-r-colorable n-uniform hypergraph.

    CLI: hyperchroma oracle m --n N --r R --max-vertices K [--max-edges E] [--time-cap S]
    """
    config = _load_config(args)
    try:
        budget = SearchBudget(
            max_vertices=args.max_vertices,
            max_edges=args.max_edges,
            time_cap=args.time_cap if args.time_cap is not None else config.oracle_time_cap,
        )
        with _run_logger(args) as logger, logger.timed(f"m({args.n},{args.r}) search"):
            result = min_edges_uncolorable(args.n, args.r, budget, logger)
    except ValueError as e:
        _fail(f"Invalid search: {e}", EXIT_USAGE)
    except HyperchromaError as e:
        _fail(f"Search failed: {e}")

    if result.minimum is not None:
        edges = [sorted(edge) for edge in result.witness.edges] if result.witness else []
        print(f"✓ m({result.n},{result.r}) = {result.minimum}")
        print(f"  searched within {result.vertex_limit} vertices")
        print(f"  witness: {edges}")
        return

    status = "complete" if result.complete else "partial (time cap reached)"
    print(
        f"No witness with at most {result.searched_up_to} edges on "
        f"{result.vertex_limit} vertices; search {status}"
    )
    if (result.n, result.r) == (3, 2) and chromatic_number(fano_plane()) > 2:
        print("  upper witness: the Fano plane is not 2-colorable, so m(3,2) <= 7")


def cmd_lll(args: argparse.Namespace) -> None:
    """Local lemma feasibility at a given maximum edge degree.

    CLI: hyperchroma lll --n N --r R --max-degree D [--p P] [--find-max]
    """
    config = _load_config(args)
    try:
        p = args.p if args.p is not None else default_p(args.n, args.r)
        witness = lll_check(args.n, args.r, args.max_degree, p, config.lll_grid_points)
        if args.find_max:
            largest = lll_max_degree(args.n, args.r, p, grid_points=config.lll_grid_points)
            c = empirical_c(args.n, args.r, p, grid_points=config.lll_grid_points)
            print(f"largest accepted degree: {largest}")
            print(f"empirical c: {c:.6g}")
    except ValueError as e:
        _fail(f"Invalid input: {e}", EXIT_USAGE)

    if witness is None:
        _fail(f"No (x, y) found for D={args.max_degree} (p={p:.6g})")
    print(f"✓ D={args.max_degree}: x={witness.x:.6g}, y={witness.y:.6g} (p={p:.6g})")
    print(f"  log P1={witness.log_p1:.6g}, log P2={witness.log_p2:.6g}, profile={witness.profile}")


def cmd_config_show(args: argparse.Namespace) -> None:
    """Show merged configuration for a profile.

    CLI: hyperchroma config [--profile P]
    """
    try:
        profile = _profile(args)
        config = ConfigManager.load_for_profile(profile)

        print(f"# Configuration for profile: {profile}")
        print(config.model_dump_json(indent=2))

    except Exception as e:
        _fail(f"Failed to load config: {e}")


def cmd_config_set(args: argparse.Namespace) -> None:
    """Set a configuration value for a profile.

    CLI: hyperchroma config set <key> <value> [--profile P]
    """
    key: str = args.key
    raw_value: str = args.value
    profile = _profile(args)

    if key not in HyperchromaConfig.model_fields:
        valid_keys = ", ".join(HyperchromaConfig.model_fields.keys())
        print(f"✗ Unknown config key: {key}", file=sys.stderr)
        print(f"  Valid keys: {valid_keys}", file=sys.stderr)
        sys.exit(EXIT_FAILURE)

    try:
        current_config = ConfigManager.load_for_profile(profile)
        overrides = ConfigManager.get_profile_override(profile)

        test_config_data = current_config.model_dump()
        test_config_data[key] = raw_value
        parsed_value = getattr(HyperchromaConfig(**test_config_data), key)
    except ValidationError as e:
        for error in e.errors():
            if key in str(error["loc"]):
                _fail(f"Invalid value for {key}: {error['msg']}")
        _fail(f"Invalid config: {e}")
    except Exception as e:
        _fail(f"Failed to set config: {e}")

    overrides[key] = parsed_value
    ConfigManager.save_profile_override(profile, overrides)
    print(f"✓ Set {key}={parsed_value} for profile '{profile}'")


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=parse_p, help="Colorless probability or 'auto'")
    parser.add_argument("--seed", type=int, help="Master seed (unsigned 64-bit)")
    parser.add_argument("--max-retries", type=int, help="Attempts per coloring run")


def _add_family_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", help="Check a single hypergraph file instead of a family")
    parser.add_argument("--max-vertices", type=int, default=5, help="Vertex count of the family")
    parser.add_argument("--max-edges", type=int, default=4, help="Largest edge count")
    parser.add_argument("--random", type=int, default=0, help="Extra random instances")
    parser.add_argument("--seed", type=int, default=0, help="Seed for random instances")
    parser.add_argument("--r", type=int, nargs="+", default=[2, 3], help="Color counts to check")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="hyperchroma - randomized r-coloring of uniform hypergraphs"
    )
    parser.add_argument("--profile", default=None, help="Config profile (default: 'default')")
    parser.add_argument(
        "--verbose", action="store_true", help="Also log each failed attempt to the profile log"
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    parser_color = subparsers.add_parser("color", help="Color a hypergraph")
    parser_color.add_argument("--input", required=True, help="Hypergraph file")
    parser_color.add_argument("--r", type=int, required=True, help="Number of colors")
    _add_run_options(parser_color)
    parser_color.add_argument("--out", help="Coloring file (default: standard output)")
    parser_color.add_argument("--report", help="Per-attempt CSV report")
    parser_color.set_defaults(func=cmd_color)

    parser_experiment = subparsers.add_parser("experiment", help="Monte Carlo sweep")
    parser_experiment.add_argument("--input", help="Hypergraph file used by every trial")
    parser_experiment.add_argument("--v", type=int, help="Generator: vertex count")
    parser_experiment.add_argument("--n", type=int, help="Generator: edge size")
    parser_experiment.add_argument("--m", type=int, help="Generator: edge count")
    parser_experiment.add_argument("--r", type=int, help="Number of colors")
    _add_run_options(parser_experiment)
    parser_experiment.add_argument("--trials", type=int, default=1, help="Number of trials")
    parser_experiment.add_argument("--workers", type=int, help="Worker processes")
    parser_experiment.add_argument("--out", required=True, help="CSV output path")
    parser_experiment.set_defaults(func=cmd_experiment)

    parser_bounds = subparsers.add_parser("bounds", help="Evaluate the lower bounds on m(n, r)")
    parser_bounds.add_argument("--n", type=int, required=True, help="Edge size")
    parser_bounds.add_argument("--r", type=int, required=True, help="Number of colors")
    parser_bounds.add_argument("--q", type=float, help="Coefficient for eq1/eq6 (< q'(r))")
    parser_bounds.set_defaults(func=cmd_bounds)

    parser_verify = subparsers.add_parser("verify", help="Verify a coloring")
    parser_verify.add_argument("--input", required=True, help="Hypergraph file")
    parser_verify.add_argument("--coloring", required=True, help="Coloring file")
    parser_verify.add_argument("--r", type=int, required=True, help="Number of colors")
    parser_verify.add_argument("--labels", help="Edge labeling file (good-coloring check)")
    parser_verify.set_defaults(func=cmd_verify)

    parser_oracle = subparsers.add_parser("oracle", help="Exhaustive reference searches")
    oracle_subparsers = parser_oracle.add_subparsers(dest="oracle_command", required=True)

    parser_chromatic = oracle_subparsers.add_parser("chromatic", help="Exact chromatic number")
    parser_chromatic.add_argument("--input", required=True, help="Hypergraph file")
    parser_chromatic.set_defaults(func=cmd_oracle_chromatic)

    parser_prop1 = oracle_subparsers.add_parser("prop1", help="Colorability vs ordered chains")
    _add_family_options(parser_prop1)
    parser_prop1.set_defaults(func=cmd_oracle_prop1)

    parser_prop2 = oracle_subparsers.add_parser("prop2", help="Good colorings vs strong chains")
    _add_family_options(parser_prop2)
    parser_prop2.add_argument("--labels", help="Edge labeling file for --input")
    parser_prop2.add_argument("--labelings", type=int, default=100, help="Random labelings each")
    parser_prop2.set_defaults(func=cmd_oracle_prop2)

    parser_m = oracle_subparsers.add_parser("m", help="Search m(n, r) at desk scale")
    parser_m.add_argument("--n", type=int, required=True, help="Edge size")
    parser_m.add_argument("--r", type=int, required=True, help="Number of colors")
    parser_m.add_argument("--max-vertices", type=int, required=True, help="Vertex budget")
    parser_m.add_argument("--max-edges", type=int, default=8, help="Edge budget")
    parser_m.add_argument("--time-cap", type=float, help="Seconds before a partial result")
    parser_m.set_defaults(func=cmd_oracle_m)

    parser_lll = subparsers.add_parser("lll", help="Local lemma condition search")
    parser_lll.add_argument("--n", type=int, required=True, help="Edge size")
    parser_lll.add_argument("--r", type=int, required=True, help="Number of colors")
    parser_lll.add_argument("--max-degree", type=int, required=True, help="Maximum edge degree D")
    parser_lll.add_argument("--p", type=float, help="Colorless probability (default: formula)")
    parser_lll.add_argument("--find-max", action="store_true", help="Also report the largest D")
    parser_lll.set_defaults(func=cmd_lll)

    parser_config = subparsers.add_parser("config", help="Manage configuration")
    config_subparsers = parser_config.add_subparsers(dest="config_command")
    parser_config.set_defaults(func=cmd_config_show)

    parser_config_set = config_subparsers.add_parser("set", help="Set config value")
    parser_config_set.add_argument("key", help="Config key (r, p, max_retries, seed, ...)")
    parser_config_set.add_argument("value", help="Config value")
    parser_config_set.set_defaults(func=cmd_config_set)

    return parser


def main(argv: list[str] | None = None) -> None:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "func"):
        ConfigManager.initialize_default()
        args.func(args)
    else:
        parser.print_help()
        sys.exit(EXIT_USAGE)


if __name__ == "__main__":
    main()
