#!/usr/bin/env python
"""CLI to run reputation ranking experiments and write their reports."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from reprank.attacks import AttackKind
from reprank.base import ExecutorType, ReprankError
from reprank.dataset_factory import DatasetType
from reprank.experiment import (
    ExperimentConfig,
    OutputFormat,
    build_config,
    emit_report,
    read_config_file,
    render_json,
    run,
)
from reprank.independence import TargetMode

# Flags that are not experiment settings
_CLI_ONLY = {"config", "log_level"}


def _comma_list(value: str) -> list[str]:
    return [part.strip() for part in value.split(",") if part.strip()]


def _setup_parser() -> argparse.ArgumentParser:
    """Set up argument parser with all CLI options.

    Every experiment option defaults to None so that a config file value is
    only overridden by flags actually given.
    """
    parser = argparse.ArgumentParser(
        description="Rank items by user reputation, measure demographic bias and attack robustness"
    )
    parser.add_argument(
        "--config", type=Path, default=None, help="Config file with key = value lines"
    )
    parser.add_argument(
        "--dataset",
        type=str,
        choices=[d.value for d in DatasetType],
        default=None,
        help="Dataset: movielens, bookcrossing, inline, demo (default: demo)",
    )
    parser.add_argument("--ratings", type=Path, default=None, help="Ratings file")
    parser.add_argument(
        "--users", type=Path, default=None, help="Users file (attributes file for inline)"
    )
    parser.add_argument(
        "--continent-table",
        type=Path,
        default=None,
        help="Country to continent table for BookCrossing (or REPRANK_CONTINENT_TABLE env var)",
    )
    parser.add_argument(
        "--max-rating",
        type=float,
        default=None,
        help="Rating scale maximum for inline datasets (default: largest rating)",
    )
    parser.add_argument(
        "--lambda", dest="lambda_", type=float, default=None, help="Discordance penalty (0.5)"
    )
    parser.add_argument(
        "--iterations",
        type=int,
        default=None,
        help="Run exactly this many engine iterations instead of iterating to --tol",
    )
    parser.add_argument("--tol", type=float, default=None, help="Convergence tolerance (1e-9)")
    parser.add_argument(
        "--mitigation",
        type=str,
        default=None,
        help="none, single:<attr>, sequential:<a,b>, multi:<a,b> (default: none)",
    )
    parser.add_argument(
        "--attributes",
        type=_comma_list,
        default=None,
        help="Attributes to report DR matrices for, comma-separated (default: all)",
    )
    parser.add_argument("--min-group-size", type=int, default=None, help="Smallest group kept (1)")
    parser.add_argument(
        "--recentring",
        type=str,
        choices=[t.value for t in TargetMode],
        default=None,
        help="Recentring targets: min (default) or global",
    )
    parser.add_argument(
        "--ddof",
        type=int,
        choices=[0, 1],
        default=None,
        help="Standard deviation divisor offset: 1 sample (default), 0 population",
    )
    parser.add_argument(
        "--pooled-variance",
        action="store_true",
        default=None,
        help="Use the pooled-variance location test instead of Welch's",
    )
    parser.add_argument("--alpha", type=float, default=None, help="Test level (0.05)")
    parser.add_argument(
        "--attack",
        type=_comma_list,
        default=None,
        help=f"Attack kinds, comma-separated: {', '.join(k.value for k in AttackKind)}",
    )
    parser.add_argument(
        "--attack-target",
        type=str,
        default=None,
        help="Target item of targeted attacks (default: most-rated item)",
    )
    parser.add_argument(
        "--attack-proportion",
        type=_comma_list,
        default=None,
        help="Attack proportions, comma-separated (default: 0.05 to 0.45 step 0.05)",
    )
    parser.add_argument(
        "--side-set-size", type=int, default=None, help="Side items per attacker (10)"
    )
    parser.add_argument(
        "--attack-runs", type=int, default=None, help="Seeds per attack cell (1)"
    )
    parser.add_argument(
        "--no-attacker-attributes",
        dest="attackers_in_partitions",
        action="store_const",
        const=False,
        default=None,
        help="Keep attackers out of demographic groups during mitigation",
    )
    parser.add_argument(
        "--split", type=float, default=None, help="Held-out test fraction for quality evaluation"
    )
    parser.add_argument(
        "--per-user-split",
        action="store_true",
        default=None,
        help="Hold out the test fraction of every user's ratings",
    )
    parser.add_argument("--seed", type=int, default=None, help="Random seed (0)")
    parser.add_argument(
        "--out", type=Path, default=None, help="Report path (JSON) or directory (CSV)"
    )
    parser.add_argument(
        "--format",
        type=str,
        choices=[f.value for f in OutputFormat],
        default=None,
        help="Report format: json (default) or csv",
    )
    parser.add_argument(
        "--timestamps",
        action="store_true",
        default=None,
        help="Record wall-clock start and end times in the report",
    )
    parser.add_argument(
        "--max-workers",
        type=int,
        default=None,
        help="Number of parallel workers for attack sweeps (default: 1, sequential)",
    )
    parser.add_argument(
        "--executor",
        type=str,
        choices=[e.value for e in ExecutorType],
        default=None,
        help="Executor type for parallel sweeps: thread (default), process",
    )
    parser.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="WARNING",
        help="Logging level (default: WARNING)",
    )
    return parser


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    """Merge the config file (if any) with the command-line flags."""
    file_values: dict[str, Any] = read_config_file(args.config) if args.config else {}
    overrides = {k: v for k, v in vars(args).items() if k not in _CLI_ONLY}
    return build_config(file_values, overrides)


def main(argv: Sequence[str] | None = None) -> None:
    parser = _setup_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s")

    try:
        config = _build_config(args)
    except ReprankError as e:
        print(f"Error: config: {e}", file=sys.stderr)
        sys.exit(1)

    if config.output_format == OutputFormat.CSV and config.out is None:
        print("Error: config: --format csv requires --out", file=sys.stderr)
        sys.exit(1)

    try:
        report = run(config)
    except ReprankError as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(1)

    if config.out is None:
        sys.stdout.write(render_json(report))
        return

    try:
        written = emit_report(report, config.out, config.output_format)
    except (OSError, ImportError, ReprankError) as e:
        print(f"Error: report: {e}", file=sys.stderr)
        sys.exit(1)
    for path in written:
        print(f"Wrote {path}", file=sys.stderr)


if __name__ == "__main__":
    main()
