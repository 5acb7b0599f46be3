"""Command-line runner.

Subcommands: ``reconstruct``, ``spectrum``, ``selftest``, ``reproduce-fig3``
(reconstruct with defaults over 100 seeds) and ``reproduce-fig4`` (spectrum
with defaults, 360 directions, 20 seeds).

Exit codes: 0 success, 1 config error, 2 numerical failure, 3 self-test failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys

import numpy as np

from .experiments import (
    ConfigError,
    ExperimentConfig,
    run_reconstruction_experiment,
    run_selftest,
    run_spectrum_experiment,
)
from .specfun import DomainError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_SELFTEST = 0, 1, 2, 3

_REPRO_SEEDS = {"reproduce-fig3": 100, "reproduce-fig4": 20}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rkfield", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("reconstruct", "spectrum", "reproduce-fig3", "reproduce-fig4"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config; omitted fields take the defaults")
        p.add_argument("--out", help="output directory for CSV and JSON files")
        p.add_argument("--seed", type=int)
        p.add_argument("--seeds", type=int)
        if name in ("spectrum", "reproduce-fig4"):
            p.add_argument("--n-directions", type=int)
    p = sub.add_parser("selftest")
    p.add_argument("--seed", type=int, default=2024)
    return parser


def _config(args) -> ExperimentConfig:
    cfg = ExperimentConfig.load(args.config) if args.config else ExperimentConfig()
    overrides = {}
    if args.command in _REPRO_SEEDS:
        overrides["seeds"] = _REPRO_SEEDS[args.command]
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.seeds is not None:
        overrides["seeds"] = args.seeds
    if getattr(args, "n_directions", None) is not None:
        overrides["n_directions"] = args.n_directions
    try:
        return dataclasses.replace(cfg, **overrides)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.command == "selftest":
        report = run_selftest(seed=args.seed)
        print(json.dumps(report, indent=2))
        return EXIT_OK if report["passed"] else EXIT_SELFTEST
    try:
        cfg = _config(args)
        if args.command in ("reconstruct", "reproduce-fig3"):
            report = run_reconstruction_experiment(cfg, args.out)
        else:
            report = run_spectrum_experiment(cfg, out_dir=args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (np.linalg.LinAlgError, DomainError, FloatingPointError) as exc:
        print(f"numerical failure in {args.command}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    report.pop("runs", None)
    print(json.dumps(report, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
