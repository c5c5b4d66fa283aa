"""Command-line interface.

    corebargain run --preset <I|II|config.yaml> --mode <robust|average>
                    [--runs R] [--steps T] [--seed S] [--out DIR]
    corebargain validate --config config.yaml
    corebargain check --dir DIR

Exit codes: 0 on success, 1 when an acceptance criterion fails, 2 on
configuration or assumption errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import AssumptionViolationError, ConfigurationError, InfeasibleSetError
from .harness import (
    check_acceptance,
    check_directory,
    export_csv,
    load_config,
    preset_config,
    run_experiment,
    validate_config,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corebargain",
        description="Monte Carlo simulator for decentralized TU-game bargaining",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a Monte Carlo experiment")
    p_run.add_argument(
        "--preset", required=True,
        help="built-in scenario I or II, or a path to a YAML config",
    )
    p_run.add_argument("--mode", choices=["robust", "average"], default=None)
    p_run.add_argument("--runs", type=int, default=None)
    p_run.add_argument("--steps", type=int, default=None)
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--out", default="corebargain_out")

    p_val = sub.add_parser("validate", help="check a config's assumptions only")
    p_val.add_argument("--config", required=True)

    p_chk = sub.add_parser("check", help="re-run acceptance on stored outputs")
    p_chk.add_argument("--dir", required=True)
    return parser


def _resolve_config(args):
    if args.preset in ("I", "II"):
        if args.mode is None:
            raise ConfigurationError("--mode is required with a built-in preset")
        cfg = preset_config(args.preset, args.mode, out_dir=args.out)
    else:
        path = Path(args.preset)
        if not path.exists():
            raise ConfigurationError(
                f"preset must be I, II, or an existing config file; got {args.preset!r}"
            )
        cfg = load_config(path, out_dir=args.out)
    overrides = {}
    if args.mode is not None and args.preset not in ("I", "II"):
        overrides["mode"] = args.mode
    if args.runs is not None:
        overrides["runs"] = args.runs
    if args.steps is not None:
        overrides["steps"] = args.steps
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if overrides:
        from dataclasses import replace

        cfg = replace(cfg, **overrides)
    return cfg


def _print_verdicts(verdicts) -> bool:
    all_ok = True
    for v in verdicts:
        print(f"[{'PASS' if v.passed else 'FAIL'}] {v.name}: {v.detail}")
        all_ok &= v.passed
    return all_ok


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            cfg = _resolve_config(args)
            result = run_experiment(cfg)
            paths = export_csv(result, args.out)
            print(f"wrote {paths['aggregate']} and {len(paths['runs'])} run files")
            ok = _print_verdicts(check_acceptance(result))
            return 0 if ok else 1
        if args.command == "validate":
            cfg = load_config(args.config)
            diag = validate_config(cfg)
            print(
                f"ok: alpha={diag['alpha']}, "
                f"connectivity window {diag['connectivity_window']} "
                f"(minimal feasible: {diag['min_connectivity_window']})"
            )
            return 0
        if args.command == "check":
            ok = _print_verdicts(check_directory(args.dir))
            return 0 if ok else 1
    except (ConfigurationError, AssumptionViolationError, InfeasibleSetError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
