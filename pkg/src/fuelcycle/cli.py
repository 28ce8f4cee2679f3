"""Command line entry points.

Subcommands:

* ``run``      — simulate one scenario (bundled case or YAML file) into an
                 output directory, then derive its metrics.csv.
* ``run-all``  — simulate the full bundled four-case suite.
* ``metrics``  — (re)derive metrics.csv from existing case tables.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from pathlib import Path

from fuelcycle.kernel import run_scenario
from fuelcycle.scenario import CASES, Scenario, load_bundled, load_scenario
from fuelcycle.tables import write_case_metrics


def _sharing_flag(value: str | None) -> bool | None:
    if value is None:
        return None
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def _load(args: argparse.Namespace) -> Scenario:
    if args.scenario:
        sc = load_scenario(args.scenario)
    else:
        sc = load_bundled(args.case)
    if args.seed is not None:
        sc = dataclasses.replace(sc, seed=args.seed)
    return sc


def _run_one(sc: Scenario, out_dir: Path, sharing: bool | None, quiet: bool) -> None:
    t0 = time.perf_counter()
    run_scenario(sc, out_dir, fuel_sharing_pref=sharing, quiet=quiet)
    write_case_metrics(out_dir)
    if not quiet:
        print(f"[{sc.case}] done in {time.perf_counter() - t0:.1f}s -> {out_dir}")


def _cmd_run(args: argparse.Namespace) -> int:
    sc = _load(args)
    _run_one(sc, Path(args.out), _sharing_flag(args.fuel_sharing_pref), args.quiet)
    return 0


def _cmd_run_all(args: argparse.Namespace) -> int:
    if args.suite != "eg23":
        print(f"unknown suite {args.suite!r}; available: eg23", file=sys.stderr)
        return 2
    sharing = _sharing_flag(args.fuel_sharing_pref)
    for case in CASES:
        sc = load_bundled(case)
        if args.seed is not None:
            sc = dataclasses.replace(sc, seed=args.seed)
        _run_one(sc, Path(args.out) / case, sharing, args.quiet)
    return 0


def _cmd_metrics(args: argparse.Namespace) -> int:
    root = Path(getattr(args, "in"))
    case_dirs = [root] if (root / "meta.yaml").exists() else sorted(
        p for p in root.iterdir() if (p / "meta.yaml").exists()
    )
    if not case_dirs:
        print(f"no case tables found under {root}", file=sys.stderr)
        return 2
    for d in case_dirs:
        path = write_case_metrics(d)
        if not args.quiet:
            print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fuelcycle", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--seed", type=int, default=None,
                        help="override the scenario seed recorded in meta.yaml")
        sp.add_argument("--fuel-sharing-pref", choices=("on", "off"), default=None,
                        help="override the scenario's fuel sharing preference policy")
        sp.add_argument("--quiet", "-q", action="store_true",
                        help="suppress progress output")

    run = sub.add_parser("run", help="simulate one scenario")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", help="path to a scenario YAML file")
    src.add_argument("--case", choices=CASES, help="bundled case id")
    run.add_argument("--out", required=True, help="output directory for this case")
    common(run)
    run.set_defaults(func=_cmd_run)

    run_all = sub.add_parser("run-all", help="simulate the bundled case suite")
    run_all.add_argument("--suite", default="eg23", help="suite name (default: eg23)")
    run_all.add_argument("--out", required=True,
                         help="output directory; one subdirectory per case")
    common(run_all)
    run_all.set_defaults(func=_cmd_run_all)

    metrics = sub.add_parser("metrics", help="derive metrics.csv from case tables")
    metrics.add_argument("--in", required=True, dest="in",
                         help="a case directory or a directory of case directories")
    metrics.add_argument("--quiet", "-q", action="store_true")
    metrics.set_defaults(func=_cmd_metrics)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as e:  # surface config/runtime failures as exit status
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
