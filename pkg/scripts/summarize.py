#!/usr/bin/env python3
"""Print an end-of-horizon comparison table for a directory of case runs.

    python3 scripts/summarize.py --in out/
"""

import argparse
import sys
from pathlib import Path

from fuelcycle.tables import read_case_metrics


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--in", dest="in_dir", required=True, help="directory of case run dirs")
    args = ap.parse_args()

    rows = []
    for case_dir in sorted(Path(args.in_dir).iterdir()):
        if not (case_dir / "metrics.csv").exists():
            continue
        m = read_case_metrics(case_dir)
        last = m.rows[-1]
        rows.append(
            (
                case_dir.name,
                m.dt,
                m.paradigm,
                last["cum_shortage_offline_gwe_mo"],
                last["cum_wasted_batch_months"],
                last["generated_mwe"] / 1000.0,
                last["installed_mwe"] / 1000.0,
            )
        )
    if not rows:
        print(f"error: no metrics.csv found under {args.in_dir}", file=sys.stderr)
        return 1

    header = (
        f"{'case':<10} {'dt':>2} {'paradigm':<10} {'offline GWe-mo':>15} "
        f"{'wasted batch-mo':>16} {'final GWe':>10} {'installed GWe':>14}"
    )
    print(header)
    print("-" * len(header))
    for name, dt, paradigm, offline, wasted, gen, inst in rows:
        print(
            f"{name:<10} {dt:>2} {paradigm:<10} {offline:>15.1f} "
            f"{wasted:>16.1f} {gen:>10.1f} {inst:>14.1f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
