#!/usr/bin/env python3
"""Run the four bundled cases and derive their metrics tables.

Thin wrapper over the ``fuelcycle`` CLI:

    python3 scripts/run_suite.py --out out/

After it finishes, render figures with the plots package:

    node plots/dist/render.js --in out/ --out out/figs/
"""

import argparse
import sys
import time

from fuelcycle.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="out", help="output directory (one subdir per case)")
    args = ap.parse_args()

    start = time.perf_counter()
    rc = cli_main(["run-all", "--out", args.out])
    if rc == 0:
        print(f"suite finished in {time.perf_counter() - start:.1f} s -> {args.out}/")
    return rc


if __name__ == "__main__":
    sys.exit(main())
