"""Run the full vanishing check for a range of genera and print the reports.

    python scripts/run_verification.py 2 3
    python scripts/run_verification.py 4 --stretch --cache-dir /tmp/fillsys-cache
"""

import argparse
import sys
from pathlib import Path

from fillsys.figures import verify_vanishing


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("genera", type=int, nargs="*", default=[2, 3])
    ap.add_argument("--stretch", action="store_true")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--cache-dir", type=Path)
    ap.add_argument("--machine", action="store_true", help="CHECK lines only")
    args = ap.parse_args()

    ok = True
    for g in args.genera:
        report = verify_vanishing(g, stretch=args.stretch, workers=args.workers, cache_dir=args.cache_dir)
        sys.stdout.write(report.machine() if args.machine else report.text())
        ok &= report.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
