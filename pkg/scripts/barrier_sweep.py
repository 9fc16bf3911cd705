#!/usr/bin/env python3
"""Sweep the omega = 0 obstruction for odd windows.

Runs the closed-form dilation scan for the first Hermite window and the
sampled reports for a small odd corpus, printing how far below 1/2 each
certified value sits (in log10 of the gap).
"""

import argparse
import math
import sys

from gaborcert import (
    combine,
    dilate,
    h1_barrier_scan,
    hermite,
    odd_barrier_suite,
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--b-min", type=float, default=0.1)
    parser.add_argument("--b-max", type=float, default=10.0)
    parser.add_argument("--steps", type=int, default=50)
    parser.add_argument("--out", default=None, help="write the scan CSV here")
    args = parser.parse_args(argv)

    scan = h1_barrier_scan(args.b_min, args.b_max, args.steps)
    print(f"dilation scan: {len(scan.rows)} rows, all_strict={scan.all_strict}")
    print(f"{'b':>10} {'delta0':>22} {'log10 gap lower bound':>22}")
    for row in scan.rows[:: max(1, len(scan.rows) // 10)]:
        print(f"{row.b:>10.4f} {row.delta0:>22.16f} {row.log_gap_lb / math.log(10):>22.2f}")
    if args.out is not None:
        scan.write_csv(args.out)
        print(f"wrote {args.out}")

    h1 = hermite(1)
    h3 = hermite(3)
    corpus = (
        h1,
        h3,
        hermite(5),
        dilate(h1, 0.7),
        combine([(1.0, h1), (0.2, h3)], label="h1+0.2*h3"),
    )
    print()
    print(f"{'window':<24} {'delta0':>22} {'strict':>7}")
    for report in odd_barrier_suite(corpus):
        print(f"{report.label:<24} {report.delta0:>22.16f} {str(report.strict):>7}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
