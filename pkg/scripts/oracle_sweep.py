#!/usr/bin/env python3
"""Certification verdicts next to finite-model frame bounds.

For a window and a ramp of co-volumes, prints the criterion verdict and
the A/B ratio of the snapped finite Gabor model, making the one-sided
nature of the criterion visible: verdicts certify frames, finite models
only gather evidence.
"""

import argparse
import sys

import numpy as np

from gaborcert import (
    ParameterNotRepresentable,
    certify,
    finite_frame_bounds,
    model_for,
)
from gaborcert.cli import parse_window_spec


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--window", default="gaussian")
    parser.add_argument("--delta-min", type=float, default=0.3)
    parser.add_argument("--delta-max", type=float, default=1.1)
    parser.add_argument("--steps", type=int, default=9)
    parser.add_argument("--n", type=int, default=240)
    args = parser.parse_args(argv)

    w = parse_window_spec(args.window)
    print(f"window: {w.label}   finite model dimension: {args.n}")
    print(f"{'delta':>8} {'verdict':>13} {'margin':>12} {'snapped':>9} {'A/B':>12}")
    for delta in np.linspace(args.delta_min, args.delta_max, args.steps):
        delta = round(float(delta), 12)
        verdict = certify(w, delta)
        try:
            model = model_for(w, delta, 1.0, args.n)
            bounds = finite_frame_bounds(model)
            snapped = f"{model.covolume:.4f}"
            ratio = f"{bounds.ratio:.3e}"
        except ParameterNotRepresentable:
            snapped, ratio = "-", "unrepresentable"
        print(
            f"{delta:>8.4f} {verdict.status:>13} {verdict.margin:>12.3e} "
            f"{snapped:>9} {ratio:>12}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
