#!/usr/bin/env python3
"""Scan the scaled sphere-energy maxima for boundedness.

For each order m the quantity max_j tau_m(j) * sqrt(m) / phi^(2m) is computed
in one log-space sweep and compared against a fixed anchor order and a
sliding-window maximum.  A bounded, eventually flat profile is the expected
outcome; the script exits nonzero if the sweep exceeds the anchor ratio cap
or if the windowed maximum grows by more than the allowed factor.

Usage:
  $ python tau_growth_scan.py
  $ python tau_growth_scan.py --m-max 2000 --stride 100
  $ python tau_growth_scan.py --m-max 600 --json sweep.json
"""

import argparse
import json
import math
import sys
import time

import numpy as np

from specnorm import tau_max_scan, tau_scaled_sweep


def windowed_max(sweep, start, width):
    """Max over [t, t + width) for each t in [start, len(sweep) - width]."""
    stop = sweep.shape[0] - width
    return np.array([sweep[t:t + width].max() for t in range(start, stop + 1)])


def run_scan(m_max, anchor, window, cap_ratio, growth_tol):
    t0 = time.perf_counter()
    sweep = tau_scaled_sweep(m_max)
    elapsed = time.perf_counter() - t0
    anchor_value = float(sweep[anchor])
    # Cross-check the log-space sweep against one exact big-integer scan.
    exact = tau_max_scan(anchor).max_scaled
    if not math.isclose(anchor_value, exact, rel_tol=1e-9):
        raise AssertionError(f"sweep anchor {anchor_value} != exact scan {exact}")
    peak = float(np.nanmax(sweep))
    peak_at = int(np.nanargmax(sweep))
    bounded = peak <= cap_ratio * anchor_value
    wins = windowed_max(sweep, start=min(5 * anchor, m_max // 2), width=window)
    flat = bool(np.all(wins[1:] <= wins[:-1] * (1.0 + growth_tol)))
    return {
        "m_max": m_max,
        "anchor": anchor,
        "anchor_value": anchor_value,
        "peak": peak,
        "peak_at": peak_at,
        "peak_over_anchor": peak / anchor_value,
        "bounded": bounded,
        "window": window,
        "windowed_flat": flat,
        "seconds": elapsed,
        "sweep": [float(v) for v in sweep[1:]],
    }


def print_table(result, stride):
    sweep = result["sweep"]
    print(f"{'m':>6}  {'max_scaled':>12}")
    for m in range(stride, result["m_max"] + 1, stride):
        print(f"{m:>6}  {sweep[m - 1]:>12.8f}")
    print()
    print(f"anchor m={result['anchor']}: {result['anchor_value']:.10f}")
    print(f"peak {result['peak']:.10f} at m={result['peak_at']} "
          f"({result['peak_over_anchor']:.4f}x anchor)")
    print(f"windowed max flat within tolerance: {result['windowed_flat']}")
    print(f"sweep time: {result['seconds']:.1f}s")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--m-max", type=int, default=1000,
                        help="largest order to sweep (default 1000)")
    parser.add_argument("--anchor", type=int, default=100,
                        help="order used as the boundedness reference")
    parser.add_argument("--window", type=int, default=50,
                        help="width of the sliding maximum window")
    parser.add_argument("--cap-ratio", type=float, default=3.0,
                        help="allowed peak / anchor ratio")
    parser.add_argument("--growth-tol", type=float, default=0.05,
                        help="allowed relative growth between windows")
    parser.add_argument("--stride", type=int, default=50,
                        help="row spacing of the printed table")
    parser.add_argument("--json", type=str, default=None,
                        help="write the full sweep to this JSON file")
    args = parser.parse_args(argv)
    if args.anchor < 1 or args.anchor > args.m_max:
        parser.error("--anchor must lie in [1, --m-max]")
    if args.window < 1 or args.window > args.m_max:
        parser.error("--window must lie in [1, --m-max]")

    result = run_scan(args.m_max, args.anchor, args.window,
                      args.cap_ratio, args.growth_tol)
    print_table(result, max(args.stride, 1))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(result, fh, indent=2, sort_keys=True)
        print(f"wrote {args.json}")
    return 0 if (result["bounded"] and result["windowed_flat"]) else 1


if __name__ == "__main__":
    sys.exit(main())
