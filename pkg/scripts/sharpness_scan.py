#!/usr/bin/env python3
"""Measure how tight the discrete-norm floors are on rank-one matrices.

The inverse-square-root family A = x x^T with x_i = 1 / sqrt(i) admits exact
closed forms for the spectral norm, the height, and both discrete norms, so
the gap between each discrete norm and its logarithmic upper cap
(2 ||A|| / sqrt(ln h) and 4 ||A|| / ln h) can be charted without any
enumeration.  Ratios near 1 mean the logarithmic loss in the floors is
essentially unavoidable.

Usage:
  $ python sharpness_scan.py
  $ python sharpness_scan.py --max-power 24
  $ python sharpness_scan.py --sizes 4 64 1024 --json sharpness.json
"""

import argparse
import json
import math
import sys

from specnorm import invsqrt_certificate


def scan_sizes(sizes):
    rows = []
    for n in sizes:
        cert = invsqrt_certificate(n)
        lh = math.log(cert.height)
        delta_cap = 2.0 * cert.spectral / math.sqrt(lh)
        rho_cap = 4.0 * cert.spectral / lh
        rows.append({
            "n": n,
            "spectral": cert.spectral,
            "height": cert.height,
            "delta_norm": cert.delta_norm,
            "rho_norm": cert.rho_norm,
            "delta_cap_ratio": cert.delta_norm / delta_cap,
            "rho_cap_ratio": cert.rho_norm / rho_cap,
        })
    return rows


def print_table(rows):
    head = (f"{'n':>8}  {'spectral':>12}  {'height':>10}  {'delta':>12}  "
            f"{'rho':>12}  {'delta/cap':>9}  {'rho/cap':>9}")
    print(head)
    for r in rows:
        print(f"{r['n']:>8}  {r['spectral']:>12.6f}  {r['height']:>10.6f}  "
              f"{r['delta_norm']:>12.6f}  {r['rho_norm']:>12.6f}  "
              f"{r['delta_cap_ratio']:>9.4f}  {r['rho_cap_ratio']:>9.4f}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=None,
                        help="explicit matrix sizes to certify (each >= 4)")
    parser.add_argument("--max-power", type=int, default=16,
                        help="without --sizes, scan n = 4, 8, ..., 2^max-power")
    parser.add_argument("--json", type=str, default=None,
                        help="write the table to this JSON file")
    args = parser.parse_args(argv)
    if args.sizes is not None:
        sizes = sorted(set(args.sizes))
        if any(n < 4 for n in sizes):
            parser.error("certificate sizes must be at least 4")
    else:
        if args.max_power < 2:
            parser.error("--max-power must be at least 2")
        sizes = [2**p for p in range(2, args.max_power + 1)]

    rows = scan_sizes(sizes)
    print_table(rows)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2, sort_keys=True)
        print(f"wrote {args.json}")
    # Every certified discrete norm must stay under its logarithmic cap.
    ok = all(r["delta_cap_ratio"] < 1.0 and r["rho_cap_ratio"] < 1.0 for r in rows)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
