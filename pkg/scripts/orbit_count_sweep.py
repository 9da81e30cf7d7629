"""Compare boundary orbit counts 2 gcd(k, |h|) with tangency components found on a grid."""
import argparse
import time
from math import gcd

from bicontact.localforms import tangency_components


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=12)
    ap.add_argument("--grid-factor", type=int, default=8, help="grid size is factor * (k + |h|)")
    args = ap.parse_args()
    t0 = time.perf_counter()
    bad = 0
    for k in range(1, args.max + 1):
        row = []
        for h in range(1, args.max + 1):
            n = args.grid_factor * (k + h)
            comps = tangency_components(k, -h, n)
            bad += comps != 2 * gcd(k, h)
            row.append(f"{comps:>3}")
        print(f"k={k:<3}" + "".join(row))
    print(f"{bad} mismatches, {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
