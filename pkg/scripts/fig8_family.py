"""Sweep the figure-eight family: gluing data and class counts for k = 0..K."""
import argparse

from bicontact.assembly import classify, fig8_family
from bicontact.lattice import MULAMBDA, H1Class


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-k", type=int, default=10)
    ap.add_argument("--verbose", action="store_true", help="print every model of each family")
    args = ap.parse_args()
    print(f"{'k':>3} {'models':>6} {'classes':>7}  partition")
    for k in range(args.max_k + 1):
        fam = fig8_family(k)
        parts = classify(fam)
        print(f"{k:>3} {len(fam):>6} {len(parts):>7}  {parts}")
        if args.verbose:
            for n, m in enumerate(fam):
                g = m.gluings[0].map
                img = g(H1Class(1, n, MULAMBDA))
                print(f"      n={n:<3} m={2 * k - n:<3} map {g.matrix}  (1,{n}) -> {img.pair()}")


if __name__ == "__main__":
    main()
