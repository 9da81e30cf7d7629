"""Powers of t1 t2 on H1 of the torus, and second chains cancelling the first."""
import argparse
from math import gcd

from bicontact.mcg import check_chain_relation, self_surgery_quadruple


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=6, help="|p|, |q| range for the second chain")
    args = ap.parse_args()
    rep = check_chain_relation(24)
    for k, m in rep["powers"].items():
        print(f"(t1 t2)^{k:<3} = {m}")
    print(f"first trivial power: {rep['order']} ({rep['status']})")
    ok = total = 0
    for p in range(-args.bound, args.bound + 1):
        for q in range(-args.bound, args.bound + 1):
            if gcd(p, q) != 1 or abs(p) + abs(q) == 1:
                continue
            total += 1
            ok += self_surgery_quadruple(p, q)["status"] == "pass"
    print(f"second chains with four distinct curves and trivial product: {ok}/{total}")


if __name__ == "__main__":
    main()
