"""Surgery on (ci, cj, ci) at increasing levels versus the double chain (ti tj)^2."""
import json
from fractions import Fraction

from bicontact.plug import new_plug
from bicontact.surface import torus_fiber
from bicontact.surgery import surgery_sequence


def main():
    for first, second in (("c1", "c2"), ("c2", "c1")):
        seq = [(first, 1, Fraction(1)), (second, 1, Fraction(2)), (first, 1, Fraction(3))]
        _, rep = surgery_sequence(new_plug(torus_fiber(1), 1), seq)
        print(f"{first} {second} {first}:")
        print(json.dumps(rep["double_chain"], indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
