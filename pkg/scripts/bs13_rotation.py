"""Translation numbers for the BS(1,3) circle action as the iteration count grows.

    python scripts/bs13_rotation.py --max-n 10000
"""
import argparse

from liftobs.circle import build_bs13_action, translation_number
from liftobs.words import abelianization, baumslag_solitar


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=10_000)
    args = ap.parse_args()

    f, g = build_bs13_action()
    n = 10
    while n <= args.max_n:
        fi, gi = translation_number(f, n), translation_number(g, n)
        print(f"n={n:>6}  tau(f) in [{float(fi.lo):+.6f}, {float(fi.hi):+.6f}]"
              f"  tau(g) in [{float(gi.lo):+.6f}, {float(gi.hi):+.6f}]")
        n *= 10
    ab = abelianization(baumslag_solitar(1, 3))
    print(f"abelianization: Z^{ab.free_rank} + torsion {ab.torsion_coefficients}")


if __name__ == "__main__":
    main()
