"""Compute the lifting obstruction for the Heisenberg nilmanifold action and search for a correction.

    python scripts/nilmanifold_correction.py --bound 1
"""
import argparse
import random
from fractions import Fraction

from liftobs import catalog
from liftobs.lifts import relator_obstruction, search_deck_corrections


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=1)
    ap.add_argument("--points", type=int, default=100)
    args = ap.parse_args()

    a = catalog.nilmanifold()
    for r in a.presentation.relators:
        ob = relator_obstruction(a, r, bound=args.bound)
        print(f"relator {r.to_text()}: {ob.status}, deck word {ob.deck_word.to_text(['S', 'T', 'U'])}")
    res = search_deck_corrections(a, bound=args.bound)
    print(f"correction search: {res.status} after {res.tried} candidates, exponents {res.exponents}")
    if res.status != "corrected":
        return
    tj, uk = res.assignment.images
    rng = random.Random(0)
    bad = 0
    for _ in range(args.points):
        p = tuple(Fraction(rng.randint(-1000, 1000), rng.randint(1, 97)) for _ in range(3))
        bad += tj(uk(p)) != uk(tj(p))
    print(f"corrected lifts commute exactly at {args.points - bad}/{args.points} rational points")


if __name__ == "__main__":
    main()
