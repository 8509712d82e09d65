"""Grow the invariant region of the sin_profile map and report where it accumulates.

    python scripts/sin_profile_accumulation.py --depth 200 --resolution 512
"""
import argparse

from liftobs import catalog
from liftobs.annulus import build_U, find_translation_like
from liftobs.plane import vertical_translation


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=200)
    ap.add_argument("--resolution", type=int, default=512)
    args = ap.parse_args()

    f = catalog.sin_profile().images[0]
    u = build_U(f, N=args.depth, resolution=args.resolution)
    if u.accumulation_up is None:
        print(f"no upward accumulation: {u.message}")
    else:
        acc = u.accumulation_up
        print(f"upward accumulation at step {acc.first_n}, level {acc.level:.6f} (bound 0.5)")
    res = find_translation_like(f, vertical_translation(), N=args.depth, resolution=args.resolution)
    for c in res.candidates:
        print(f"  candidate {c.exponents}: {'accepted' if c.accepted else 'rejected'} ({c.reason})")
    print(f"result: {res.status} {res.exponents}")


if __name__ == "__main__":
    main()
