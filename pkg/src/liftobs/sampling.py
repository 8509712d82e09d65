"""Deterministic low-discrepancy sample points with exact rational coordinates."""
from __future__ import annotations

from fractions import Fraction

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19)


def radical_inverse(i: int, base: int) -> Fraction:
    """Van der Corput digit reversal of ``i`` in ``base``, as an exact fraction."""
    num, den = 0, 1
    while i:
        i, digit = divmod(i, base)
        num = num * base + digit
        den *= base
    return Fraction(num, den)


def halton(count: int, dim: int, start: int = 1) -> list[tuple[Fraction, ...]]:
    """``count`` Halton points in ``[0, 1)^dim``; index 0 (the origin) is skipped by default."""
    if dim > len(_PRIMES):
        raise ValueError(f"at most {len(_PRIMES)} dimensions supported")
    return [tuple(radical_inverse(i, _PRIMES[k]) for k in range(dim))
            for i in range(start, start + count)]


def fundamental_domain_samples(count: int, dim: int = 2, radius: int = 3) -> list[tuple[Fraction, ...]]:
    """Points in ``[0, 1) x [-R, R]^(dim-1)``, the strip fundamental domain of ``x -> x + 1``."""
    out = []
    for p in halton(count, dim):
        out.append((p[0],) + tuple(2 * radius * c - radius for c in p[1:]))
    return out


def unit_interval_samples(count: int) -> list[Fraction]:
    return [p[0] for p in halton(count, 1)]
