"""Lifts of circle homeomorphisms to the line and their translation numbers.

A lift ``F`` of a degree-one circle map satisfies ``F(x + 1) = F(x) + 1``.
Primitives are one-dimensional ``Map`` objects, so they compose and invert
through the generic expression nodes in :mod:`liftobs.maps`.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .maps import (AffineMap, Compose, Map, as_number, bisect_increasing, coeff,
                   is_exact_number, number_json)


class CircleMap(Map):
    dim = 1


class Rotation(CircleMap):
    """``x -> x + alpha``."""

    def __init__(self, alpha):
        self.alpha = as_number(alpha)
        self.exact = is_exact_number(self.alpha)
        self.name = f"R({number_json(self.alpha)})"

    def _eval(self, p):
        x = p[0]
        return (x + coeff(self.alpha, x),)

    def _inverse_eval(self, p):
        x = p[0]
        return (x - coeff(self.alpha, x),)

    def inverse(self):
        return Rotation(-self.alpha)

    def to_json(self):
        return {"type": "rotation", "alpha": number_json(self.alpha)}


def _interp(xs: Sequence, ys: Sequence, x):
    """Degree-one piecewise-linear interpolation; ``xs`` spans one period."""
    m = math.floor(x - xs[0])
    r = x - m
    i = min(bisect_right(xs, r) - 1, len(xs) - 2)
    x0, x1, y0, y1 = xs[i], xs[i + 1], ys[i], ys[i + 1]
    return y0 + (y1 - y0) * (r - x0) / (x1 - x0) + m


class PiecewiseLinear(CircleMap):
    """Lift through the points ``(x_i + k, y_i + k)``, linear in between."""

    def __init__(self, breakpoints: Sequence[Sequence]):
        pts = [(as_number(x), as_number(y)) for x, y in breakpoints]
        if not pts:
            raise ValueError("piecewise-linear map needs at least one breakpoint")
        xs = [x for x, _ in pts]
        ys = [y for _, y in pts]
        if any(not 0 <= x < 1 for x in xs):
            raise ValueError("breakpoint abscissae must lie in [0, 1)")
        xs.append(xs[0] + 1)
        ys.append(ys[0] + 1)
        if any(b <= a for a, b in zip(xs, xs[1:])) or any(b <= a for a, b in zip(ys, ys[1:])):
            raise ValueError("breakpoints must be strictly increasing in x and y "
                             "(including the wrap to the next period)")
        self.breakpoints = tuple(pts)
        self._xs, self._ys = tuple(xs), tuple(ys)
        self.exact = all(is_exact_number(v) for pt in pts for v in pt)
        self.name = "PL"

    def _eval(self, p):
        return (_interp(self._xs, self._ys, p[0]),)

    def _inverse_eval(self, p):
        return (_interp(self._ys, self._xs, p[0]),)

    def inverse(self):
        pts = []
        for x, y in zip(self._xs[:-1], self._ys[:-1]):
            k = math.floor(y)
            pts.append((y - k, x - k))
        return PiecewiseLinear(sorted(pts))

    def to_json(self):
        return {"type": "piecewise_linear",
                "breakpoints": [[number_json(x), number_json(y)] for x, y in self.breakpoints]}


def chart(x: float) -> float:
    """Real line to the circle coordinate; ``-inf, +inf`` both go to ``0 = 1``."""
    return 0.5 + math.atan(x) / math.pi


def chart_inverse(theta: float) -> float:
    return math.tan(math.pi * (theta - 0.5))


class ChartAffine(CircleMap):
    """The map ``x -> slope * x + offset`` of the line, fixing infinity,
    read in the arctangent chart and lifted so that the point at infinity
    ``theta = 0`` is fixed.
    """

    def __init__(self, slope, offset=0):
        self.slope = as_number(slope)
        self.offset = as_number(offset)
        if self.slope <= 0:
            raise ValueError("slope must be positive for an orientation-preserving map")
        self.exact = False
        self.name = f"chart({number_json(self.slope)}x+{number_json(self.offset)})"

    def _apply(self, theta: float, slope: float, offset: float) -> float:
        k = math.floor(theta)
        r = theta - k
        if r == 0:
            return float(k)
        return k + chart(slope * chart_inverse(r) + offset)

    def _eval(self, p):
        return (self._apply(float(p[0]), float(self.slope), float(self.offset)),)

    def _inverse_eval(self, p):
        s = float(self.slope)
        return (self._apply(float(p[0]), 1 / s, -float(self.offset) / s),)

    def inverse(self):
        return ChartAffine(1 / self.slope, -self.offset / self.slope)

    def to_json(self):
        return {"type": "chart_affine", "slope": number_json(self.slope),
                "offset": number_json(self.offset)}


class DoubleCoverLift(CircleMap):
    """Lift of a circle map to the connected double cover, read on ``R``.

    The cover ``s -> 2s mod 1`` is unrolled, so the lift is
    ``s -> (base(2s) + shift) / 2``; ``shift = 1`` adds the half-turn deck
    transformation of the cover.
    """

    def __init__(self, base: Map, shift: int = 0):
        if base.dim != 1:
            raise ValueError("base must be a circle lift")
        self.base, self.shift = base, int(shift)
        self.exact = base.exact
        self.reversing = base.reversing
        self.name = f"cover({base.label()},{self.shift})"

    def _eval(self, p):
        s = p[0]
        return ((self.base(2 * s) + self.shift) / 2,)

    def _inverse_eval(self, p):
        s = p[0]
        return (self.base.inverse()(2 * s - self.shift) / 2,)

    def to_json(self):
        return {"type": "double_cover", "base": self.base.to_json(), "shift": self.shift}


class StandardCircleMap(CircleMap):
    """``x -> x + alpha + (k / 2pi) sin(2 pi x)``, a homeomorphism for ``|k| < 1``."""

    def __init__(self, alpha, k):
        self.alpha, self.k = as_number(alpha), as_number(k)
        if not abs(self.k) < 1:
            raise ValueError("|k| must be below 1 for an invertible map")
        self.exact = False
        self.name = f"std({float(self.alpha):g},{float(self.k):g})"

    def _eval(self, p):
        x = float(p[0])
        return (x + float(self.alpha) + float(self.k) / (2 * math.pi) * math.sin(2 * math.pi * x),)

    def _inverse_eval(self, p):
        v = float(p[0])
        amp = abs(float(self.k)) / (2 * math.pi)
        base = v - float(self.alpha)
        return (bisect_increasing(lambda x: self._eval((x,))[0], v, base - amp, base + amp),)

    def to_json(self):
        return {"type": "standard", "alpha": number_json(self.alpha), "k": number_json(self.k)}


class Reflection(CircleMap):
    """``x -> c - x``; orientation reversing, so it has no translation number."""

    reversing = True

    def __init__(self, c=0):
        self.c = as_number(c)
        self.exact = is_exact_number(self.c)
        self.name = f"refl({number_json(self.c)})"

    def _eval(self, p):
        x = p[0]
        return (coeff(self.c, x) - x,)

    _inverse_eval = _eval

    def inverse(self):
        return self

    def to_json(self):
        return {"type": "reflection", "c": number_json(self.c)}


# -- translation numbers ------------------------------------------------------

@dataclass(frozen=True)
class TranslationInterval:
    lo: Fraction | float
    hi: Fraction | float
    n_used: int
    center: Fraction | float
    arithmetic_mode: str = "float"

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    @property
    def width(self):
        return self.hi - self.lo

    def to_dict(self) -> dict:
        return {"lo": number_json(self.lo), "hi": number_json(self.hi), "n": self.n_used,
                "center": number_json(self.center), "arithmetic_mode": self.arithmetic_mode}


def arithmetic_mode(m: Map) -> str:
    return "exact" if m.exact else "float"


def evaluate_lift(F: Map, x):
    return F(x)


def translation_number(F: Map, n: int) -> TranslationInterval:
    """``F^n(0)/n`` with the certified radius ``1/n``.

    The displacement ``a_k = F^k(0)`` satisfies ``a_j + a_k - 1 < a_{j+k} < a_j + a_k + 1``,
    which pins ``tau`` within ``1/n`` of ``a_n / n``.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if F.reversing:
        raise ValueError("orientation-reversing map has no translation number")
    x = Fraction(0) if F.exact else 0.0
    for _ in range(n):
        x = F(x)
    center = x / n
    r = Fraction(1, n) if F.exact else 1.0 / n
    return TranslationInterval(center - r, center + r, n, center, arithmetic_mode(F))


@dataclass(frozen=True)
class CircleMeasure:
    """A probability measure on the circle, in quadrature form.

    ``lebesgue``: midpoint rule on ``quadrature_nodes`` cells.  ``pushforward``:
    Lebesgue pushed forward by the lift ``conjugacy``.  ``discrete``: atoms.
    """
    kind: str = "lebesgue"
    quadrature_nodes: int = 10_000
    conjugacy: Map | None = None
    points: tuple = ()
    weights: tuple = ()
    mass_tol: float = 1e-12

    def __post_init__(self):
        if self.kind not in ("lebesgue", "pushforward", "discrete"):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.quadrature_nodes < 1:
            raise ValueError("quadrature_nodes must be positive")
        if self.kind == "pushforward" and self.conjugacy is None:
            raise ValueError("pushforward measure needs a conjugacy")
        if self.kind == "discrete":
            if len(self.points) != len(self.weights) or not self.points:
                raise ValueError("discrete measure needs matching points and weights")
            if any(w < 0 for w in self.weights) or abs(sum(self.weights) - 1) > self.mass_tol:
                raise ValueError("discrete weights must be non-negative and sum to 1")

    def nodes(self) -> list[tuple[float, float]]:
        """``(point, weight)`` pairs."""
        if self.kind == "discrete":
            return list(zip(self.points, self.weights))
        n = self.quadrature_nodes
        mids = [(i + 0.5) / n for i in range(n)]
        if self.kind == "pushforward":
            mids = [self.conjugacy(x) for x in mids]
        return [(x, 1.0 / n) for x in mids]


def tau_integral(F: Map, mu: CircleMeasure) -> float:
    """Integral of the displacement ``F(x) - x`` against ``mu``."""
    return float(sum(w * (F(x) - x) for x, w in mu.nodes()))


def conjugate(H: Map, F: Map) -> Map:
    """``H o F o H^-1``."""
    return Compose(H, F, H.inverse())


# -- BS(1, 3) on the circle ---------------------------------------------------

def build_bs13_action(g_shift: int = 1) -> tuple[Map, Map]:
    """Circle lifts ``(f, g)`` of the actions of ``a`` and ``b`` in ``BS(1, 3)``.

    On the projective line ``a`` acts by ``x -> 3x`` and ``b`` by ``x -> x + 1``.
    Both are transported to the double cover; ``g_shift=1`` makes ``g`` swap the
    two preimages of infinity (translation number 1/2), ``g_shift=0`` picks the
    lift fixing them.
    """
    f = DoubleCoverLift(ChartAffine(3, 0), 0)
    g = DoubleCoverLift(ChartAffine(1, 1), g_shift)
    f.name, g.name = "f", "g"
    return f, g


def infinity_lifts() -> tuple[float, float]:
    """The two preimages of infinity on the double cover, in ``[0, 1)``."""
    return 0.0, 0.5


def circle_translation(k=1) -> AffineMap:
    """The deck transformation ``x -> x + k`` as a map of the line."""
    return AffineMap([[1]], [k], name=f"T{k}" if k != 1 else "T")
