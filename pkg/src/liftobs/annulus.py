"""Essential circles in the annulus cover, their images, and the region they sweep out.

Curves live in the strip ``R x R`` and are periodic under ``h0 = (x + 1, y)``:
a :class:`PeriodicCurve` stores one period of vertices, the next period being
the same vertices shifted by ``(1, 0)``.  Maps are expected to commute with h0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .geometry import _cross, count_proper_crossings, segment_set_proximity, segments_intersect
from .maps import Compose, Map, is_exact_number
from .plane import commutator_deck_element, horizontal_translation
from .words import Word, reduce_word

DISJOINT_TOL = 1e-7
ACCUMULATION_TOL = 1e-4


class IntersectionError(ValueError):
    """The x-axis meets its image, so the region construction does not apply."""


class InconclusiveRegionError(ValueError):
    pass


class TaintedCurveError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class RefusalError(ValueError):
    """Frontier data are not monotone graphs; no fiberwise conjugacy is built."""


# -- curves ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PeriodicCurve:
    xs: np.ndarray
    ys: np.ndarray
    exact_vertices: tuple[tuple[Fraction, Fraction], ...] | None = None
    warnings: tuple[str, ...] = ()

    @classmethod
    def from_vertices(cls, vertices: Sequence[Sequence], check: bool = True) -> "PeriodicCurve":
        """One period of vertices; the start is moved into ``0 <= x < 1`` by an integer shift."""
        if len(vertices) < 2:
            raise ValueError("a periodic curve needs at least two vertices per period")
        exact = all(is_exact_number(v) for p in vertices for v in p)
        shift = math.floor(vertices[0][0])
        if exact:
            ev = tuple((Fraction(x) - shift, Fraction(y)) for x, y in vertices)
            xs = np.array([float(x) for x, _ in ev])
            ys = np.array([float(y) for _, y in ev])
        else:
            ev = None
            xs = np.array([float(x) for x, _ in vertices]) - shift
            ys = np.array([float(y) for _, y in vertices])
        return cls._build(xs, ys, ev, check)

    @classmethod
    def from_arrays(cls, xs, ys, check: bool = True) -> "PeriodicCurve":
        xs, ys = np.asarray(xs, float), np.asarray(ys, float)
        return cls._build(xs - math.floor(xs[0]), ys.copy(), None, check)

    @classmethod
    def _build(cls, xs, ys, ev, check):
        warnings = ()
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            warnings = ("non-finite vertex",)
        c = cls(xs, ys, ev, warnings)
        if check and not warnings and not c.is_simple():
            c = cls(xs, ys, ev, ("self-intersection",))
        return c

    @classmethod
    def horizontal(cls, y=0, resolution: int = 8) -> "PeriodicCurve":
        if is_exact_number(y):
            return cls.from_vertices([(Fraction(i, resolution), Fraction(y)) for i in range(resolution)],
                                     check=False)
        xs = np.arange(resolution) / resolution
        return cls(xs, np.full(resolution, float(y)))

    @classmethod
    def from_function(cls, fn: Callable, resolution: int = 256) -> "PeriodicCurve":
        """The graph ``y = fn(x)`` of a 1-periodic function."""
        xs = np.arange(resolution) / resolution
        return cls.from_arrays(xs, np.asarray(fn(xs), float) + 0 * xs)

    @property
    def resolution(self) -> int:
        return len(self.xs)

    @property
    def tainted(self) -> bool:
        return bool(self.warnings)

    @property
    def exact(self) -> bool:
        return self.exact_vertices is not None

    def closed(self) -> np.ndarray:
        """One period including the closing vertex, shape ``(n + 1, 2)``."""
        pts = np.column_stack([self.xs, self.ys])
        return np.vstack([pts, pts[:1] + [1.0, 0.0]])

    def unrolled(self, k0: int, k1: int) -> np.ndarray:
        """Periods ``k0 .. k1`` as one polyline."""
        pts = np.column_stack([self.xs, self.ys])
        blocks = [pts + [k, 0.0] for k in range(k0, k1 + 1)]
        blocks.append(pts[:1] + [k1 + 1, 0.0])
        return np.vstack(blocks)

    def segments_in_window(self, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
        """Segments of the full periodic curve whose x-extent meets ``[lo, hi]``."""
        P = self.closed()
        A, B = P[:-1], P[1:]
        left = np.minimum(A[:, 0], B[:, 0])
        red = np.floor(left)
        A, B = A - np.column_stack([red, 0 * red]), B - np.column_stack([red, 0 * red])
        m, M = np.minimum(A[:, 0], B[:, 0]), np.maximum(A[:, 0], B[:, 0])
        s0 = np.ceil(lo - M).astype(int)
        s1 = np.floor(hi - m).astype(int)
        counts = np.maximum(s1 - s0 + 1, 0)
        idx = np.repeat(np.arange(len(A)), counts)
        shift = np.concatenate([np.arange(a, b + 1) for a, b in zip(s0, s1) if b >= a] or [np.zeros(0, int)])
        off = np.column_stack([shift, np.zeros_like(shift)]).astype(float)
        return A[idx] + off, B[idx] + off

    def reduced_vertices(self, copies: int = 1) -> np.ndarray:
        """All vertices moved into ``0 <= x < 1``, plus copies shifted by up to ``copies``."""
        base = np.column_stack([np.mod(self.xs, 1.0), self.ys])
        return np.vstack([base + [k, 0.0] for k in range(-copies, copies + 1)])

    def max_segment(self) -> float:
        return float(np.max(np.hypot(*np.diff(self.closed(), axis=0).T)))

    def shifted(self, k: int) -> "PeriodicCurve":
        """The same curve with its vertex list shifted by ``(k, 0)``; as a set it is unchanged."""
        ev = None if self.exact_vertices is None else tuple((x + k, y) for x, y in self.exact_vertices)
        return PeriodicCurve(self.xs + k, self.ys.copy(), ev, self.warnings)

    def x_range(self) -> tuple[float, float]:
        return float(self.xs.min()), float(max(self.xs.max(), self.xs[0] + 1))

    def y_range(self) -> tuple[float, float]:
        return float(self.ys.min()), float(self.ys.max())

    def is_graph(self) -> bool:
        c = self.closed()
        return bool(np.all(np.diff(c[:, 0]) > 0))

    def height(self, x):
        """``y`` over ``x`` for a graph-like curve."""
        if not self.is_graph():
            raise ValueError("height is defined only for graph-like curves")
        c = self.closed()
        x0 = c[0, 0]
        xr = x0 + np.mod(np.asarray(x, float) - x0, 1.0)
        return np.interp(xr, c[:, 0], c[:, 1])

    def is_simple(self) -> bool:
        if self.is_graph():
            return True
        A0, A1 = self._reduced_segments()
        lo = float(min(A0[:, 0].min(), A1[:, 0].min()))
        hi = float(max(A0[:, 0].max(), A1[:, 0].max()))
        B0, B1 = self.segments_in_window(lo, hi)
        if len(A0) * len(B0) > 4_000_000:
            return False
        d1 = _cross(B0[None], B1[None], A0[:, None])
        d2 = _cross(B0[None], B1[None], A1[:, None])
        d3 = _cross(A0[:, None], A1[:, None], B0[None])
        d4 = _cross(A0[:, None], A1[:, None], B1[None])
        proper = (d1 * d2 < 0) & (d3 * d4 < 0)
        return not proper.any()

    def _reduced_segments(self) -> tuple[np.ndarray, np.ndarray]:
        P = self.closed()
        A, B = P[:-1], P[1:]
        red = np.floor(np.minimum(A[:, 0], B[:, 0]))
        off = np.column_stack([red, 0 * red])
        return A - off, B - off

    def to_rows(self) -> list[tuple[float, float]]:
        return [(float(x), float(y)) for x, y in zip(self.xs, self.ys)]


def x_axis(resolution: int = 8) -> PeriodicCurve:
    return PeriodicCurve.horizontal(0, resolution)


def _apply(F: Map, c: PeriodicCurve, exact: bool):
    if exact:
        return [F(p) for p in c.exact_vertices]
    X, Y = F((c.xs.copy(), c.ys.copy()))
    return np.broadcast_to(np.asarray(X, float), c.xs.shape), np.broadcast_to(np.asarray(Y, float), c.xs.shape)


def resample_arclength(c: PeriodicCurve, count: int) -> PeriodicCurve:
    P = c.closed()
    seg = np.hypot(*np.diff(P, axis=0).T)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    t = np.linspace(0.0, s[-1], count, endpoint=False)
    return PeriodicCurve.from_arrays(np.interp(t, s, P[:, 0]), np.interp(t, s, P[:, 1]))


def image_curve(F: Map, c: PeriodicCurve, resample: int | None = None,
                max_segment: float | None = None, max_vertices: int = 1 << 16) -> PeriodicCurve:
    """``F(c)``; vertices are mapped and the period is closed by h0-equivariance.

    With ``max_segment`` the source is bisected until image segments are that
    short.  ``resample`` redistributes the result evenly by arc length.
    """
    exact = c.exact and F.exact and resample is None and max_segment is None
    if exact:
        return PeriodicCurve.from_vertices(_apply(F, c, True))
    src = c
    X, Y = _apply(F, src, False)
    if max_segment is not None:
        while src.resolution < max_vertices:
            P = np.column_stack([X, Y])
            P = np.vstack([P, P[:1] + [1.0, 0.0]])
            long = np.hypot(*np.diff(P, axis=0).T) > max_segment
            if not long.any():
                break
            S = src.closed()
            mids = 0.5 * (S[:-1] + S[1:])
            xs, ys = [], []
            for i in range(src.resolution):
                xs.append(S[i, 0]); ys.append(S[i, 1])
                if long[i]:
                    xs.append(mids[i, 0]); ys.append(mids[i, 1])
            src = PeriodicCurve(np.array(xs), np.array(ys))
            X, Y = _apply(F, src, False)
    out = PeriodicCurve.from_arrays(X, Y)
    if resample is not None:
        out = resample_arclength(out, resample)
        if c.tainted or not out.is_simple():
            out = PeriodicCurve(out.xs, out.ys, None, ("self-intersection",))
    return out


# -- disjointness ---------------------------------------------------------------------

@dataclass(frozen=True)
class DisjointnessResult:
    verdict: str                      # disjoint | intersecting | inconclusive
    min_gap: float | None = None
    witness: tuple | None = None
    arithmetic_mode: str = "float"
    method: str = ""
    tol: float = DISJOINT_TOL

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "min_gap": self.min_gap,
                "witness": None if self.witness is None else [float(v) for v in self.witness],
                "arithmetic_mode": self.arithmetic_mode, "method": self.method, "tol": self.tol}


def _shift_range(c1: PeriodicCurve, c2: PeriodicCurve, margin: float = 0.0) -> range:
    a0, a1 = c1.x_range()
    b0, b1 = c2.x_range()
    return range(int(math.floor(a0 - b1 - margin)), int(math.ceil(a1 - b0 + margin)) + 1)


def _exact_disjoint(c1: PeriodicCurve, c2: PeriodicCurve, tol: float) -> DisjointnessResult:
    P = list(c1.exact_vertices) + [(c1.exact_vertices[0][0] + 1, c1.exact_vertices[0][1])]
    Q0 = list(c2.exact_vertices) + [(c2.exact_vertices[0][0] + 1, c2.exact_vertices[0][1])]
    best = math.inf
    for k in _shift_range(c1, c2):
        Q = [(x + k, y) for x, y in Q0]
        for i in range(len(P) - 1):
            for j in range(len(Q) - 1):
                if segments_intersect(P[i], P[i + 1], Q[j], Q[j + 1]):
                    return DisjointnessResult("intersecting", 0.0, tuple(P[i]), "exact", "segments", tol)
    # the gap itself is reported in floating point
    fl = _float_disjoint(PeriodicCurve(c1.xs, c1.ys), PeriodicCurve(c2.xs, c2.ys), 0.0)
    best = fl.min_gap if fl.min_gap is not None else best
    return DisjointnessResult("disjoint", best, None, "exact", "segments", tol)


def _merged_breakpoints(c1: PeriodicCurve, c2: PeriodicCurve) -> np.ndarray:
    x0 = c1.xs[0]
    xs = np.concatenate([c1.xs, c2.xs])
    return np.unique(x0 + np.mod(xs - x0, 1.0))


def _graph_gap(c1: PeriodicCurve, c2: PeriodicCurve):
    """Vertical difference ``c2 - c1`` at all breakpoints of either graph."""
    xs = _merged_breakpoints(c1, c2)
    return xs, c2.height(xs) - c1.height(xs)


def _float_disjoint(c1: PeriodicCurve, c2: PeriodicCurve, tol: float) -> DisjointnessResult:
    if c1.is_graph() and c2.is_graph():
        xs, d = _graph_gap(c1, c2)
        dc = np.append(d, d[:1])
        gap = float(np.min(np.abs(d)))
        k = int(np.argmin(np.abs(d)))
        witness = (float(xs[k]), float(c1.height(xs[k])))
        if np.any(d == 0) or np.any(dc[:-1] * dc[1:] < 0):
            if np.any(d == 0):
                k = int(np.argmax(d == 0))
            else:
                k = int(np.argmax(dc[:-1] * dc[1:] < 0))
            return DisjointnessResult("intersecting", 0.0, (float(xs[k]), float(c1.height(xs[k]))),
                                      "float", "graph", tol)
        return DisjointnessResult("disjoint" if gap >= tol else "inconclusive", gap, witness,
                                  "float", "graph", tol)
    A0, A1 = c1._reduced_segments()
    lo = float(min(A0[:, 0].min(), A1[:, 0].min()))
    hi = float(max(A0[:, 0].max(), A1[:, 0].max()))
    B0, B1 = c2.segments_in_window(lo - 1.0, hi + 1.0)
    dist, pair, proper = segment_set_proximity(A0, A1, B0, B1, math.inf)
    witness = None if pair is None else tuple(float(v) for v in A0[pair[0]])
    if proper or dist == 0.0:
        return DisjointnessResult("intersecting", 0.0, witness, "float", "segments", tol)
    return DisjointnessResult("disjoint" if dist >= tol else "inconclusive", dist, witness,
                              "float", "segments", tol)


def curves_disjoint(c1: PeriodicCurve, c2: PeriodicCurve, tol: float = DISJOINT_TOL) -> DisjointnessResult:
    """Do the two curves, with all their h0-shifts, avoid each other?

    Rational curves are compared exactly.  Otherwise a closest approach below
    ``tol`` gives ``inconclusive`` rather than a claim either way.
    """
    if c1.exact and c2.exact:
        return _exact_disjoint(c1, c2, tol)
    return _float_disjoint(c1, c2, tol)


@dataclass(frozen=True)
class NonIntersectionReport:
    verdicts: tuple[DisjointnessResult, ...]

    @property
    def certified(self) -> bool:
        return any(v.verdict == "disjoint" for v in self.verdicts)

    @property
    def status(self) -> str:
        if self.certified:
            return "non_intersection_certified"
        if all(v.verdict == "intersecting" for v in self.verdicts):
            return "all_intersecting_evidence_only"
        return "inconclusive"

    def to_dict(self) -> dict:
        return {"status": self.status, "verdicts": [v.to_dict() for v in self.verdicts]}


def non_intersection_report(F: Map, candidates: Sequence[PeriodicCurve],
                            tol: float = DISJOINT_TOL) -> NonIntersectionReport:
    """A single disjoint pair ``(c, F(c))`` certifies the non-intersection property."""
    return NonIntersectionReport(tuple(curves_disjoint(c, image_curve(F, c), tol) for c in candidates))


def sup_gap(c1: PeriodicCurve, c2: PeriodicCurve) -> float:
    """Largest distance from either curve to the other.

    Graph-like pairs use the vertical gap; otherwise the symmetric Hausdorff
    distance between vertex sets, which can only overestimate.
    """
    if c1.is_graph() and c2.is_graph():
        return float(np.max(np.abs(_graph_gap(c1, c2)[1])))
    out = 0.0
    for a, b in ((c1, c2), (c2, c1)):
        tree = cKDTree(b.reduced_vertices())
        d, _ = tree.query(a.reduced_vertices(0))
        out = max(out, float(d.max()))
    return out


def join_graph_curves(c1: PeriodicCurve, c2: PeriodicCurve) -> PeriodicCurve:
    """Boundary of the intersection of the regions below two graph-like curves.

    That is the pointwise lower envelope, with the crossing points inserted.
    """
    if not (c1.is_graph() and c2.is_graph()):
        raise ValueError("the join is only implemented for graph-like curves")
    xs, d = _graph_gap(c1, c2)
    xs_c = np.append(xs, xs[0] + 1)
    dc = np.append(d, d[:1])
    extra = []
    for i in np.nonzero(dc[:-1] * dc[1:] < 0)[0]:
        t = dc[i] / (dc[i] - dc[i + 1])
        extra.append(xs_c[i] + t * (xs_c[i + 1] - xs_c[i]))
    allx = np.unique(np.concatenate([xs, np.asarray(extra, float)]))
    return PeriodicCurve.from_arrays(allx, np.minimum(c1.height(allx), c2.height(allx)))


# -- the region swept by iterates of the x-axis -----------------------------------------

@dataclass(frozen=True)
class Accumulation:
    direction: str            # upward | downward
    first_n: int              # the third consecutive small gap ends here
    level: float              # sup (or inf) of y over the curve at first_n

    def to_dict(self) -> dict:
        return {"direction": self.direction, "first_n": self.first_n, "level": self.level}


@dataclass
class RegionU:
    frontier_curves: dict[int, PeriodicCurve]
    N: int
    resolution: int
    gaps: dict[int, float] = field(default_factory=dict)          # gap between n and n+1
    disjoint: dict[int, str] = field(default_factory=dict)        # verdict for n, n+1
    ordered_depth: int = 0
    accumulation_up: Accumulation | None = None
    accumulation_down: Accumulation | None = None
    tol: float = DISJOINT_TOL
    accumulation_tol: float = ACCUMULATION_TOL

    @property
    def top(self) -> PeriodicCurve:
        return self.frontier_curves[self.N]

    @property
    def bottom(self) -> PeriodicCurve:
        return self.frontier_curves[-self.N]

    @property
    def message(self) -> str:
        if self.accumulation_up is None and self.accumulation_down is None:
            return f"no accumulation detected up to N={self.N}"
        parts = [f"{a.direction} accumulation at level {a.level:.6g} from n={a.first_n}"
                 for a in (self.accumulation_up, self.accumulation_down) if a is not None]
        return "; ".join(parts)

    def to_dict(self) -> dict:
        return {"N": self.N, "resolution": self.resolution, "tol": self.tol,
                "accumulation_tol": self.accumulation_tol, "ordered_depth": self.ordered_depth,
                "accumulation_up": None if self.accumulation_up is None else self.accumulation_up.to_dict(),
                "accumulation_down": None if self.accumulation_down is None
                else self.accumulation_down.to_dict(),
                "band": [self.bottom.y_range()[0], self.top.y_range()[1]],
                "message": self.message}

    def frontier_rows(self) -> list[tuple[int, int, float, float]]:
        """``(n, vertex index, x, y)`` rows for CSV output."""
        return [(n, i, x, y) for n in sorted(self.frontier_curves)
                for i, (x, y) in enumerate(self.frontier_curves[n].to_rows())]


def _find_accumulation(gaps: Sequence[float], tol: float, run: int = 3) -> int | None:
    streak = 0
    for i, g in enumerate(gaps):
        streak = streak + 1 if g < tol else 0
        if streak >= run:
            return i
    return None


def _orbit_curves(F: Map, N: int, resolution: int) -> dict[int, PeriodicCurve]:
    """Images of the x-axis sample points under ``F^n``, ``|n| <= N``."""
    base = x_axis(resolution)
    curves = {0: PeriodicCurve(base.xs, base.ys)}
    for sign, G in ((1, F), (-1, F.inverse())):
        X, Y = base.xs.copy(), base.ys.copy()
        for n in range(1, N + 1):
            X, Y = G((X, Y))
            X = np.broadcast_to(np.asarray(X, float), base.xs.shape)
            Y = np.broadcast_to(np.asarray(Y, float), base.xs.shape)
            curves[sign * n] = PeriodicCurve.from_arrays(X, Y, check=False)
    return curves


def build_U(F: Map, N: int = 50, resolution: int = 256, tol: float = DISJOINT_TOL,
            accumulation_tol: float = ACCUMULATION_TOL, max_segment: float = 0.5) -> RegionU:
    """Iterate the x-axis under ``F`` and ``F^-1`` up to depth ``N``.

    Accumulation means the gap between consecutive curves stays below
    ``accumulation_tol`` for three consecutive steps.  Disjointness and order
    of consecutive curves are checked while their segments stay shorter than
    ``max_segment``; ``ordered_depth`` records how far that held.
    """
    first = curves_disjoint(x_axis(), image_curve(F, x_axis()) if F.exact else
                            PeriodicCurve.from_arrays(*_apply(F, x_axis(resolution), False)), tol)
    if first.verdict != "disjoint":
        raise IntersectionError(f"x-axis and its image are {first.verdict}")
    curves = _orbit_curves(F, N, resolution)
    u = RegionU(curves, N, resolution, tol=tol, accumulation_tol=accumulation_tol)
    up, down = [], []
    for n in range(-N, N):
        g = sup_gap(curves[n], curves[n + 1])
        u.gaps[n] = g
        (up if n >= 0 else down).append(g)
    ordered = 0
    for n in range(N):
        if max(curves[n + 1].max_segment(), curves[-n - 1].max_segment()) > max_segment:
            break
        ok = True
        for a, b in ((n, n + 1), (-n - 1, -n)):
            v = curves_disjoint(curves[a], curves[b], tol).verdict
            u.disjoint[a] = v
            ok = ok and v == "disjoint" and _is_above(curves[b], curves[a])
        if not ok:
            break
        ordered = n + 1
    u.ordered_depth = ordered
    i = _find_accumulation(up, accumulation_tol)
    if i is not None:
        u.accumulation_up = Accumulation("upward", i + 1, curves[i + 1].y_range()[1])
    i = _find_accumulation(down[::-1], accumulation_tol)
    if i is not None:
        u.accumulation_down = Accumulation("downward", -(i + 1), curves[-(i + 1)].y_range()[0])
    return u


# -- membership -------------------------------------------------------------------------

def points_above(c: PeriodicCurve, px, py) -> np.ndarray:
    """Is each point above ``c``?  Parity of crossings of the downward vertical ray."""
    px, py = np.atleast_1d(np.asarray(px, float)), np.atleast_1d(np.asarray(py, float))
    if c.is_graph():
        return py > c.height(px)
    out = np.zeros(px.shape, dtype=int)
    red = np.mod(px, 1.0)
    A, B = c.segments_in_window(0.0, 1.0)
    for start in range(0, len(A), 4096):
        sa, sb = A[start:start + 4096], B[start:start + 4096]
        ax, bx = sa[:, 0][None], sb[:, 0][None]
        straddle = (ax <= red[:, None]) != (bx <= red[:, None])
        with np.errstate(invalid="ignore", divide="ignore"):
            t = (red[:, None] - ax) / (bx - ax)
        yc = sa[:, 1][None] + t * (sb[:, 1] - sa[:, 1])[None]
        out += np.sum(straddle & (yc < py[:, None]), axis=1)
    return out % 2 == 1


def distance_to_curve(c: PeriodicCurve, px, py) -> np.ndarray:
    """Vertical distance for graph-like curves, vertex distance otherwise."""
    px, py = np.atleast_1d(np.asarray(px, float)), np.atleast_1d(np.asarray(py, float))
    if c.is_graph():
        return np.abs(py - c.height(px))
    tree = cKDTree(c.reduced_vertices())
    return tree.query(np.column_stack([np.mod(px, 1.0), py]))[0]


def _is_above(upper: PeriodicCurve, lower: PeriodicCurve) -> bool:
    return bool(points_above(lower, upper.xs[:1], upper.ys[:1])[0])


def region_labels(u: RegionU, px, py, tol: float | None = None) -> np.ndarray:
    """``X`` above the top frontier, ``Y`` below the bottom one, ``U`` between,
    ``boundary`` within ``tol`` of either frontier."""
    tol = u.tol if tol is None else tol
    above_top = points_above(u.top, px, py)
    above_bottom = points_above(u.bottom, px, py)
    near = (distance_to_curve(u.top, px, py) < tol) | (distance_to_curve(u.bottom, px, py) < tol)
    lab = np.where(above_top, "X", np.where(above_bottom, "U", "Y")).astype(object)
    lab[near] = "boundary"
    return lab


# -- case classification ----------------------------------------------------------------

CASE_BY_REGIONS = {
    frozenset("X"): "case2_disjoint",
    frozenset("Y"): "case2_disjoint",
    frozenset("U"): "case1_contained",
    frozenset("XU"): "case3a_XU",
    frozenset("UY"): "case3a_XU",
    frozenset("XUY"): "case3b_XUY",
}


@dataclass(frozen=True)
class CaseReport:
    case: str
    regions: tuple[str, ...]
    candidate: str | None = None
    note: str = ""
    tol: float = DISJOINT_TOL
    N: int = 0
    resolution: int = 0

    def to_dict(self) -> dict:
        return {"case": self.case, "regions": list(self.regions), "candidate": self.candidate,
                "note": self.note, "tol": self.tol, "N": self.N, "resolution": self.resolution}


def classify_case(F: Map, G: Map, N: int = 50, resolution: int = 256, tol: float = DISJOINT_TOL,
                  u: RegionU | None = None) -> CaseReport:
    """Which of above-U, U, below-U does ``G(x-axis)`` meet?"""
    u = u or build_U(F, N, resolution, tol)
    img = image_curve(G, x_axis(resolution))
    lab = region_labels(u, img.xs, img.ys, tol)
    regions = set(lab) - {"boundary"}
    if "X" in regions and "Y" in regions:
        regions.add("U")       # a connected curve cannot jump over U
    key = tuple(r for r in "XUY" if r in regions)
    echo = dict(tol=tol, N=u.N, resolution=u.resolution)
    if "boundary" in set(lab):
        return CaseReport("inconclusive", key, CASE_BY_REGIONS.get(frozenset(regions)),
                          "image grazes a frontier curve", **echo)
    case = CASE_BY_REGIONS[frozenset(regions)]
    if case != "case1_contained":
        return CaseReport(case, key, **echo)
    # containment of U in G(U), tested on the truncated frontiers
    gtop, gbot = image_curve(G, u.top), image_curve(G, u.bottom)
    inside = (points_above(gbot, u.bottom.xs, u.bottom.ys).all()
              and not points_above(gtop, u.top.xs, u.top.ys).any())
    if inside:
        return CaseReport("case1_contained", key, note="truncated U lies in G(U)", **echo)
    return CaseReport("inconclusive", key, "case1_contained",
                      "image inside U; containment of U in G(U) not seen at this depth", **echo)


# -- crossings ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossingRecord:
    component_id: int
    orientation: str                 # upward | downward
    parameter_interval: tuple[float, float]

    def to_dict(self) -> dict:
        return {"component_id": self.component_id, "orientation": self.orientation,
                "parameter_interval": list(self.parameter_interval)}


def _periodic_label(mask: np.ndarray) -> np.ndarray:
    """Connected components of a grid mask whose columns wrap around."""
    lab, count = ndimage.label(mask)
    parent = list(range(count + 1))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in zip(lab[:, 0], lab[:, -1]):
        if a and b:
            parent[root(a)] = root(b)
    roots = sorted({root(i) for i in range(1, count + 1)})
    rename = {r: k for k, r in enumerate(roots)}
    out = np.full(lab.shape, -1)
    for i in range(1, count + 1):
        out[lab == i] = rename[root(i)]
    return out


def crossings_with_orientation(c: PeriodicCurve, u: RegionU, tol: float | None = None,
                               grid: tuple[int, int] = (256, 128)) -> list[CrossingRecord]:
    """Maximal arcs of ``c`` running from one side of U to the other.

    Component ids label the connected pieces of U below ``c`` (at grid
    resolution) that each crossing borders.
    """
    tol = u.tol if tol is None else tol
    if c.tainted:
        raise TaintedCurveError("curve failed the simplicity check")
    gap = curves_disjoint(u.bottom, u.top, tol)
    if gap.verdict != "disjoint":
        raise InconclusiveRegionError(f"frontier curves are not separated ({gap.verdict})")
    lab = region_labels(u, c.xs, c.ys, tol)
    n = c.resolution
    sides = [(i, l) for i, l in enumerate(lab) if l in ("X", "Y")]
    if not sides:
        return []
    # rotate so the scan starts on a side vertex and wraps once
    records = []
    ids = _crossing_components(c, u, grid)
    for (i, a), (j, b) in zip(sides, sides[1:] + [(sides[0][0] + n, sides[0][1])]):
        if a == b:
            continue
        t1, t2 = i / n, j / n
        mid = (i + j) // 2
        records.append(CrossingRecord(ids(c.xs[mid % n] + (mid // n), c.ys[mid % n]),
                                      "upward" if a == "Y" else "downward", (t1, t2)))
    records.sort(key=lambda r: r.parameter_interval[0])
    return records


def _crossing_components(c: PeriodicCurve, u: RegionU, grid: tuple[int, int]):
    nx, ny = grid
    y0 = u.bottom.y_range()[0]
    y1 = u.top.y_range()[1]
    xs = (np.arange(nx) + 0.5) / nx
    ys = y0 + (np.arange(ny) + 0.5) / ny * (y1 - y0)
    GX, GY = np.meshgrid(xs, ys, indexing="ij")
    px, py = GX.ravel(), GY.ravel()
    inside = points_above(u.bottom, px, py) & ~points_above(u.top, px, py) & ~points_above(c, px, py)
    labels = _periodic_label(inside.reshape(nx, ny))
    cells = np.argwhere(labels >= 0)

    def lookup(x, y) -> int:
        if not len(cells):
            return -1
        i = (x % 1.0) * nx - 0.5
        j = (y - y0) / (y1 - y0) * ny - 0.5
        di = np.abs(cells[:, 0] - i)
        di = np.minimum(di, nx - di)
        k = int(np.argmin(di ** 2 + (cells[:, 1] - j) ** 2))
        return int(labels[tuple(cells[k])])

    return lookup


def brute_force_crossing_count(c: PeriodicCurve, frontier: PeriodicCurve) -> int:
    """Proper intersections of one period of ``c`` with every shift of ``frontier``."""
    ks = _shift_range(c, frontier, 1.0)
    return count_proper_crossings(c.closed(), frontier.unrolled(ks.start, ks.stop - 1))


def orientations_alternate(records: Sequence[CrossingRecord]) -> bool:
    o = [r.orientation for r in records]
    return all(a != b for a, b in zip(o, o[1:] + o[:1])) if len(o) > 1 else not o


# -- translation-like elements -------------------------------------------------------------

@dataclass(frozen=True)
class CandidateVerdict:
    exponents: tuple[int, int]
    accepted: bool
    reason: str = ""
    detail: str = ""

    def word(self) -> Word:
        return reduce_word([(0, self.exponents[0]), (1, self.exponents[1])])

    def to_dict(self, names=("f", "g")) -> dict:
        return {"word": self.word().to_text(list(names)) or "1", "exponents": list(self.exponents),
                "accepted": self.accepted, "reason": self.reason, "detail": self.detail}


@dataclass(frozen=True)
class TranslationLikeResult:
    status: str                       # found | none_found
    element: Word | None
    exponents: tuple[int, int] | None
    map: Map | None
    candidates: tuple[CandidateVerdict, ...]
    settings: dict

    def to_dict(self, names=("f", "g")) -> dict:
        return {"status": self.status,
                "element": None if self.element is None else self.element.to_text(list(names)),
                "exponents": None if self.exponents is None else list(self.exponents),
                "candidates": [c.to_dict(names) for c in self.candidates], "settings": self.settings}


def probe_points() -> tuple[np.ndarray, np.ndarray]:
    """Grid ``(i/16, j/16)`` for ``0 <= i < 16``, ``-8 <= j <= 8``, top row first."""
    j, i = np.meshgrid(np.arange(8, -9, -1), np.arange(16), indexing="ij")
    return i.ravel() / 16, j.ravel() / 16


def evaluate_translation_like(e: Map, N: int = 200, escape_y: float = 10.0, resolution: int = 256,
                              tol: float = DISJOINT_TOL, accumulation_tol: float = ACCUMULATION_TOL,
                              exponents: tuple[int, int] = (0, 0),
                              max_segment: float = 0.5) -> CandidateVerdict:
    """Check that iterates of the x-axis under ``e`` march upward and leave every bounded band."""
    axis = x_axis(resolution)
    first_img = PeriodicCurve.from_arrays(*_apply(e, axis, False), check=False)
    first = curves_disjoint(axis, first_img, tol)
    if first.verdict != "disjoint":
        return CandidateVerdict(exponents, False, "not_disjoint", first.verdict)
    if not _is_above(first_img, axis):
        return CandidateVerdict(exponents, False, "downward", "image lies below the x-axis")
    curves = _orbit_curves(e, N, resolution)
    up = [sup_gap(curves[n], curves[n + 1]) for n in range(N)]
    down = [sup_gap(curves[-n], curves[-n - 1]) for n in range(N)]
    for direction, gaps in (("upward", up), ("downward", down)):
        i = _find_accumulation(gaps, accumulation_tol)
        if i is not None:
            level = curves[i + 1].y_range()[1] if direction == "upward" else curves[-i - 1].y_range()[0]
            return CandidateVerdict(exponents, False, "accumulation",
                                    f"{direction} accumulation at y={level:.6g} from n={i + 1}")
    px, py = probe_points()
    for sign, G in ((1, e), (-1, e.inverse())):
        X, Y = px.copy(), py.copy()
        escaped = np.zeros(px.shape, bool)
        for _ in range(N):
            X, Y = G((X, Y))
            Y = np.broadcast_to(np.asarray(Y, float), px.shape)
            escaped |= np.abs(Y) > escape_y
            if escaped.all():
                break
        if not escaped.all():
            k = int(np.argmin(escaped))
            return CandidateVerdict(exponents, False, "bounded_orbit",
                                    f"orbit of ({px[k]:g}, {py[k]:g}) stays within |y| <= {escape_y:g}")
    for n in range(-N, N):
        if max(curves[n].max_segment(), curves[n + 1].max_segment()) > max_segment:
            return CandidateVerdict(exponents, False, "unresolved",
                                    f"iterate {n} is too coarse at resolution {resolution}")
        v = curves_disjoint(curves[n], curves[n + 1], tol)
        if v.verdict != "disjoint" or not _is_above(curves[n + 1], curves[n]):
            return CandidateVerdict(exponents, False, "overlap",
                                    f"iterates {n} and {n + 1}: {v.verdict}")
    hi = next((n for n in range(1, N + 1) if curves[n].y_range()[0] > escape_y), None)
    lo = next((n for n in range(1, N + 1) if curves[-n].y_range()[1] < -escape_y), None)
    if hi is None or lo is None:
        return CandidateVerdict(exponents, False, "no_escape",
                                f"iterates stay within |y| <= {escape_y:g} up to n={N}")
    return CandidateVerdict(exponents, True, "", f"escapes above at n={hi}, below at n={-lo}")


def word_order(bound: int) -> list[tuple[int, int]]:
    """``(a, b)`` with ``|a|, |b| <= bound``, ordered by ``(|a| + |b|, a, b)``, skipping ``(0, 0)``."""
    vecs = [(a, b) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1) if (a, b) != (0, 0)]
    return sorted(vecs, key=lambda v: (abs(v[0]) + abs(v[1]), v[0], v[1]))


def find_translation_like(F: Map, G: Map, word_bound: int = 2, N: int = 200, escape_y: float = 10.0,
                          resolution: int = 256, tol: float = DISJOINT_TOL,
                          accumulation_tol: float = ACCUMULATION_TOL,
                          extra_words: Sequence[tuple[int, int]] = (),
                          check_precondition: bool = True) -> TranslationLikeResult:
    """First word ``F^a G^b`` whose iterates translate the x-axis upward and away.

    All words of the winning length are evaluated so that the rejections of
    competing words are on record.
    """
    if check_precondition:
        m = commutator_deck_element(F, G, [horizontal_translation()], bound=3)
        if m.status != "deck" or not m.exponents or m.exponents[0] == 0:
            raise PreconditionError(f"[F, G] is not a nonzero power of h0 ({m.status})")
    settings = {"word_bound": word_bound, "N": N, "escape_y": escape_y, "resolution": resolution,
                "tol": tol, "accumulation_tol": accumulation_tol}
    order = list(extra_words) + word_order(word_bound)
    verdicts: list[CandidateVerdict] = []
    winner = None
    for a, b in order:
        if winner is not None and abs(a) + abs(b) > abs(winner[0]) + abs(winner[1]):
            break
        e = Compose(F.power(a), G.power(b))
        v = evaluate_translation_like(e, N, escape_y, resolution, tol, accumulation_tol, (a, b))
        verdicts.append(v)
        if v.accepted and winner is None:
            winner = (a, b)
            if (a, b) in extra_words:
                break
    if winner is None:
        return TranslationLikeResult("none_found", None, None, None, tuple(verdicts), settings)
    a, b = winner
    return TranslationLikeResult("found", reduce_word([(0, a), (1, b)]), winner,
                                 Compose(F.power(a), G.power(b)), tuple(verdicts), settings)


# -- straightening ----------------------------------------------------------------------

@dataclass
class VerticalConjugacy:
    """Fiberwise map sending the ``n``-th frontier curve to ``y = n``."""
    frontier: dict[int, PeriodicCurve]
    N: int
    vertical_residual: float = math.nan
    horizontal_drift: float = math.nan
    samples: int = 0

    def _heights(self, x):
        return np.array([self.frontier[n].height(x) for n in range(-self.N, self.N + 1)])

    def forward(self, x, y):
        x, y = np.atleast_1d(np.asarray(x, float)), np.atleast_1d(np.asarray(y, float))
        H = self._heights(x)
        k = np.clip(np.sum(H <= y[None], axis=0) - 1, 0, 2 * self.N - 1)
        cols = np.arange(len(x))
        lo, hi = H[k, cols], H[k + 1, cols]
        return x, (k - self.N) + (y - lo) / (hi - lo)

    def inverse(self, x, s):
        x, s = np.atleast_1d(np.asarray(x, float)), np.atleast_1d(np.asarray(s, float))
        H = self._heights(x)
        k = np.clip(np.floor(s).astype(int) + self.N, 0, 2 * self.N - 1)
        cols = np.arange(len(x))
        lo, hi = H[k, cols], H[k + 1, cols]
        return x, lo + (s - (k - self.N)) * (hi - lo)

    def to_dict(self) -> dict:
        return {"N": self.N, "vertical_residual": self.vertical_residual,
                "horizontal_drift": self.horizontal_drift, "samples": self.samples}


def build_vertical_conjugacy(e: Map, N: int = 20, resolution: int = 256, samples: int = 64) -> VerticalConjugacy:
    """Straighten the iterates of the x-axis under ``e``.

    The residual compares ``Phi e Phi^-1`` with ``(x, s) -> (x, s + 1)`` on
    points whose image stays inside the constructed band; vertical and
    horizontal parts are reported separately.
    """
    curves = _orbit_curves(e, N, resolution)
    for n in range(-N, N + 1):
        if not curves[n].is_graph():
            raise RefusalError(f"frontier curve {n} is not a graph over x")
    for n in range(-N, N):
        if not np.all(_graph_gap(curves[n], curves[n + 1])[1] > 0):
            raise RefusalError(f"frontier curves {n} and {n + 1} are not strictly ordered")
    phi = VerticalConjugacy(curves, N)
    m = max(samples, 1)
    xs = (np.arange(m) + 0.5) / m
    ss = np.linspace(-N + 0.5, N - 1.5, max(2 * N - 1, 2))
    X, S = np.meshgrid(xs, ss, indexing="ij")
    X, S = X.ravel(), S.ravel()
    px, py = phi.inverse(X, S)
    qx, qy = e((px, py))
    rx, rs = phi.forward(np.asarray(qx, float), np.asarray(qy, float))
    phi.vertical_residual = float(np.max(np.abs(rs - (S + 1))))
    phi.horizontal_drift = float(np.max(np.abs(rx - X)))
    phi.samples = len(X)
    return phi
