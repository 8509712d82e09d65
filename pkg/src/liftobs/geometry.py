"""Segment predicates and distances for polylines in the plane."""
from __future__ import annotations

import numpy as np


def orient(a, b, c):
    """Twice the signed area of ``abc``; positive for a left turn."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a, b, p) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_intersect(p1, p2, q1, q2) -> bool:
    """Closed segments ``p1p2`` and ``q1q2`` share a point.  Exact for rationals."""
    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return ((d1 == 0 and _on_segment(q1, q2, p1)) or (d2 == 0 and _on_segment(q1, q2, p2))
            or (d3 == 0 and _on_segment(p1, p2, q1)) or (d4 == 0 and _on_segment(p1, p2, q2)))


def segments_cross_properly(p1, p2, q1, q2) -> bool:
    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def point_segment_distance(p, a, b) -> float:
    ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
    px, py = float(p[0]), float(p[1])
    dx, dy = bx - ax, by - ay
    den = dx * dx + dy * dy
    t = 0.0 if den == 0 else min(1.0, max(0.0, ((px - ax) * dx + (py - ay) * dy) / den))
    return float(np.hypot(px - ax - t * dx, py - ay - t * dy))


def segment_distance(p1, p2, q1, q2) -> float:
    if segments_intersect(p1, p2, q1, q2):
        return 0.0
    return min(point_segment_distance(p1, q1, q2), point_segment_distance(p2, q1, q2),
               point_segment_distance(q1, p1, p2), point_segment_distance(q2, p1, p2))


# -- vectorised versions -------------------------------------------------------------

def _point_seg_dist(P, A, B):
    """Distances from points ``P`` to segments ``AB``; all arrays broadcast to ``(..., 2)``."""
    D = B - A
    den = np.einsum("...i,...i->...", D, D)
    num = np.einsum("...i,...i->...", P - A, D)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    proj = A + t[..., None] * D
    return np.linalg.norm(P - proj, axis=-1)


def _cross(a, b, c):
    return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])


def polyline_proximity(P: np.ndarray, Q: np.ndarray, reach: float) -> tuple[float, tuple[int, int] | None, bool]:
    """Closest approach of two polylines given as ``(n, 2)`` vertex arrays.

    See :func:`segment_set_proximity`.
    """
    return segment_set_proximity(P[:-1], P[1:], Q[:-1], Q[1:], reach)


def segment_set_proximity(A0, A1, B0, B1, reach: float, chunk: int = 1 << 20):
    """Closest approach between segment sets ``A0A1`` and ``B0B1``.

    Only pairs whose bounding boxes come within ``reach`` are examined; if none
    do, the distance is ``inf``.  Returns ``(distance, (i, j) witness,
    proper_crossing_found)``.
    """
    alo, ahi = np.minimum(A0, A1), np.maximum(A0, A1)
    blo, bhi = np.minimum(B0, B1), np.maximum(B0, B1)
    best, witness, proper_any = float("inf"), None, False
    step = max(1, chunk // max(len(B0), 1))
    for s in range(0, len(A0), step):
        sl = slice(s, s + step)
        near = ((alo[sl, None, 0] <= bhi[None, :, 0] + reach) & (blo[None, :, 0] <= ahi[sl, None, 0] + reach)
                & (alo[sl, None, 1] <= bhi[None, :, 1] + reach) & (blo[None, :, 1] <= ahi[sl, None, 1] + reach))
        ii, jj = np.nonzero(near)
        if ii.size == 0:
            continue
        ii = ii + s
        a0, a1, b0, b1 = A0[ii], A1[ii], B0[jj], B1[jj]
        d1, d2 = _cross(b0, b1, a0), _cross(b0, b1, a1)
        d3, d4 = _cross(a0, a1, b0), _cross(a0, a1, b1)
        proper = (d1 * d2 < 0) & (d3 * d4 < 0)
        dist = np.minimum.reduce([_point_seg_dist(a0, b0, b1), _point_seg_dist(a1, b0, b1),
                                  _point_seg_dist(b0, a0, a1), _point_seg_dist(b1, a0, a1)])
        dist = np.where(proper, 0.0, dist)
        k = int(np.argmin(dist))
        proper_any = proper_any or bool(proper.any())
        if dist[k] < best:
            best, witness = float(dist[k]), (int(ii[k]), int(jj[k]))
    return best, witness, proper_any


def count_proper_crossings(P: np.ndarray, Q: np.ndarray) -> int:
    """Number of properly crossing segment pairs; the brute-force oracle."""
    n = 0
    for i in range(len(P) - 1):
        for j in range(len(Q) - 1):
            if segments_cross_properly(P[i], P[i + 1], Q[j], Q[j + 1]):
                n += 1
    return n
