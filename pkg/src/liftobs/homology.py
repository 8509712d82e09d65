"""First homology of triangulated surfaces and homological translation vectors.

Surfaces are simplicial complexes given by vertices and oriented triangles.
Grid complexes of the flat torus, the closed annulus and the disk carry their
model-space geometry, which the loop-closing construction needs.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .intmat import IntMatrix, rational_inverse, smith_normal_form
from .maps import Compose, Map, is_array
from .plane import deck_commutation_check, translate


class InvalidComplexError(ValueError):
    pass


class NotIsotopicError(ValueError):
    """The lift does not commute with the deck group of the surface."""


class LoopError(ValueError):
    pass


# -- complexes -----------------------------------------------------------------------

@dataclass
class TriangulatedSurface:
    vertices: list[tuple]
    triangles: list[tuple[int, int, int]]
    identification: str = "none"         # torus | annulus | disk | none
    shape: tuple[int, int] | None = None  # grid columns, rows

    def __post_init__(self):
        self.vertices = [tuple(v) for v in self.vertices]
        self.triangles = [tuple(int(i) for i in t) for t in self.triangles]
        for t in self.triangles:
            if len(set(t)) != 3 or any(not 0 <= i < len(self.vertices) for i in t):
                raise InvalidComplexError(f"bad triangle {t}")
        edges = sorted({tuple(sorted((t[i], t[(i + 1) % 3]))) for t in self.triangles for i in range(3)})
        self.edges: list[tuple[int, int]] = edges
        self.edge_index = {e: k for k, e in enumerate(edges)}
        if not self.boundary_squared_zero():
            raise InvalidComplexError("boundary of boundary is not zero")

    # chain complex
    @cached_property
    def boundary1(self) -> IntMatrix:
        rows = [[0] * len(self.edges) for _ in self.vertices]
        for k, (a, b) in enumerate(self.edges):
            rows[a][k] -= 1
            rows[b][k] += 1
        return IntMatrix(rows, cols=len(self.edges))

    @cached_property
    def boundary2(self) -> IntMatrix:
        rows = [[0] * len(self.triangles) for _ in self.edges]
        for k, t in enumerate(self.triangles):
            for i in range(3):
                a, b = t[i], t[(i + 1) % 3]
                e, s = self.oriented_edge(a, b)
                rows[e][k] += s
        return IntMatrix(rows, cols=len(self.triangles))

    def oriented_edge(self, a: int, b: int) -> tuple[int, int]:
        """Edge index and sign of the step ``a -> b``."""
        if (a, b) in self.edge_index:
            return self.edge_index[(a, b)], 1
        if (b, a) in self.edge_index:
            return self.edge_index[(b, a)], -1
        raise LoopError(f"vertices {a} and {b} are not joined by an edge")

    def boundary_squared_zero(self) -> bool:
        if not self.triangles:
            return True
        prod = self.boundary1 @ self.boundary2
        return all(v == 0 for r in prod.tolist() for v in r)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    # homology
    @cached_property
    def _h1(self) -> "_H1Data":
        return _compute_h1(self)

    def betti1(self) -> int:
        return self._h1.betti

    def to_json(self) -> dict:
        def num(v):
            return str(v) if isinstance(v, Fraction) and v.denominator != 1 else (
                int(v) if isinstance(v, Fraction) else v)
        return {"identification": self.identification,
                "shape": list(self.shape) if self.shape else None,
                "vertices": [[num(c) for c in v] for v in self.vertices],
                "triangles": [list(t) for t in self.triangles]}

    @classmethod
    def from_json(cls, data: dict) -> "TriangulatedSurface":
        def num(v):
            return Fraction(v) if isinstance(v, (int, str)) else v
        shape = tuple(data["shape"]) if data.get("shape") else None
        return cls([tuple(num(c) for c in v) for v in data["vertices"]],
                   [tuple(t) for t in data["triangles"]],
                   data.get("identification", "none"), shape)

    @classmethod
    def load(cls, path: str | Path) -> "TriangulatedSurface":
        return cls.from_json(json.loads(Path(path).read_text()))


def _grid(cols: int, rows: int, wrap_x: bool, wrap_y: bool, identification: str) -> TriangulatedSurface:
    nx = cols if wrap_x else cols + 1
    ny = rows if wrap_y else rows + 1

    def vid(i: int, j: int) -> int:
        return (i % nx if wrap_x else i) + nx * (j % ny if wrap_y else j)

    verts = [(Fraction(i, cols), Fraction(j, rows)) for j in range(ny) for i in range(nx)]
    tris = []
    for j in range(rows):
        for i in range(cols):
            tris.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            tris.append((vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)))
    return TriangulatedSurface(verts, tris, identification, (cols, rows))


def torus_grid(n: int = 6) -> TriangulatedSurface:
    """``n x n`` squares on the unit square with opposite sides glued, two triangles each."""
    if n < 3:
        raise ValueError("a simplicial torus grid needs n >= 3")
    return _grid(n, n, True, True, "torus")


def annulus_grid(n: int = 6, m: int = 2) -> TriangulatedSurface:
    """``R/Z x [0, 1]`` with ``n`` columns and ``m`` rows."""
    if n < 3 or m < 1:
        raise ValueError("annulus grid needs n >= 3 and m >= 1")
    return _grid(n, m, True, False, "annulus")


def disk_grid(n: int = 3) -> TriangulatedSurface:
    if n < 1:
        raise ValueError("disk grid needs n >= 1")
    return _grid(n, n, False, False, "disk")


# -- H_1 via Smith normal form ----------------------------------------------------------

@dataclass
class _H1Data:
    betti: int
    basis: list[tuple[int, ...]]                 # integer edge chains
    functional: list[list[Fraction]]             # betti x edges; chain -> coordinates


def _compute_h1(s: TriangulatedSurface) -> _H1Data:
    E = len(s.edges)
    d1, _, v1 = smith_normal_form(s.boundary1)
    r1 = sum(1 for x in d1.diagonal() if x)
    cycles = [v1.column(j) for j in range(r1, E)]          # Z_1 basis
    if s.triangles:
        d2, u2, _ = smith_normal_form(s.boundary2)
        r2 = sum(1 for x in d2.diagonal() if x)
    else:
        u2, r2 = IntMatrix.identity(E), 0
    # rows of u2 beyond the rank vanish on boundaries
    P = IntMatrix([u2.row(i) for i in range(r2, E)], cols=E) if r2 < E else None
    if P is None or not cycles:
        return _H1Data(0, [], [])
    Z = IntMatrix(zip(*cycles), cols=len(cycles))
    M = P @ Z
    dm, um, vm = smith_normal_form(M)
    diag = dm.diagonal()
    r = sum(1 for x in diag if x)
    if any(x > 1 for x in diag[:r]):
        raise InvalidComplexError("H_1 has torsion; only orientable surfaces are supported")
    basis = [Z.apply(vm.column(i)) for i in range(r)]
    ump = um @ P
    functional = [[Fraction(v, diag[i]) for v in ump.row(i)] for i in range(r)]
    data = _H1Data(r, basis, functional)
    preferred = preferred_loops(s)
    if preferred is not None and len(preferred) == r:
        # re-express coordinates in the basis of horizontal / vertical loops
        q = [[sum(f * c for f, c in zip(row, loop)) for loop in preferred] for row in functional]
        qi = _frac_inverse(q)
        data.functional = [[sum(qi[i][k] * functional[k][e] for k in range(r)) for e in range(E)]
                           for i in range(r)]
        data.basis = [tuple(loop) for loop in preferred]
    return data


def _frac_inverse(q: list[list[Fraction]]) -> list[list[Fraction]]:
    den = math.lcm(*(Fraction(v).denominator for row in q for v in row))
    inv = rational_inverse(IntMatrix([[int(v * den) for v in row] for row in q]))
    return [[v * den for v in row] for row in inv]


def preferred_loops(s: TriangulatedSurface) -> list[list[int]] | None:
    """Edge chains of the horizontal (and, on the torus, vertical) grid loop through vertex 0."""
    if s.shape is None or s.identification not in ("torus", "annulus"):
        return None
    cols, rows = s.shape
    grid = GridGeometry(s)
    loops = [grid.chain_of_cover_path([(i, 0) for i in range(cols + 1)])]
    if s.identification == "torus":
        loops.append(grid.chain_of_cover_path([(0, j) for j in range(rows + 1)]))
    return [list(c) for c in loops]


def h1_basis(s: TriangulatedSurface) -> tuple[int, list[tuple[int, ...]]]:
    if not s.boundary_squared_zero():
        raise InvalidComplexError("boundary of boundary is not zero")
    return s.betti1(), list(s._h1.basis)


def chain_class(s: TriangulatedSurface, chain: Sequence) -> tuple:
    """Coordinates of a 1-cycle; raises if the chain has a boundary."""
    bd = [sum(s.boundary1[i, k] * chain[k] for k in range(len(chain)) if chain[k])
          for i in range(len(s.vertices))]
    if any(bd):
        raise LoopError("chain is not a cycle")
    out = []
    for row in s._h1.functional:
        out.append(sum(f * c for f, c in zip(row, chain) if c))
    return tuple(_tidy(v) for v in out)


def _tidy(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def path_chain(s: TriangulatedSurface, path: Sequence[int]) -> list[int]:
    chain = [0] * len(s.edges)
    for a, b in zip(path, path[1:]):
        e, sign = s.oriented_edge(a, b)
        chain[e] += sign
    return chain


def loop_class(s: TriangulatedSurface, loop: Sequence[int], base: int | None = None) -> tuple:
    """Homology coordinates of a closed vertex path."""
    if len(loop) < 1:
        raise LoopError("empty loop")
    if loop[0] != loop[-1]:
        raise LoopError("path is not closed")
    if base is not None and loop[0] != base:
        raise LoopError(f"loop starts at {loop[0]}, not at the base vertex {base}")
    return chain_class(s, path_chain(s, loop))


# -- flat grid geometry --------------------------------------------------------------

class GridGeometry:
    """Model-space data of a grid surface: vertex lattice, simplices, deck group."""

    def __init__(self, s: TriangulatedSurface):
        if s.shape is None or s.identification not in ("torus", "annulus", "disk"):
            raise ValueError("surface has no grid geometry")
        self.s = s
        self.cols, self.rows = s.shape
        self.kind = s.identification
        self.wrap_y = self.kind == "torus"
        self.wrap_x = self.kind in ("torus", "annulus")

    @property
    def homology_axes(self) -> tuple[int, ...]:
        return {"torus": (0, 1), "annulus": (0,), "disk": ()}[self.kind]

    def deck(self) -> list[Map]:
        return [translate(1, 0), translate(0, 1)][: len(self.homology_axes)]

    def vertex_id(self, i: int, j: int) -> int:
        nx = self.cols if self.wrap_x else self.cols + 1
        ny = self.rows if self.wrap_y else self.rows + 1
        ii = i % nx if self.wrap_x else i
        jj = j % ny if self.wrap_y else j
        if not (0 <= ii < nx and 0 <= jj < ny):
            raise LoopError(f"grid vertex ({i}, {j}) lies outside the model")
        return ii + nx * jj

    def chain_of_cover_path(self, path: Sequence[tuple[int, int]]) -> list[int]:
        """Edge chain of a path of adjacent lattice vertices in the universal cover."""
        chain = [0] * len(self.s.edges)
        for (i0, j0), (i1, j1) in zip(path, path[1:]):
            if (i0, j0) == (i1, j1):
                continue
            e, sign = self.s.oriented_edge(self.vertex_id(i0, j0), self.vertex_id(i1, j1))
            chain[e] += sign
        return chain

    def locate(self, p) -> tuple:
        """Smallest closed simplex containing ``p`` (in the fundamental domain).

        Returns ``(simplex_id, center)``; exact for rational input.
        """
        x, y = p
        u, v = x * self.cols, y * self.rows
        i, j = math.floor(u), math.floor(v)
        fu, fv = u - i, v - j
        if fu == 0 and fv == 0:
            sid, corners = ("v", i, j), [(i, j)]
        elif fv == 0:
            sid, corners = ("h", i, j), [(i, j), (i + 1, j)]
        elif fu == 0:
            sid, corners = ("w", i, j), [(i, j), (i, j + 1)]
        elif fu == fv:
            sid, corners = ("d", i, j), [(i, j), (i + 1, j + 1)]
        elif fu > fv:
            sid, corners = ("lo", i, j), [(i, j), (i + 1, j), (i + 1, j + 1)]
        else:
            sid, corners = ("up", i, j), [(i, j), (i + 1, j + 1), (i, j + 1)]
        exact = isinstance(x, Fraction) and isinstance(y, Fraction)
        k = len(corners)
        if exact:
            cx = Fraction(sum(c[0] for c in corners), k * self.cols)
            cy = Fraction(sum(c[1] for c in corners), k * self.rows)
        else:
            cx = sum(c[0] for c in corners) / (k * self.cols)
            cy = sum(c[1] for c in corners) / (k * self.rows)
        return sid, (cx, cy)

    def reduce(self, p) -> tuple[tuple, tuple[int, int]]:
        """Fundamental-domain representative of a cover point and the deck offset."""
        x, y = p
        kx = math.floor(x) if self.wrap_x else 0
        ky = math.floor(y) if self.wrap_y else 0
        return (x - kx, y - ky), (kx, ky)

    def snap_polyline(self, points: Sequence[tuple]) -> list[tuple[int, int]]:
        """Lattice path shadowing a polyline in the cover.

        Points are sampled with spacing below half a grid step and rounded to the
        nearest vertex; consecutive vertices are joined horizontally, then
        vertically.
        """
        h = 0.5 / max(self.cols, self.rows)
        out: list[tuple[int, int]] = []

        def push(q):
            i, j = _round_half_up(q[0] * self.cols), _round_half_up(q[1] * self.rows)
            if out:
                pi, pj = out[-1]
                if (i, j) == (pi, pj):
                    return
                if i != pi:
                    out.append((i, pj))
                if j != pj:
                    out.append((i, j))
            else:
                out.append((i, j))

        for a, b in zip(points, points[1:]):
            span = max(abs(float(b[0] - a[0])), abs(float(b[1] - a[1])))
            steps = max(1, math.ceil(span / h))
            for t in range(steps):
                push(tuple(_lerp(a[c], b[c], t, steps) for c in range(2)))
        push(points[-1])
        return out


def _lerp(a, b, t: int, steps: int):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a + (b - a) * Fraction(t, steps)
    return float(a) + (float(b) - float(a)) * t / steps


def _round_half_up(v) -> int:
    return math.floor(v + Fraction(1, 2)) if isinstance(v, Fraction) else math.floor(v + 0.5)


# -- maps tracked by a homotopy ------------------------------------------------------

@dataclass
class HomotopyTrackedMap:
    """A lift to the universal cover of a flat surface with the straight-line
    homotopy from the identity.

    Construction checks that the lift commutes with the deck group (otherwise the
    map downstairs is not isotopic to the identity through this homotopy), and on
    the annulus that the boundary lines are preserved.
    """
    lift: Map
    surface: TriangulatedSurface
    samples: int = 32
    tol: float = 1e-9

    def __post_init__(self):
        self.grid = GridGeometry(self.surface)
        for d in self.grid.deck():
            chk = deck_commutation_check(self.lift, d, self.samples, self.tol)
            if chk.verdict != "commutes":
                raise NotIsotopicError(
                    f"{self.lift.label()} does not commute with deck map {d.label()} "
                    f"(deviation {chk.max_deviation:g} at {chk.witness})")
        if self.grid.kind == "annulus":
            xs = [Fraction(i, 17) for i in range(17)]
            for x in xs:
                for y in (Fraction(0), Fraction(1)):
                    p = (x, y) if self.lift.exact else (float(x), float(y))
                    if abs(float(self.lift(p)[1]) - float(y)) > self.tol:
                        raise NotIsotopicError("lift does not preserve the annulus boundary")

    def point(self, p) -> tuple:
        return tuple(p) if self.lift.exact else tuple(float(v) for v in p)

    def homotopy(self, t, p) -> tuple:
        q = self.lift(p)
        return tuple((1 - t) * a + t * b for a, b in zip(p, q))

    def orbit(self, p, n: int) -> list[tuple]:
        pts = [self.point(p)]
        for _ in range(n):
            pts.append(self.lift(pts[-1]))
        return pts


# -- the loop-closing construction -------------------------------------------------------

@dataclass(frozen=True)
class LoopClass:
    coordinates: tuple
    displacement_class: tuple         # lattice offset of the end point
    start_cell: tuple
    end_cell: tuple
    arithmetic_mode: str

    def to_dict(self) -> dict:
        return {"coordinates": [_jsonable(v) for v in self.coordinates],
                "arithmetic_mode": self.arithmetic_mode}


def _jsonable(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    return v


def h_n_polyline(f: HomotopyTrackedMap, x, n: int) -> tuple[list[tuple], tuple[int, int]]:
    """The lifted loop: base vertex, center of the cell of ``x``, the orbit of
    ``x`` along the homotopy for ``n`` steps, the center of the end cell, and the
    translated base vertex.
    """
    g = f.grid
    x0, _ = g.reduce(f.point(x))
    orbit = f.orbit(x0, n)
    _, c0 = g.locate(x0)
    end_rep, k = g.reduce(orbit[-1])
    _, c1 = g.locate(end_rep)
    zero = orbit[0][0] * 0
    base = (zero, zero)
    c1 = (c1[0] + k[0], c1[1] + k[1])
    return [base, c0, *orbit, c1, (zero + k[0], zero + k[1])], k


def h_n_loop_class(s: TriangulatedSurface, f: HomotopyTrackedMap, x, n: int) -> LoopClass:
    """Homology class of the closed loop through the orbit of ``x``, computed from
    the edge chain of a lattice path shadowing it.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if f.surface is not s:
        raise ValueError("map is tracked on a different surface")
    g = f.grid
    poly, k = h_n_polyline(f, x, n)
    path = g.snap_polyline(poly)
    chain = g.chain_of_cover_path(path)
    coords = chain_class(s, chain)
    x0, _ = g.reduce(f.point(x))
    sid0, _ = g.locate(x0)
    sid1, _ = g.locate(g.reduce(poly[-3])[0])
    disp = tuple(k[a] for a in g.homology_axes)
    return LoopClass(coords, disp, sid0, sid1 + (k,), "exact" if f.lift.exact else "float")


def displacement_class(f: HomotopyTrackedMap, x, n: int) -> tuple[int, ...]:
    """Oracle for :func:`h_n_loop_class`: the integer part of ``F^n(x)`` for ``x`` in the fundamental domain."""
    g = f.grid
    x0, _ = g.reduce(f.point(x))
    end = f.orbit(x0, n)[-1]
    _, k = g.reduce(end)
    return tuple(k[a] for a in g.homology_axes)


def cell_id(f: HomotopyTrackedMap, x) -> tuple:
    """Simplex of ``x``, simplex of ``f(x)``, and the lattice offset of the lifted image."""
    g = f.grid
    x0, _ = g.reduce(f.point(x))
    rep, k = g.reduce(f.lift(x0))
    return g.locate(x0)[0], g.locate(rep)[0], k


# -- translation vectors --------------------------------------------------------------

@dataclass(frozen=True)
class TauEstimate:
    value: tuple
    displacement_form: tuple
    n: int
    bound: float
    agrees: bool
    arithmetic_mode: str

    def to_dict(self) -> dict:
        return {"value": [float(v) for v in self.value],
                "displacement_form": [float(v) for v in self.displacement_form],
                "n": self.n, "agreement_bound": self.bound, "agrees": self.agrees,
                "arithmetic_mode": self.arithmetic_mode}


def model_diameter(g: GridGeometry) -> float:
    return math.sqrt(2.0)


def tau_point_estimate(f: HomotopyTrackedMap, x, n: int) -> TauEstimate:
    """``[h_n(x)] / n`` next to ``(F^n(x) - x) / n``; they differ by at most ``2 diam / n``."""
    if n < 1:
        raise ValueError("n must be positive")
    cls = h_n_loop_class(f.surface, f, x, n)
    g = f.grid
    x0, _ = g.reduce(f.point(x))
    end = f.orbit(x0, n)[-1]
    disp = tuple((end[a] - x0[a]) / n for a in g.homology_axes)
    value = tuple(Fraction(v, n) if isinstance(v, int) and f.lift.exact else v / n
                  for v in cls.coordinates)
    bound = 2 * model_diameter(g) / n
    agrees = all(abs(float(a) - float(b)) <= bound for a, b in zip(value, disp))
    if not agrees:
        raise ArithmeticError(f"loop class {value} and displacement {disp} disagree beyond {bound}")
    return TauEstimate(value, disp, n, bound, agrees, cls.arithmetic_mode)


@dataclass(frozen=True)
class SurfaceMeasure:
    """Weighted sample points in the fundamental domain."""
    points: tuple
    weights: tuple
    kind: str = "weighted"
    approximate: bool = False

    def __post_init__(self):
        if len(self.points) != len(self.weights) or not self.points:
            raise ValueError("measure needs matching non-empty points and weights")
        if abs(float(sum(self.weights)) - 1) > 1e-9:
            raise ValueError("weights must sum to 1")

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        pts = np.array([[float(c) for c in p] for p in self.points])
        return pts[:, 0], pts[:, 1], np.array([float(w) for w in self.weights])


def lebesgue_measure(nodes_per_side: int = 100) -> SurfaceMeasure:
    """Midpoint rule on ``nodes_per_side^2`` cells of the unit square."""
    n = nodes_per_side
    pts = tuple(((i + 0.5) / n, (j + 0.5) / n) for j in range(n) for i in range(n))
    return SurfaceMeasure(pts, (1.0 / (n * n),) * (n * n), "lebesgue")


def birkhoff_measure(f: HomotopyTrackedMap, x, steps: int) -> SurfaceMeasure:
    """Equal weights on an orbit segment, an approximation to an invariant measure."""
    g = f.grid
    p = g.reduce(f.point(x))[0]
    pts = []
    for _ in range(steps):
        pts.append(p)
        p = g.reduce(f.lift(p))[0]
    return SurfaceMeasure(tuple(pts), (1.0 / steps,) * steps, "birkhoff", approximate=True)


@dataclass(frozen=True)
class TauMeasure:
    value: tuple
    class_quadrature: tuple
    coboundary_defect: tuple
    nodes: int
    kind: str

    def to_dict(self) -> dict:
        return {"value": list(self.value), "class_quadrature": list(self.class_quadrature),
                "coboundary_defect": list(self.coboundary_defect), "nodes": self.nodes,
                "measure": self.kind}


def tau_measure(f: HomotopyTrackedMap, mu: SurfaceMeasure) -> TauMeasure:
    """Mean translation vector against ``mu``.

    The one-step class is ``[h_1(x)] = (F(x) - x) + (psi(x) - psi(f(x)))`` with
    ``psi`` the fundamental-domain coordinate, so for an invariant measure its
    integral equals that of the displacement.  The displacement is smooth and
    integrates to quadrature accuracy; the step-function class does not, and is
    reported alongside together with the coboundary term.
    """
    g = f.grid
    xs, ys, w = mu.arrays()
    X, Y = f.lift((xs, ys))
    disp = (X - xs, Y - ys)
    kx = np.floor(X) if g.wrap_x else np.zeros_like(X)
    ky = np.floor(Y) if g.wrap_y else np.zeros_like(Y)
    klass = (kx, ky)
    axes = g.homology_axes
    value = tuple(float(np.dot(w, disp[a])) for a in axes)
    raw = tuple(float(np.dot(w, klass[a])) for a in axes)
    return TauMeasure(value, raw, tuple(r - v for r, v in zip(raw, value)), len(mu.points), mu.kind)


def shifted_homotopy_lift(f: HomotopyTrackedMap, shift: Sequence[int]) -> HomotopyTrackedMap:
    """Compose the lift with the deck translation by ``shift`` (another homotopy lift)."""
    return HomotopyTrackedMap(Compose(translate(*shift), f.lift), f.surface, f.samples, f.tol)


FIXTURE_DIR = Path(__file__).with_name("fixtures")


def fixture_surfaces() -> dict[str, TriangulatedSurface]:
    return {p.stem: TriangulatedSurface.load(p) for p in sorted(FIXTURE_DIR.glob("*.json"))}
