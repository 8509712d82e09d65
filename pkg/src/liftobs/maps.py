"""Expression trees of invertible maps of R^d.

Every map evaluates on a tuple of coordinates.  Coordinates may be
``Fraction``/``int`` (exact path, when every primitive in the tree is
rational-exact), ``float``, or equal-length numpy arrays (vectorised float
path used by the curve simulations).
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Any, Sequence

import numpy as np

BISECTION_WIDTH = 1e-12


class InversionError(ArithmeticError):
    """A bracketed root search failed; the primitive is not monotone."""


def is_array(v: Any) -> bool:
    return isinstance(v, np.ndarray)


def sin(v):
    return np.sin(v) if is_array(v) else math.sin(v)


def cos(v):
    return np.cos(v) if is_array(v) else math.cos(v)


def floor(v):
    return np.floor(v) if is_array(v) else math.floor(v)


def as_number(v: Any) -> Fraction | float:
    """Parse ``int``, ``float``, ``Fraction`` or ``"p/q"``/decimal strings.

    Integers and ``"p/q"`` strings are exact; decimal strings and floats are
    floats (they carry no exactness claim).
    """
    if isinstance(v, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(v, Rational):
        return Fraction(v)
    if isinstance(v, float):
        return v
    if isinstance(v, str):
        s = v.strip()
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        try:
            return Fraction(int(s))
        except ValueError:
            return float(s)
    raise TypeError(f"cannot interpret {v!r} as a number")


def is_exact_number(v: Any) -> bool:
    return isinstance(v, Rational)


def coeff(c: Fraction | float, like):
    """Coefficient converted to match the arithmetic of ``like``."""
    if is_array(like) or isinstance(like, float):
        return float(c)
    return c


def number_json(v) -> Any:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return v


def bisect_increasing(fn, target, lo, hi, width: float = BISECTION_WIDTH):
    """Solve ``fn(y) = target`` for increasing ``fn`` on the bracket [lo, hi].

    Works elementwise on numpy arrays.
    """
    flo, fhi = fn(lo) - target, fn(hi) - target
    bad = (flo > 0) | (fhi < 0)
    if np.any(bad):
        raise InversionError("root not bracketed; map is not increasing on the bracket")
    if is_array(target) or is_array(lo):
        lo = np.asarray(lo, dtype=float) + np.zeros_like(np.asarray(target, dtype=float))
        hi = np.asarray(hi, dtype=float) + np.zeros_like(lo)
        for _ in range(200):
            if np.all(hi - lo <= width):
                break
            mid = 0.5 * (lo + hi)
            above = fn(mid) > target
            hi = np.where(above, mid, hi)
            lo = np.where(above, lo, mid)
        return 0.5 * (lo + hi)
    lo, hi = float(lo), float(hi)
    for _ in range(200):
        if hi - lo <= width:
            break
        mid = 0.5 * (lo + hi)
        if fn(mid) > target:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


class Map:
    """Base class.  Subclasses define ``dim``, ``_eval`` and ``_inverse_eval``."""

    dim: int = 2
    exact: bool = False
    reversing: bool = False
    name: str = ""

    def _eval(self, p: tuple) -> tuple:
        raise NotImplementedError

    def _inverse_eval(self, p: tuple) -> tuple:
        raise NotImplementedError

    def __call__(self, p):
        if self.dim == 1 and not isinstance(p, (tuple, list)):
            return self._eval((p,))[0]
        return self._eval(tuple(p))

    def evaluate(self, p):
        return self(p)

    def inverse(self) -> "Map":
        return Inverse(self)

    def __matmul__(self, other: "Map") -> "Map":
        return Compose(self, other)

    def power(self, k: int) -> "Map":
        if k == 0:
            return Identity(self.dim)
        return Power(self if k > 0 else self.inverse(), abs(k))

    def to_json(self) -> dict:
        raise NotImplementedError

    def label(self) -> str:
        return self.name or type(self).__name__

    def __repr__(self) -> str:
        return f"<{self.label()}>"


class Identity(Map):
    def __init__(self, dim: int):
        self.dim = dim
        self.exact = True
        self.name = "id"

    def _eval(self, p):
        return p

    _inverse_eval = _eval

    def inverse(self):
        return self

    def to_json(self):
        return {"type": "identity", "dim": self.dim}


class Compose(Map):
    """``maps[0] o maps[1] o ... o maps[-1]`` (the last map acts first)."""

    def __init__(self, *maps: Map):
        flat: list[Map] = []
        for m in maps:
            flat.extend(m.maps if isinstance(m, Compose) else [m])
        if not flat:
            raise ValueError("empty composition")
        dims = {m.dim for m in flat}
        if len(dims) != 1:
            raise ValueError(f"cannot compose maps of dimensions {sorted(dims)}")
        self.maps = tuple(flat)
        self.dim = flat[0].dim
        self.exact = all(m.exact for m in flat)
        self.reversing = sum(m.reversing for m in flat) % 2 == 1
        self.name = "(" + " o ".join(m.label() for m in flat) + ")"

    def _eval(self, p):
        for m in reversed(self.maps):
            p = m._eval(p)
        return p

    def _inverse_eval(self, p):
        for m in self.maps:
            p = m.inverse()._eval(p)
        return p

    def inverse(self):
        return Compose(*(m.inverse() for m in reversed(self.maps)))

    def to_json(self):
        return {"type": "compose", "maps": [m.to_json() for m in self.maps]}


class Power(Map):
    def __init__(self, base: Map, k: int):
        if k < 1:
            raise ValueError("Power needs k >= 1; use Map.power")
        self.base, self.k = base, k
        self.dim, self.exact = base.dim, base.exact
        self.reversing = base.reversing and k % 2 == 1
        self.name = f"{base.label()}^{k}"

    def _eval(self, p):
        for _ in range(self.k):
            p = self.base._eval(p)
        return p

    def inverse(self):
        return Power(self.base.inverse(), self.k)

    def to_json(self):
        return {"type": "compose", "maps": [self.base.to_json()] * self.k}


class Inverse(Map):
    def __init__(self, of: Map):
        self.of = of
        self.dim, self.exact = of.dim, of.exact
        self.reversing = of.reversing
        self.name = f"{of.label()}^-1"

    def _eval(self, p):
        return self.of._inverse_eval(p)

    def _inverse_eval(self, p):
        return self.of._eval(p)

    def inverse(self):
        return self.of

    def to_json(self):
        return {"type": "inverse", "of": self.of.to_json()}


class AffineMap(Map):
    """``p -> A p + b`` with rational (or float) coefficients."""

    def __init__(self, matrix: Sequence[Sequence], offset: Sequence | None = None,
                 name: str = ""):
        mat = tuple(tuple(as_number(v) for v in row) for row in matrix)
        n = len(mat)
        if any(len(r) != n for r in mat):
            raise ValueError("affine matrix must be square")
        off = tuple(as_number(v) for v in (offset if offset is not None else [0] * n))
        if len(off) != n:
            raise ValueError("offset dimension mismatch")
        self.matrix, self.offset = mat, off
        self.dim = n
        self.exact = all(is_exact_number(v) for r in mat for v in r) and \
            all(is_exact_number(v) for v in off)
        self.name = name
        self.reversing = bool(np.linalg.det(np.array(mat, dtype=float)) < 0)
        self._inv: AffineMap | None = None

    def _eval(self, p):
        like = p[0]
        return tuple(sum((coeff(a, like) * x for a, x in zip(row, p)), coeff(b, like))
                     for row, b in zip(self.matrix, self.offset))

    def inverse(self):
        if self._inv is None:
            from .intmat import IntMatrix, rational_inverse  # local: avoid cycle
            if self.exact:
                # denominators cleared so the rational inverse routine applies
                den = math.lcm(*(Fraction(v).denominator for r in self.matrix for v in r))
                inv = rational_inverse(IntMatrix([[int(v * den) for v in r] for r in self.matrix]))
                inv = [[v * den for v in r] for r in inv]
            else:
                inv = np.linalg.inv(np.array(self.matrix, dtype=float)).tolist()
            off = [-sum(a * b for a, b in zip(r, self.offset)) for r in inv]
            name = f"{self.name}^-1" if self.name else ""
            self._inv = AffineMap(inv, off, name)
            self._inv._inv = self
        return self._inv

    def _inverse_eval(self, p):
        return self.inverse()._eval(p)

    def to_json(self):
        return {"type": "affine",
                "matrix": [[number_json(v) for v in r] for r in self.matrix],
                "offset": [number_json(v) for v in self.offset]}

    def linear_part(self) -> tuple[tuple, ...]:
        return self.matrix


def word_map(images: Sequence[Map], word, dim: int | None = None) -> Map:
    """The composite map of a word: letters act right-to-left."""
    parts = []
    for g, e in word.letters:
        parts.append(images[g].power(e))
    if not parts:
        return Identity(dim if dim is not None else images[0].dim)
    return Compose(*parts) if len(parts) > 1 else parts[0]
