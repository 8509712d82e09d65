"""Exact integer matrices, Smith normal form and a few SL(2, Z) helpers.

Entries are plain Python ints, so everything is arbitrary precision.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class SingularMatrixError(ValueError):
    pass


class NotCoprimeError(ValueError):
    def __init__(self, m: int, n: int):
        self.gcd = gcd(m, n)
        super().__init__(f"({m}, {n}) are not coprime: gcd = {self.gcd}")


class IntMatrix:
    """Immutable dense integer matrix."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(int(v) for v in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(([0] * cols for _ in range(rows)), cols=cols)

    @classmethod
    def diag(cls, entries: Sequence[int], rows: int | None = None,
             cols: int | None = None) -> "IntMatrix":
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        return cls(([entries[i] if i == j and i < len(entries) else 0
                     for j in range(cols)] for i in range(rows)), cols=cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._data[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self._data), cols=self.rows) if self.rows else IntMatrix.zeros(self.cols, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(([-v for v in r] for r in self._data), cols=self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ot = list(zip(*other._data)) if other.rows else [()] * other.cols
        return IntMatrix(([sum(a * b for a, b in zip(r, c)) for c in ot]
                          for r in self._data), cols=other.cols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self._data)

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def inverse(self) -> "IntMatrix":
        """Exact inverse; requires the inverse to be integral."""
        inv = rational_inverse(self)
        if any(v.denominator != 1 for r in inv for v in r):
            raise SingularMatrixError("matrix inverse is not integral (not unimodular)")
        return IntMatrix(([int(v) for v in r] for r in inv), cols=self.cols)

    def is_diagonal(self) -> bool:
        return all(v == 0 for i, r in enumerate(self._data)
                   for j, v in enumerate(r) if i != j)

    def diagonal(self) -> list[int]:
        return [self._data[i][i] for i in range(min(self.rows, self.cols))]


def rational_inverse(m: IntMatrix) -> list[list[Fraction]]:
    if m.rows != m.cols:
        raise SingularMatrixError("non-square matrix has no inverse")
    n = m.rows
    a = [[Fraction(v) for v in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(m.tolist())]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [v / piv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vc for vi, vc in zip(a[i], a[c])]
    return [r[n:] for r in a]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(d, u, v)`` with ``u @ m @ v == d``.

    ``u`` and ``v`` are unimodular and ``d`` is diagonal with non-negative
    entries forming a divisibility chain.  Pivots are chosen by minimal
    absolute value to keep intermediate entries small.
    """
    rows, cols = m.shape
    a = m.tolist()
    u = IntMatrix.identity(rows).tolist()
    v = IntMatrix.identity(cols).tolist()

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in v:
                r[i], r[j] = r[j], r[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                # a remainder smaller than the pivot survived; re-pivot on it
                cands = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
                _, i, j = min(cands)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return IntMatrix(a, cols=cols), IntMatrix(u, cols=rows), IntMatrix(v, cols=cols)


def matrix_rank(m: IntMatrix) -> int:
    d, _, _ = smith_normal_form(m)
    return sum(1 for x in d.diagonal() if x)


def extended_gcd(m: int, n: int) -> tuple[int, int, int]:
    """Return ``(g, a, b)`` with ``a*m + b*n == g == gcd(m, n)``."""
    old_r, r = m, n
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def bezout_pair(m: int, n: int) -> tuple[int, int]:
    """Coefficients ``(a, b)`` with ``a*m + b*n == 1``.

    Normalised so that ``a`` is the least non-negative solution when
    ``n != 0``; for ``n == 0`` we take ``b = 0``.
    """
    g, a, b = extended_gcd(m, n)
    if g != 1:
        raise NotCoprimeError(m, n)
    if n == 0:
        return m, 0          # m = +-1
    a %= abs(n)
    b = (1 - a * m) // n
    return a, b


def generator_change_matrix(m: int, n: int) -> IntMatrix:
    """The SL(2, Z) matrix ``[[m, n], [-b, a]]`` where ``a*m + b*n == 1``."""
    a, b = bezout_pair(m, n)
    return IntMatrix([[m, n], [-b, a]])


def matrix_commutator(p: IntMatrix, q: IntMatrix) -> IntMatrix:
    """Exact ``p q p^-1 q^-1`` for square matrices with integral inverses."""
    if p.shape != q.shape or p.rows != p.cols:
        raise ValueError("commutator needs square matrices of equal size")
    return p @ q @ p.inverse() @ q.inverse()
