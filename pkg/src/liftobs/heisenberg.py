"""The discrete Heisenberg group in the normal form ``X^a Y^b Z^c``.

With ``Z = [X, Y]`` central, ``X^a Y^b Z^c`` corresponds to the matrix
``[[1, a, ab + c], [0, 1, b], [0, 0, 1]]`` and the product law is
``(a, b, c)(a', b', c') = (a + a', b + b', c + c' - a'b)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .intmat import IntMatrix
from .words import InvalidWordError, Word

X_MATRIX = IntMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
Y_MATRIX = IntMatrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
Z_MATRIX = IntMatrix([[1, 0, 1], [0, 1, 0], [0, 0, 1]])


@dataclass(frozen=True)
class HeisenbergElement:
    a: int = 0
    b: int = 0
    c: int = 0

    def __mul__(self, other: "HeisenbergElement") -> "HeisenbergElement":
        return heisenberg_multiply(self, other)

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement(-self.a, -self.b, -self.c - self.a * self.b)

    def __pow__(self, k: int) -> "HeisenbergElement":
        out, base = HeisenbergElement(), (self if k >= 0 else self.inverse())
        for _ in range(abs(k)):
            out = out * base
        return out

    def to_matrix(self) -> IntMatrix:
        a, b, c = self.a, self.b, self.c
        return IntMatrix([[1, a, a * b + c], [0, 1, b], [0, 0, 1]])

    @classmethod
    def from_matrix(cls, m: IntMatrix) -> "HeisenbergElement":
        if m.shape != (3, 3) or m[1, 0] or m[2, 0] or m[2, 1] \
                or m[0, 0] != 1 or m[1, 1] != 1 or m[2, 2] != 1:
            raise ValueError("not an upper unitriangular 3x3 integer matrix")
        a, b = m[0, 1], m[1, 2]
        return cls(a, b, m[0, 2] - a * b)

    def as_tuple(self) -> tuple[int, int, int]:
        return self.a, self.b, self.c


X = HeisenbergElement(1, 0, 0)
Y = HeisenbergElement(0, 1, 0)
Z = HeisenbergElement(0, 0, 1)
_GENERATORS = (X, Y, Z)


def heisenberg_multiply(p: HeisenbergElement, q: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(p.a + q.a, p.b + q.b, p.c + q.c - q.a * p.b)


def heisenberg_normal_form(w: Word) -> HeisenbergElement:
    """Normal form of a word over ``{0: X, 1: Y, 2: Z}``."""
    out = HeisenbergElement()
    for g, e in w.letters:
        if g > 2:
            raise InvalidWordError(f"generator index {g} is not one of X, Y, Z")
        # powers of a single generator are already in normal form
        out = out * HeisenbergElement(*(e if i == g else 0 for i in range(3)))
    return out


def word_matrix(w: Word) -> IntMatrix:
    """Matrix product of the letter matrices; the oracle for the normal form."""
    mats = (X_MATRIX, Y_MATRIX, Z_MATRIX)
    out = IntMatrix.identity(3)
    for g, e in w.letters:
        if g > 2:
            raise InvalidWordError(f"generator index {g} is not one of X, Y, Z")
        step = mats[g] if e > 0 else mats[g].inverse()
        for _ in range(abs(e)):
            out = out @ step
    return out
