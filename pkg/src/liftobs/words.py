"""Free-group words, finite presentations and abelianization."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .intmat import IntMatrix, smith_normal_form

Letter = tuple[int, int]


class PresentationParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class InvalidWordError(ValueError):
    pass


def reduce_word(letters: Iterable[Sequence[int]]) -> "Word":
    """Freely reduce a raw list of ``(generator, exponent)`` pairs."""
    stack: list[list[int]] = []
    for gen, exp in letters:
        gen, exp = int(gen), int(exp)
        if gen < 0:
            raise InvalidWordError(f"negative generator index {gen}")
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return Word(tuple((g, e) for g, e in stack), _checked=True)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self._checked:
            return
        letters = tuple((int(g), int(e)) for g, e in self.letters)
        for i, (g, e) in enumerate(letters):
            if e == 0:
                raise InvalidWordError("zero exponent in word")
            if g < 0:
                raise InvalidWordError(f"negative generator index {g}")
            if i and letters[i - 1][0] == g:
                raise InvalidWordError("word is not freely reduced; use reduce_word")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "Word":
        return reduce_word([(g, e)])

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return reduce_word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return reduce_word(base.letters * abs(k))

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)), _checked=True)

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def exponent_sums(self, n: int) -> list[int]:
        out = [0] * n
        for g, e in self.letters:
            out[g] += e
        return out

    def expand(self) -> list[tuple[int, int]]:
        """One ``(generator, +-1)`` entry per unit of exponent, left to right."""
        out = []
        for g, e in self.letters:
            out.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return out

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            name = names[g] if names else f"g{g}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "".join(parts) if names else "*".join(parts)


def commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: tuple[Word, ...] = ()
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.generator_count < 1:
            raise ValueError("a presentation needs at least one generator")
        object.__setattr__(self, "relators", tuple(self.relators))
        for r in self.relators:
            if r.max_generator() >= self.generator_count:
                raise InvalidWordError(
                    f"relator uses generator {r.max_generator()} but only "
                    f"{self.generator_count} generators exist")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != self.generator_count:
                raise ValueError("generator name count mismatch")
            object.__setattr__(self, "names", names)

    def exponent_matrix(self) -> IntMatrix:
        """Relators x generators matrix of exponent sums."""
        return IntMatrix([r.exponent_sums(self.generator_count) for r in self.relators],
                         cols=self.generator_count)

    def to_text(self) -> str:
        names = self.names or tuple(chr(ord("a") + i) for i in range(self.generator_count))
        rels = "; ".join(r.to_text(names) for r in self.relators)
        return ",".join(names) + ("; " + rels if rels else "")


# -- text syntax ----------------------------------------------------------

_EXP = re.compile(r"\^\s*(\(\s*[+-]?\d+\s*\)|[+-]?\d+)")


class _WordParser:
    """Recursive-descent parser for ``aba^-1b^-3`` / ``[a,b]^2`` syntax."""

    def __init__(self, text: str, names: dict[str, int], offset: int = 0):
        self.text = text
        self.names = names
        self.pos = 0
        self.offset = offset

    def error(self, msg: str) -> PresentationParseError:
        return PresentationParseError(msg, self.text, self.pos + self.offset)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def exponent(self) -> int:
        self.skip()
        m = _EXP.match(self.text, self.pos)
        if not m:
            if self.peek() == "^":
                raise self.error("malformed exponent")
            return 1
        self.pos = m.end()
        return int(m.group(1).strip("() "))

    def word(self, stop: str = "") -> Word:
        out = Word()
        while True:
            ch = self.peek()
            if ch == "" or ch in stop:
                return out
            out = out * self.factor()

    def factor(self) -> Word:
        ch = self.peek()
        if ch == "[":
            self.pos += 1
            u = self.word(",]")
            if self.peek() != ",":
                raise self.error("expected ',' in commutator")
            self.pos += 1
            v = self.word("]")
            if self.peek() != "]":
                raise self.error("expected ']'")
            self.pos += 1
            return commutator(u, v) ** self.exponent()
        if ch == "(":
            self.pos += 1
            u = self.word(")")
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return u ** self.exponent()
        if ch == "1":
            self.pos += 1
            return Word()
        if ch in self.names:
            self.pos += 1
            return Word.gen(self.names[ch], self.exponent())
        raise self.error(f"unexpected character {ch!r}")


def parse_word(text: str, names: Sequence[str]) -> Word:
    index = {n: i for i, n in enumerate(names)}
    p = _WordParser(text, index)
    w = p.word()
    if p.peek():
        raise p.error("trailing input")
    return w


def _split_top_level(text: str, seps: str) -> list[tuple[str, int]]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch in seps and depth == 0:
            parts.append((text[start:i], start))
            start = i + 1
    parts.append((text[start:], start))
    return parts


def parse_presentation(text: str) -> GroupPresentation:
    """Parse ``"a,b; aba^-1b^-3"``.

    Generators are single lowercase letters listed before the first ``;``.
    Relators follow, separated by ``;`` or top-level commas; ``u = v`` is
    read as the relator ``u v^-1``.  Without a ``;`` the generators are the
    letters used, in alphabetical order.
    """
    if ";" in text:
        head, _, tail = text.partition(";")
        tail_offset = len(head) + 1
        gens = []
        for name, off in _split_top_level(head, ","):
            name = name.strip()
            if not re.fullmatch(r"[a-z]", name):
                raise PresentationParseError("generator names must be single lowercase letters",
                                             text, off)
            if name in gens:
                raise PresentationParseError(f"duplicate generator {name!r}", text, off)
            gens.append(name)
    else:
        tail, tail_offset = text, 0
        gens = sorted(set(re.findall(r"[a-z]", text)))
    if not gens:
        raise PresentationParseError("no generators", text, 0)
    index = {n: i for i, n in enumerate(gens)}
    relators = []
    for chunk, off in _split_top_level(tail, ";,"):
        if not chunk.strip():
            continue
        sides = _split_top_level(chunk, "=")
        words = []
        for side, soff in sides:
            p = _WordParser(side, index, offset=tail_offset + off + soff)
            w = p.word()
            if p.peek():
                raise p.error("trailing input")
            words.append(w)
        rel = words[0]
        for w in words[1:]:
            rel = rel * w.inverse()
        if rel:
            relators.append(rel)
    return GroupPresentation(len(gens), tuple(relators), tuple(gens))


def free_abelian_presentation(n: int) -> GroupPresentation:
    names = tuple(chr(ord("a") + i) for i in range(n))
    rels = tuple(commutator(Word.gen(i), Word.gen(j)) for i in range(n) for j in range(i + 1, n))
    return GroupPresentation(n, rels, names)


def baumslag_solitar(m: int, n: int) -> GroupPresentation:
    """``<a, b | a b^m a^-1 = b^n>``."""
    a, b = Word.gen(0), Word.gen(1)
    return GroupPresentation(2, (a * b ** m * a.inverse() * b ** (-n),), ("a", "b"))


def surface_group(genus: int) -> GroupPresentation:
    """Closed orientable surface group: product of ``[a_i, b_i]`` is trivial."""
    rel = Word()
    for i in range(genus):
        rel = rel * commutator(Word.gen(2 * i), Word.gen(2 * i + 1))
    return GroupPresentation(2 * genus, (rel,), None)


# -- abelianization ---------------------------------------------------------

@dataclass(frozen=True)
class AbelianizationResult:
    free_rank: int
    torsion_coefficients: tuple[int, ...]
    generator_count: int
    # rows of v^-1 beyond the relation rank: exponent vectors of basis elements
    basis: tuple[tuple[int, ...], ...] = field(default=(), repr=False)
    # columns of v beyond the relation rank: coordinate functionals
    coordinates: IntMatrix | None = field(default=None, repr=False)

    @property
    def torsion_free(self) -> bool:
        return not self.torsion_coefficients

    def project(self, exponents: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of an exponent vector in the free part."""
        if self.coordinates is None:
            return ()
        return tuple(sum(e * c for e, c in zip(exponents, col))
                     for col in (self.coordinates.column(j) for j in range(self.coordinates.cols)))

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank,
                "torsion": list(self.torsion_coefficients),
                "basis": [list(b) for b in self.basis]}


def abelianization(p: GroupPresentation) -> AbelianizationResult:
    n = p.generator_count
    if not p.relators:
        eye = IntMatrix.identity(n)
        return AbelianizationResult(n, (), n, tuple(eye.row(i) for i in range(n)), eye)
    d, _, v = smith_normal_form(p.exponent_matrix())
    diag = d.diagonal()
    rank = sum(1 for x in diag if x)
    torsion = tuple(x for x in diag if x > 1)
    vinv = v.inverse()
    basis = tuple(vinv.row(i) for i in range(rank, n))
    coords = IntMatrix(([v[i, j] for j in range(rank, n)] for i in range(n)), cols=n - rank)
    return AbelianizationResult(n - rank, torsion, n, basis, coords)
