"""Lift assignments for group actions and the deck elements obstructing them.

Given generator lifts, each relator word evaluates to a deck transformation;
the action lifts with these choices exactly when all of them are trivial.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .maps import Compose, Identity, Map, word_map
from .plane import (ActionAssignment, DeckMatch, compare_maps, deck_word, exponent_vectors,
                    match_deck_element)
from .words import AbelianizationResult, GroupPresentation, Word, abelianization, reduce_word

LiftAssignment = ActionAssignment


class TorsionAbelianizationError(ValueError):
    def __init__(self, result: AbelianizationResult):
        self.result = result
        self.coefficients = result.torsion_coefficients
        super().__init__(f"abelianization has torsion {list(self.coefficients)}; "
                         "lifting needs a torsion-free abelianization")


@dataclass(frozen=True)
class Obstruction:
    relator: Word
    deck_word: Word | None
    status: str                      # trivial | nontrivial | not_deck | inconclusive
    match: DeckMatch | None = None

    def to_dict(self, names=None, deck_names=None) -> dict:
        return {"relator": self.relator.to_text(names), "status": self.status,
                "deck_word": None if self.deck_word is None else self.deck_word.to_text(deck_names),
                "exponents": None if self.match is None or self.match.exponents is None
                else list(self.match.exponents),
                "arithmetic_mode": None if self.match is None else self.match.arithmetic_mode}


def relator_obstruction(a: LiftAssignment, r: Word, bound: int = 2, samples: int = 32,
                        tol: float = 1e-9) -> Obstruction:
    """Evaluate the lifted relator and name it as a deck word."""
    m = match_deck_element(a.word_map(r), a.deck, bound, samples, tol)
    if m.status == "deck":
        return Obstruction(r, m.word, "trivial" if not m.word else "nontrivial", m)
    return Obstruction(r, None, m.status, m)


def all_obstructions(a: LiftAssignment, **kw) -> list[Obstruction]:
    return [relator_obstruction(a, r, **kw) for r in a.presentation.relators]


# -- construction from an abelianization basis ------------------------------------

def exponent_word(exponents: Sequence[int]) -> Word:
    """``g_0^e_0 g_1^e_1 ...``."""
    return reduce_word(enumerate(exponents))


@dataclass(frozen=True)
class Decomposition:
    """``word = b_1^m_1 ... b_n^m_n * residual`` with the residual trivial in the abelianization."""
    word: Word
    coordinates: tuple[int, ...]
    basis_words: tuple[Word, ...]
    residual: Word

    def recombined(self) -> Word:
        out = Word()
        for b, m in zip(self.basis_words, self.coordinates):
            out = out * b ** m
        return out * self.residual

    def to_dict(self, names=None) -> dict:
        return {"word": self.word.to_text(names), "coordinates": list(self.coordinates),
                "abelianization_trivial_part": self.residual.to_text(names)}


def decompose(ab: AbelianizationResult, w: Word) -> Decomposition:
    basis_words = tuple(exponent_word(b) for b in ab.basis)
    coords = ab.project(w.exponent_sums(ab.generator_count))
    prefix = Word()
    for b, m in zip(basis_words, coords):
        prefix = prefix * b ** m
    return Decomposition(w, coords, basis_words, prefix.inverse() * w)


@dataclass
class LiftReport:
    abelianization: AbelianizationResult
    decompositions: list[Decomposition] = field(default_factory=list)
    composed_lifts: list[Map] = field(default_factory=list)
    obstructions: list[Obstruction] = field(default_factory=list)
    relator_tau: list[tuple[float, ...]] = field(default_factory=list)
    tau_zero: bool | None = None
    measure_note: str = ""

    @property
    def liftable(self) -> bool:
        return all(o.status == "trivial" for o in self.obstructions)

    def to_dict(self, names=None, deck_names=None) -> dict:
        return {"abelianization": self.abelianization.to_dict(),
                "decompositions": [d.to_dict(names) for d in self.decompositions],
                "obstructions": [o.to_dict(names, deck_names) for o in self.obstructions],
                "liftable": self.liftable,
                "relator_tau": [list(t) for t in self.relator_tau],
                "tau_zero": self.tau_zero, "measure_note": self.measure_note}


def construct_lift_assignment(p: GroupPresentation, raw_lifts: Sequence[Map], deck: Sequence[Map] = (),
                              words: Sequence[Word] = (),
                              tau: Callable[[Map], Sequence[float]] | None = None,
                              tau_tol: float = 1e-6, space: str = "annulus",
                              deck_kind: str = "central", bound: int = 2,
                              samples: int = 32, tol: float = 1e-9) -> tuple[LiftAssignment, LiftReport]:
    """Build the assignment and, for each requested word, its basis decomposition
    and composed lift.

    ``tau`` (optional) computes the mean translation vector of a lift against a
    caller-supplied measure; relator lifts are then checked to have ``tau = 0``.
    The measure's invariance is the caller's responsibility.
    """
    ab = abelianization(p)
    if not ab.torsion_free:
        raise TorsionAbelianizationError(ab)
    a = ActionAssignment(p, tuple(raw_lifts), tuple(deck), space=space, deck_kind=deck_kind)
    report = LiftReport(ab)
    basis_lifts = [a.word_map(exponent_word(b)) for b in ab.basis]
    for w in words:
        d = decompose(ab, w)
        report.decompositions.append(d)
        parts = [basis_lifts[i].power(m) for i, m in enumerate(d.coordinates) if m]
        parts.append(a.word_map(d.residual))
        report.composed_lifts.append(Compose(*parts) if len(parts) > 1 else parts[0])
    report.obstructions = all_obstructions(a, bound=bound, samples=samples, tol=tol)
    if tau is not None:
        report.relator_tau = [tuple(float(v) for v in tau(a.word_map(r))) for r in p.relators]
        report.tau_zero = all(max((abs(v) for v in t), default=0.0) <= tau_tol
                              for t in report.relator_tau)
        report.measure_note = "tau computed against the supplied measure; invariance not checked"
    return a, report


# -- deck corrections -------------------------------------------------------------

@dataclass(frozen=True)
class CorrectionResult:
    status: str                              # corrected | exhausted
    assignment: LiftAssignment | None = None
    exponents: tuple[tuple[int, ...], ...] | None = None
    tried: int = 0

    def to_dict(self) -> dict:
        return {"status": self.status,
                "exponents": None if self.exponents is None else [list(e) for e in self.exponents],
                "tried": self.tried}


def correction_order(gens: int, deck_count: int, bound: int) -> list[tuple[tuple[int, ...], ...]]:
    """Joint exponent vectors in the order of :func:`exponent_vectors`."""
    flat = exponent_vectors(gens * deck_count, bound)
    return [tuple(v[i * deck_count:(i + 1) * deck_count] for i in range(gens)) for v in flat]


def search_deck_corrections(a: LiftAssignment, bound: int = 1, samples: int = 32,
                            tol: float = 1e-9) -> CorrectionResult:
    """Replace each lift ``F_i`` by ``D_i o F_i`` for deck words ``D_i`` until every
    relator evaluates to the identity.
    """
    if not a.deck:
        raise ValueError("no deck generators to correct with")
    tried = 0
    for exps in correction_order(len(a.images), len(a.deck), bound):
        tried += 1
        lifts = []
        for F, e in zip(a.images, exps):
            if any(e):
                D = deck_word(a.deck, e)
                G = Compose(D, F)
                G.name = f"{exponent_word(e).to_text([d.label() for d in a.deck])}{F.label()}"
                lifts.append(G)
            else:
                lifts.append(F)
        cand = ActionAssignment(a.presentation, tuple(lifts), a.deck, a.space, a.deck_kind,
                                name=a.name + "+correction" if a.name else "")
        if all(compare_maps(cand.word_map(r), Identity(a.dim), samples, tol).verdict == "commutes"
               for r in a.presentation.relators):
            return CorrectionResult("corrected", cand, exps, tried)
    return CorrectionResult("exhausted", None, None, tried)


# -- extensions of Z^2 by Z -----------------------------------------------------------

@dataclass(frozen=True)
class ExtensionClass:
    kind: str                 # splits_Z3 | heisenberg_finite_index
    index: int = 0

    def to_dict(self) -> dict:
        return {"kind": self.kind, "index": self.index}

    def __str__(self) -> str:
        return self.kind if self.kind == "splits_Z3" else f"{self.kind}({self.index})"


def classify_extension(k: int) -> ExtensionClass:
    """Extension of ``Z^2`` by ``Z`` whose commutator is the ``k``-th power of the central generator.

    ``k = 0`` gives ``Z^3``; otherwise the group contains the Heisenberg group
    (commutator exponent 1) with index ``|k|``.
    """
    if k == 0:
        return ExtensionClass("splits_Z3", 0)
    return ExtensionClass("heisenberg_finite_index", abs(int(k)))
