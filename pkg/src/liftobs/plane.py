"""Homeomorphisms of the plane and of R^3, group actions by them, and
checks against deck transformations.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .intmat import IntMatrix
from .maps import (AffineMap, Compose, Identity, InversionError, Map, as_number,
                   bisect_increasing, coeff, is_array, number_json, word_map)
from .sampling import fundamental_domain_samples
from .words import GroupPresentation, Word, reduce_word

TWO_PI = 2 * math.pi


class CertificateError(ValueError):
    """A perturbation is too steep to be invertible by the monotone solve."""


# -- affine primitives ----------------------------------------------------------

def affine_shear() -> AffineMap:
    """``(x, y) -> (x + y, y)``."""
    return AffineMap([[1, 1], [0, 1]], [0, 0], name="f0")


def translate(dx, dy, name: str = "") -> AffineMap:
    return AffineMap([[1, 0], [0, 1]], [dx, dy], name=name or f"t({number_json(as_number(dx))},{number_json(as_number(dy))})")


def vertical_translation() -> AffineMap:
    return translate(0, 1, name="g0")


def horizontal_translation() -> AffineMap:
    return translate(1, 0, name="h0")


def reflection_x() -> AffineMap:
    """``(x, y) -> (-x, y)``."""
    return AffineMap([[-1, 0], [0, 1]], [0, 0], name="refl")


# maps of R^3 covering the Heisenberg nilmanifold
def nil_S() -> AffineMap:
    return AffineMap([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 0, 0], name="S")


def nil_T() -> AffineMap:
    return AffineMap([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 1, 0], name="T")


def nil_U() -> AffineMap:
    return AffineMap([[1, 1, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 1], name="U")


def nil_j(t=1) -> AffineMap:
    """``(x, y, z) -> (x + t z, y + t, z)``."""
    t = as_number(t)
    return AffineMap([[1, 0, t], [0, 1, 0], [0, 0, 1]], [0, t, 0],
                     name="j" if t == 1 else f"j({number_json(t)})")


def nil_k(t=1) -> AffineMap:
    """``(x, y, z) -> (x, y, z + t)``."""
    t = as_number(t)
    return AffineMap([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0, t],
                     name="k" if t == 1 else f"k({number_json(t)})")


RP3_A = IntMatrix([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
RP3_B = IntMatrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
RP3_C = IntMatrix([[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])


def linear_map(m: IntMatrix, name: str = "") -> AffineMap:
    return AffineMap(m.tolist(), None, name=name)


# -- periodic perturbations ---------------------------------------------------------

class SkewPerturbed(Map):
    """``(x, y) -> (x + y, y + k(x + y) + l(y))`` with

    ``k(u) = k_amp * (sin(2 pi k_freq u) + 1)`` and
    ``l(y) = l_amp * (sin(2 pi (l_freq y + l_phase)) + 1)``.

    With ``k_amp = 0`` this is the vertical-profile map ``(x + y, y + l(y))``.
    Invertibility needs ``y -> y + l(y)`` increasing, certified by
    ``2 pi |l_amp| l_freq < 1``.
    """

    dim = 2

    def __init__(self, k_amp=0, k_freq=1, l_amp=0, l_freq=1, l_phase=0, name: str = ""):
        self.k_amp, self.k_freq = as_number(k_amp), as_number(k_freq)
        self.l_amp, self.l_freq, self.l_phase = as_number(l_amp), as_number(l_freq), as_number(l_phase)
        self.lipschitz_bound = TWO_PI * abs(float(self.l_amp)) * abs(float(self.l_freq))
        if not self.lipschitz_bound < 1:
            raise CertificateError(
                f"sup|l'| = 2*pi*|l_amp|*l_freq = {self.lipschitz_bound:.6g} is not below 1")
        self.exact = False
        self.name = name or ("skew" if self.k_amp else "profile")
        self._k = (float(self.k_amp), float(self.k_freq))
        self._l = (float(self.l_amp), float(self.l_freq), float(self.l_phase))

    def k(self, u):
        a, w = self._k
        s = np.sin if is_array(u) else math.sin
        return a * (s(TWO_PI * w * u) + 1)

    def l(self, y):
        a, w, ph = self._l
        s = np.sin if is_array(y) else math.sin
        return a * (s(TWO_PI * (w * y + ph)) + 1)

    @staticmethod
    def _floats(p):
        return tuple(v if is_array(v) else float(v) for v in p)

    def _eval(self, p):
        x, y = self._floats(p)
        u = x + y
        return u, y + self.k(u) + self.l(y)

    def _inverse_eval(self, p):
        u, v = self._floats(p)
        target = v - self.k(u)
        # l takes values in [0, 2 l_amp] (or [2 l_amp, 0]), which brackets y
        spread = 2 * self._l[0]
        lo, hi = target - max(spread, 0.0), target - min(spread, 0.0)
        try:
            y = bisect_increasing(lambda s: s + self.l(s), target, lo, hi)
        except InversionError as exc:
            raise CertificateError(str(exc)) from exc
        return u - y, y

    def to_json(self):
        if not self.k_amp:
            return {"type": "vertical_profile", "l_amplitude": number_json(self.l_amp),
                    "l_frequency": number_json(self.l_freq), "l_phase": number_json(self.l_phase)}
        return {"type": "skew_perturbed",
                "k_amplitude": number_json(self.k_amp), "k_frequency": number_json(self.k_freq),
                "l_amplitude": number_json(self.l_amp), "l_frequency": number_json(self.l_freq),
                "l_phase": number_json(self.l_phase)}


def vertical_profile(l_amp=Fraction(1, 8), l_freq=1, l_phase=Fraction(1, 4), name: str = "") -> SkewPerturbed:
    return SkewPerturbed(0, 1, l_amp, l_freq, l_phase, name=name or "profile")


class SineShear(Map):
    """Area-preserving shear along one axis.

    ``axis="y"``: ``(x, y) -> (x + dx, y + dy + amp * sin(2 pi (freq x + phase)))``;
    ``axis="x"``: ``(x, y) -> (x + dx + amp * sin(2 pi (freq y + phase)), y + dy)``.
    Commutes with integer translations along the other axis when ``freq`` is an integer.
    """

    dim = 2

    def __init__(self, amplitude, frequency=1, phase=0, offset=(0, 0), axis: str = "y",
                 name: str = ""):
        if axis not in ("x", "y"):
            raise ValueError("axis must be 'x' or 'y'")
        self.amplitude, self.frequency = as_number(amplitude), as_number(frequency)
        self.phase = as_number(phase)
        self.offset = tuple(as_number(v) for v in offset)
        self.axis = axis
        self.exact = self.amplitude == 0 and all(isinstance(v, Fraction) for v in self.offset)
        self.name = name or f"shear_{axis}"

    def bump(self, t):
        s = np.sin if is_array(t) else math.sin
        return float(self.amplitude) * s(TWO_PI * (float(self.frequency) * t + float(self.phase)))

    def _shift(self, p, sign):
        x, y = p
        if self.exact:
            return x + sign * coeff(self.offset[0], x), y + sign * coeff(self.offset[1], y)
        x, y = (v if is_array(v) else float(v) for v in p)
        dx, dy = (float(v) for v in self.offset)
        return x + sign * dx, y + sign * dy

    def _eval(self, p):
        x, y = self._shift(p, 1)
        if self.exact:
            return x, y
        # the bump is a function of the coordinate before the shift
        if self.axis == "y":
            return x, y + self.bump(x - float(self.offset[0]))
        return x + self.bump(y - float(self.offset[1])), y

    def _inverse_eval(self, p):
        x, y = (v if is_array(v) or self.exact else float(v) for v in p)
        if not self.exact:
            if self.axis == "y":
                y = y - self.bump(x - float(self.offset[0]))
            else:
                x = x - self.bump(y - float(self.offset[1]))
        return self._shift((x, y), -1)

    def to_json(self):
        return {"type": "sine_shear", "axis": self.axis,
                "amplitude": number_json(self.amplitude),
                "frequency": number_json(self.frequency), "phase": number_json(self.phase),
                "offset": [number_json(v) for v in self.offset]}


def vertical_sine(amplitude, frequency=1, phase=0, offset=0, name: str = "") -> SineShear:
    """``(x, y) -> (x, y + offset + amp * sin(2 pi (freq x + phase)))``."""
    return SineShear(amplitude, frequency, phase, (0, offset), "y", name or "vsine")


# -- actions ---------------------------------------------------------------------

@dataclass
class ActionAssignment:
    """Generator images of a finitely presented group, plus its deck data."""
    presentation: GroupPresentation
    images: tuple[Map, ...]
    deck: tuple[Map, ...] = ()
    space: str = "annulus"
    deck_kind: str = "central"
    name: str = ""
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        self.images = tuple(self.images)
        self.deck = tuple(self.deck)
        if len(self.images) != self.presentation.generator_count:
            raise ValueError(f"{len(self.images)} maps for "
                             f"{self.presentation.generator_count} generators")
        dims = {m.dim for m in self.images + self.deck}
        if len(dims) > 1:
            raise ValueError(f"maps act on spaces of different dimension: {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.images[0].dim

    @property
    def exact(self) -> bool:
        return all(m.exact for m in self.images + self.deck)

    def word_map(self, w: Word) -> Map:
        return word_map(self.images, w, self.dim)


def evaluate_map(F: Map, p):
    return F(p)


def evaluate_word_action(a: ActionAssignment, w: Word, p):
    if w.max_generator() >= a.presentation.generator_count:
        raise ValueError("word uses a generator outside the presentation")
    return a.word_map(w)(p)


# -- deck checks -----------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    verdict: str                 # commutes | violates | inconclusive
    max_deviation: float
    witness: tuple | None
    arithmetic_mode: str
    samples: int
    tol: float

    @property
    def ok(self) -> bool:
        return self.verdict == "commutes"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "max_deviation": self.max_deviation,
                "witness": None if self.witness is None else [number_json(v) for v in self.witness],
                "arithmetic_mode": self.arithmetic_mode, "samples": self.samples, "tol": self.tol}


def sample_points(dim: int, count: int, radius: int = 3, exact: bool = True) -> list[tuple]:
    if dim == 1:
        pts = [(p[0],) for p in fundamental_domain_samples(count, 1)]
    else:
        pts = fundamental_domain_samples(count, dim, radius)
    return pts if exact else [tuple(float(v) for v in p) for p in pts]


def _deviation(p, q) -> float:
    return max(abs(float(a - b)) for a, b in zip(p, q))


def band_verdict(dev: float, tol: float) -> str:
    if dev <= tol / 10:
        return "commutes"
    if dev < tol:
        return "inconclusive"
    return "violates"


def compare_maps(F: Map, G: Map, samples: int = 64, tol: float = 1e-9,
                 radius: int = 3) -> CheckResult:
    """Do ``F`` and ``G`` agree on the deterministic sample?"""
    exact = F.exact and G.exact
    worst, witness = 0.0, None
    for p in sample_points(F.dim, samples, radius, exact):
        a, b = F(p), G(p)
        if exact:
            dev = 0.0 if a == b else _deviation(a, b)
            if a != b and witness is None:
                witness = p
        else:
            dev = _deviation(a, b)
        if dev > worst:
            worst, witness = dev, p
    if exact:
        verdict = "commutes" if witness is None else "violates"
    else:
        verdict = band_verdict(worst, tol)
        if verdict == "commutes":
            witness = None
    return CheckResult(verdict, worst, witness, "exact" if exact else "float", samples, tol)


def deck_commutation_check(F: Map, deck: Map, samples: int = 64, tol: float = 1e-9,
                           radius: int = 3) -> CheckResult:
    """Compare ``F o deck`` with ``deck o F``."""
    return compare_maps(Compose(F, deck), Compose(deck, F), samples, tol, radius)


def map_commutator(f: Map, g: Map) -> Map:
    """``f g f^-1 g^-1``."""
    return Compose(f, g, f.inverse(), g.inverse())


def deck_word(deck: Sequence[Map], exponents: Sequence[int]) -> Map:
    """``d_0^e_0 d_1^e_1 ...`` as a map."""
    return word_map(deck, reduce_word(enumerate(exponents)), deck[0].dim)


@dataclass(frozen=True)
class DeckMatch:
    status: str                      # deck | not_deck | inconclusive
    word: Word | None = None
    exponents: tuple[int, ...] | None = None
    max_deviation: float | None = None
    candidates: tuple[tuple[int, ...], ...] = ()
    arithmetic_mode: str = "exact"
    reason: str = ""

    def to_dict(self, names: Sequence[str] | None = None) -> dict:
        return {"status": self.status,
                "deck_word": None if self.word is None else self.word.to_text(names),
                "exponents": None if self.exponents is None else list(self.exponents),
                "max_deviation": self.max_deviation,
                "arithmetic_mode": self.arithmetic_mode, "reason": self.reason}


def exponent_vectors(count: int, bound: int) -> list[tuple[int, ...]]:
    """All vectors in ``[-bound, bound]^count``: by L1 norm, then in descending
    lexicographic order, so positive powers of earlier generators come first.
    """
    vecs = itertools.product(range(bound, -bound - 1, -1), repeat=count)
    return sorted(vecs, key=lambda v: sum(map(abs, v)))


def match_deck_element(target: Map, deck: Sequence[Map], bound: int = 2, samples: int = 32,
                       tol: float = 1e-9, radius: int = 3) -> DeckMatch:
    """Find the unique deck word (exponents within ``bound``) equal to ``target``."""
    exact = target.exact and all(d.exact for d in deck)
    mode = "exact" if exact else "float"
    if not deck:
        res = compare_maps(target, Identity(target.dim), samples, tol, radius)
        if res.verdict == "commutes":
            return DeckMatch("deck", Word(), (), res.max_deviation, ((),), mode)
        return DeckMatch(res.verdict == "violates" and "not_deck" or "inconclusive",
                         max_deviation=res.max_deviation, arithmetic_mode=mode)
    pts = sample_points(target.dim, samples, radius, exact)
    values = [target(p) for p in pts]
    matches, near = [], []
    best = math.inf
    for exps in exponent_vectors(len(deck), bound):
        D = deck_word(deck, exps)
        if exact:
            dev = 0.0 if all(D(p) == v for p, v in zip(pts, values)) else math.inf
        else:
            dev = max(_deviation(D(p), v) for p, v in zip(pts, values))
        best = min(best, dev)
        verdict = band_verdict(dev, tol) if not exact else ("commutes" if dev == 0 else "violates")
        if verdict == "commutes":
            matches.append((exps, dev))
        elif verdict == "inconclusive":
            near.append(exps)
    if matches and not near and (len(matches) == 1 or _same_deck_element(deck, matches, pts)):
        # several words may name one element when the deck group has relations
        exps, dev = matches[0]
        return DeckMatch("deck", reduce_word(enumerate(exps)), exps, dev,
                         tuple(e for e, _ in matches), mode)
    if not matches and not near:
        return DeckMatch("not_deck", max_deviation=None if best == math.inf else best,
                         arithmetic_mode=mode, reason=f"no deck word with exponents within {bound}")
    cands = tuple(e for e, _ in matches) + tuple(near)
    return DeckMatch("inconclusive", candidates=cands, arithmetic_mode=mode,
                     reason="several deck words match within tolerance")


def _same_deck_element(deck: Sequence[Map], matches, pts) -> bool:
    if not all(d.exact for d in deck):
        return False
    pts = [tuple(Fraction(v) for v in p) for p in pts]
    first = deck_word(deck, matches[0][0])
    ref = [first(p) for p in pts]
    return all([deck_word(deck, e)(p) for p in pts] == ref for e, _ in matches[1:])


def deck_normalization_check(F: Map, deck: Sequence[Map], bound: int = 2, samples: int = 32,
                             tol: float = 1e-9, radius: int = 3) -> list[DeckMatch]:
    """For each deck generator ``d``, identify ``F d F^-1`` as a deck word.

    Every lift of a map downstairs passes this; homotopy lifts moreover commute.
    """
    return [match_deck_element(Compose(F, d, F.inverse()), deck, bound, samples, tol, radius)
            for d in deck]


def commutator_deck_element(f: Map, g: Map, deck: Sequence[Map], bound: int = 2,
                            samples: int = 32, tol: float = 1e-9, radius: int = 3,
                            require_commuting: bool = True) -> DeckMatch:
    """Identify ``[f, g]`` as a deck word.

    First checks that ``f`` and ``g`` commute with every deck generator
    (homotopy lifts), or with ``require_commuting=False`` only that they
    conjugate deck generators to deck words (arbitrary lifts).
    """
    for m in (f, g):
        if require_commuting:
            for d in deck:
                chk = deck_commutation_check(m, d, samples, tol, radius)
                if chk.verdict != "commutes":
                    return DeckMatch("not_deck" if chk.verdict == "violates" else "inconclusive",
                                     arithmetic_mode=chk.arithmetic_mode,
                                     reason=f"{m.label()} does not commute with deck map {d.label()}")
        else:
            for d, res in zip(deck, deck_normalization_check(m, deck, bound, samples, tol, radius)):
                if res.status != "deck":
                    return DeckMatch("not_deck" if res.status == "not_deck" else "inconclusive",
                                     arithmetic_mode=res.arithmetic_mode,
                                     reason=f"{m.label()} does not normalize deck map {d.label()}")
    return match_deck_element(map_commutator(f, g), deck, bound, samples, tol, radius)
