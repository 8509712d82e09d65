"""Lift assignments, relator obstructions, deck corrections and extension classes."""
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from liftobs import catalog
from liftobs.homology import HomotopyTrackedMap, lebesgue_measure, tau_measure, torus_grid
from liftobs.lifts import (TorsionAbelianizationError, classify_extension, construct_lift_assignment,
                           decompose, relator_obstruction, search_deck_corrections)
from liftobs.maps import Compose, Identity
from liftobs.plane import (ActionAssignment, SineShear, compare_maps, deck_normalization_check,
                           horizontal_translation, translate)
from liftobs.words import (Word, abelianization, baumslag_solitar, free_abelian_presentation,
                           parse_presentation, reduce_word)

Z2 = free_abelian_presentation(2)
AB = Z2.relators[0]


def test_commuting_translations_have_trivial_obstruction():
    a = catalog.torus_translations()
    ob = relator_obstruction(a, AB)
    assert ob.status == "trivial" and ob.deck_word == Word()


def test_annulus_obstruction():
    ob = relator_obstruction(catalog.annulus_basic(), AB)
    assert ob.status == "nontrivial" and ob.match.exponents == (1,)
    assert ob.match.arithmetic_mode == "exact"


def test_nilmanifold_obstruction():
    ob = relator_obstruction(catalog.nilmanifold(), AB, bound=1)
    assert ob.status == "nontrivial" and ob.match.exponents == (1, 0, 0)


def test_identity_words_give_identity_lift():
    a = catalog.torus_translations()
    rng = random.Random(6)
    words = []
    for _ in range(10):
        w = reduce_word((rng.randint(0, 1), rng.choice([-2, -1, 1, 2])) for _ in range(6))
        # append the abelian inverse so the word is trivial in Z^2
        s = w.exponent_sums(2)
        words.append(w * reduce_word([(0, -s[0]), (1, -s[1])]))
    _, report = construct_lift_assignment(Z2, a.images, a.deck, words=words, space="torus")
    for lift in report.composed_lifts:
        assert compare_maps(lift, Identity(2), samples=100).verdict == "commutes"


def test_torsion_refusal():
    f, g = catalog.bs13().images
    with pytest.raises(TorsionAbelianizationError) as err:
        construct_lift_assignment(baumslag_solitar(1, 3), (f, g), catalog.bs13().deck, space="circle")
    assert err.value.coefficients == (2,)


def test_annulus_assignment_is_not_liftable():
    a = catalog.annulus_basic()
    _, report = construct_lift_assignment(Z2, a.images, a.deck, words=[AB])
    assert not report.liftable
    assert report.obstructions[0].match.exponents == (1,)
    assert report.decompositions[0].coordinates == (0, 0)


def test_nilmanifold_correction():
    res = search_deck_corrections(catalog.nilmanifold(), bound=1)
    assert res.status == "corrected"
    assert res.exponents == ((0, 1, 0), (0, 0, 1))
    tj, uk = res.assignment.images
    rng = random.Random(3)
    for _ in range(100):
        p = tuple(Fraction(rng.randint(-500, 500), 113) for _ in range(3))
        assert tj(uk(p)) == uk(tj(p))


def test_corrected_pair_normalizes_deck_group_and_has_trivial_obstruction():
    a = search_deck_corrections(catalog.nilmanifold(), bound=1).assignment
    for F in a.images:
        assert all(m.status == "deck" for m in deck_normalization_check(F, a.deck, bound=1, samples=100))
    assert relator_obstruction(a, AB, bound=1, samples=100).status == "trivial"


def test_central_deck_group_cannot_correct():
    res = search_deck_corrections(catalog.annulus_basic(), bound=3)
    assert res.status == "exhausted" and res.tried == 7 ** 2


def test_commuting_lifts_need_no_correction():
    res = search_deck_corrections(catalog.torus_translations(), bound=1)
    assert res.status == "corrected" and res.exponents == ((0, 0), (0, 0)) and res.tried == 1


@pytest.mark.parametrize("k,text", [(0, "splits_Z3"), (1, "heisenberg_finite_index(1)"),
                                    (2, "heisenberg_finite_index(2)"), (-3, "heisenberg_finite_index(3)")])
def test_classify_extension(k, text):
    assert str(classify_extension(k)) == text


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_central_obstruction_is_well_defined(i, j):
    a = catalog.annulus_basic()
    h = horizontal_translation()
    f, g = a.images
    moved = ActionAssignment(Z2, (Compose(h.power(i), f), Compose(h.power(j), g)), a.deck)
    assert relator_obstruction(moved, AB).match.exponents == (1,)


words = st.lists(st.tuples(st.integers(0, 2), st.integers(-2, 2).filter(bool)), max_size=10)


@given(words)
def test_decomposition_recovers_exponents(raw):
    p = parse_presentation("a,b,c; [a,b], [b,c]")
    ab = abelianization(p)
    w = reduce_word(raw)
    d = decompose(ab, w)
    assert d.recombined().exponent_sums(3) == w.exponent_sums(3)
    assert all(v == 0 for v in ab.project(d.residual.exponent_sums(3)))


def test_tau_additivity_along_words():
    torus = torus_grid(6)
    mu = lebesgue_measure(60)
    F = SineShear(0.2, 1, 0.3, (0.21, 0), "x")
    G = SineShear(0.1, 2, 0.0, (-0.34, 0), "x")
    tau = {m: np.array(tau_measure(HomotopyTrackedMap(m, torus), mu).value) for m in (F, G)}
    a = ActionAssignment(Z2, (F, G), (translate(1, 0), translate(0, 1)), space="torus")
    rng = random.Random(17)
    for _ in range(10):
        w = reduce_word((rng.randint(0, 1), rng.choice([-1, 1])) for _ in range(rng.randint(1, 8)))
        total = tau_measure(HomotopyTrackedMap(a.word_map(w), torus), mu).value
        expected = sum(e * tau[(F, G)[g]] for g, e in w.letters)
        assert np.allclose(total, expected, atol=len(w) * 1e-6)


def test_relator_tau_is_zero_for_commuting_fixture():
    torus = torus_grid(6)
    mu = lebesgue_measure(40)
    a = catalog.torus_translations()
    _, report = construct_lift_assignment(
        Z2, a.images, a.deck, space="torus",
        tau=lambda m: tau_measure(HomotopyTrackedMap(m, torus), mu).value)
    assert report.tau_zero
