"""Circle lifts, translation numbers and the BS(1,3) action."""
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liftobs import catalog
from liftobs.circle import (ChartAffine, CircleMeasure, PiecewiseLinear, Rotation, StandardCircleMap,
                            build_bs13_action, conjugate, evaluate_lift, infinity_lifts, tau_integral,
                            translation_number)
from liftobs.maps import Compose


def random_pl(rng: random.Random, k: int = 4) -> PiecewiseLinear:
    xs = sorted(rng.sample(range(1, 60), k - 1))
    ys = sorted(rng.sample(range(1, 60), k - 1))
    return PiecewiseLinear([(0, 0)] + [(Fraction(x, 60), Fraction(y, 60)) for x, y in zip(xs, ys)])


def test_rotation_evaluation():
    r = Rotation(Fraction(1, 3))
    assert evaluate_lift(r, Fraction(0)) == Fraction(1, 3)
    assert evaluate_lift(r, Fraction(5, 3)) == 2
    assert evaluate_lift(Rotation(Fraction(1, 4)).inverse(), Fraction(0)) == Fraction(-1, 4)


def test_rotation_translation_number_is_exact():
    iv = translation_number(Rotation(Fraction(1, 3)), 3)
    assert iv.center == Fraction(1, 3) and iv.contains(Fraction(1, 3))
    assert iv.arithmetic_mode == "exact"


@given(st.integers(1, 12).flatmap(lambda q: st.tuples(st.integers(0, q), st.just(q))), st.integers(1, 50))
def test_rotation_interval_contains_rotation_number(pq, n):
    p, q = pq
    iv = translation_number(Rotation(Fraction(p, q)), n)
    assert iv.center == Fraction(p, q)
    assert iv.lo <= iv.hi and iv.width <= Fraction(2, n)


def test_map_with_fixed_point_has_zero_translation_number():
    F = PiecewiseLinear([(0, 0), (Fraction(1, 2), Fraction(1, 4))])
    for n in (1, 7, 40):
        iv = translation_number(F, n)
        assert iv.center == 0 and iv.contains(0)


def test_bs13_generator_rotation_number():
    f, g = build_bs13_action()
    iv = translation_number(g, 1000)
    assert iv.contains(0.5)
    assert abs(iv.center - 0.5) <= 1 / 1000


def test_bs13_f_fixes_both_lifts_of_infinity():
    f, _ = build_bs13_action()
    for p in infinity_lifts():
        assert f(p) == pytest.approx(p, abs=1e-12)


def test_bs13_relation_holds_on_the_circle():
    # f g f^-1 = g^3 downstairs; the lifts differ by a deck translation
    f, g = build_bs13_action()
    lhs = Compose(f, g, f.inverse())
    rhs = g.power(3)
    for i in range(100):
        x = (i + 0.37) / 100
        d = lhs(x) - rhs(x)
        assert abs(d - round(d)) <= 1e-9


def test_bs13_other_lift_fixes_infinity():
    _, g0 = build_bs13_action(g_shift=0)
    assert translation_number(g0, 1000).contains(0.0)


def test_tau_integral_rotation():
    assert tau_integral(Rotation(0.3), CircleMeasure("lebesgue", 1000)) == pytest.approx(0.3, abs=1e-12)


def test_tau_integral_conjugated_rotation():
    H = PiecewiseLinear([(0, 0), (Fraction(1, 3), Fraction(1, 2)), (Fraction(3, 4), Fraction(2, 3))])
    alpha = math.sqrt(2) - 1
    F = conjugate(H, Rotation(alpha))
    mu = CircleMeasure("pushforward", 20_000, conjugacy=H)
    value = tau_integral(F, mu)
    oracle = translation_number(F, 20_000)
    assert value == pytest.approx(alpha, abs=1e-6)
    assert oracle.contains(value)


def test_tau_integral_discrete_fixed_point():
    F = PiecewiseLinear([(0, 0), (Fraction(1, 2), Fraction(1, 4))])
    mu = CircleMeasure("discrete", points=(Fraction(0),), weights=(Fraction(1),))
    assert tau_integral(F, mu) == 0


def circle_lifts():
    f, g = build_bs13_action()
    rng = random.Random(3)
    return [Rotation(Fraction(2, 7)), Rotation(0.41), f, g, ChartAffine(2, Fraction(1, 3)),
            StandardCircleMap(0.2, 0.9), random_pl(rng), Compose(random_pl(rng), Rotation(Fraction(1, 5)))] + [
        m for a in catalog.build_catalog().values() if a.space == "circle" for m in a.images if not m.reversing]


@pytest.mark.parametrize("F", circle_lifts(), ids=lambda m: m.label())
def test_degree_one_equivariance(F):
    rng = random.Random(11)
    for _ in range(1000):
        if F.exact:
            x = Fraction(rng.randint(-5000, 5000), 997)
            assert F(x + 1) == F(x) + 1
        else:
            x = rng.uniform(-5, 5)
            assert F(x + 1) - F(x) == pytest.approx(1, abs=1e-9)


@pytest.mark.parametrize("F", circle_lifts(), ids=lambda m: m.label())
def test_monotone_on_grid(F):
    xs = [i / 257 for i in range(-257, 258)]
    ys = [float(F(Fraction(i, 257) if F.exact else x)) for i, x in zip(range(-257, 258), xs)]
    assert all(b > a for a, b in zip(ys, ys[1:]))


@pytest.mark.parametrize("alpha", [Fraction(1, 3), Fraction(2, 5), math.sqrt(2) - 1])
def test_conjugacy_invariance(alpha):
    rng = random.Random(5)
    base = translation_number(Rotation(alpha), 50)
    for _ in range(20):
        H = random_pl(rng)
        iv = translation_number(conjugate(H, Rotation(alpha)), 400)
        assert iv.lo <= base.hi and base.lo <= iv.hi


def test_tau_homomorphism_on_conjugated_rotations():
    H = PiecewiseLinear([(0, 0), (Fraction(1, 4), Fraction(1, 2)), (Fraction(1, 2), Fraction(5, 8))])
    mu = CircleMeasure("pushforward", 20_000, conjugacy=H)
    F, G = conjugate(H, Rotation(0.17)), conjugate(H, Rotation(math.sqrt(3) - 1))
    both = tau_integral(Compose(F, G), mu)
    assert abs(both - tau_integral(F, mu) - tau_integral(G, mu)) <= 1e-6


def test_translation_number_is_not_additive():
    # a transverse fixed point survives a small rotation, so tau(R o F) = 0 != eps + tau(F)
    F = PiecewiseLinear([(0, 0), (Fraction(1, 2), Fraction(1, 4))])
    eps = Fraction(1, 100)
    iv = translation_number(Compose(Rotation(eps), F), 1000)
    assert iv.contains(0)
    assert eps > iv.width
    assert translation_number(F, 1000).center == 0


def test_reversing_map_has_no_translation_number():
    with pytest.raises(ValueError):
        translation_number(catalog.circle_z2().images[0], 10)


def test_inverse_round_trip():
    rng = random.Random(2)
    for F in circle_lifts():
        G = F.inverse()
        for _ in range(50):
            x = rng.uniform(-3, 3)
            assert float(G(F(Fraction(x) if F.exact else x))) == pytest.approx(x, abs=1e-9)
