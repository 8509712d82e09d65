"""Periodic curves in the annulus cover, the region swept by the x-axis, crossings
and the translation-like element search."""
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from liftobs import catalog
from liftobs.annulus import (InconclusiveRegionError, IntersectionError, PeriodicCurve,
                             PreconditionError, RefusalError, TaintedCurveError, brute_force_crossing_count,
                             build_U, build_vertical_conjugacy, classify_case, crossings_with_orientation,
                             curves_disjoint, find_translation_like, image_curve, join_graph_curves,
                             non_intersection_report, orientations_alternate, points_above, word_order,
                             x_axis)
from liftobs.geometry import count_proper_crossings, segments_cross_properly, segments_intersect
from liftobs.maps import Compose
from liftobs.plane import (affine_shear, commutator_deck_element, horizontal_translation, translate,
                           vertical_sine, vertical_translation)

f0, g0, h0 = affine_shear(), vertical_translation(), horizontal_translation()
PROFILE = catalog.sin_profile().images[0]
SKEW = catalog.sin_skew().images[0]


@pytest.fixture(scope="module")
def profile_region():
    return build_U(PROFILE, N=100, resolution=256)


def sine_curve(amp, freq=1, phase=0.0, offset=0.0, resolution=256):
    return PeriodicCurve.from_function(lambda x: offset + amp * np.sin(2 * np.pi * (freq * x + phase)), resolution)


# -- curves ------------------------------------------------------------------------------

def test_vertical_translation_of_x_axis():
    c = image_curve(g0, x_axis())
    assert c.exact and all(y == 1 for _, y in c.exact_vertices)


def test_shear_moves_horizontals_along_themselves():
    c = PeriodicCurve.horizontal(Fraction(2, 3), 6)
    img = image_curve(f0, c)
    assert all(y == Fraction(2, 3) for _, y in img.exact_vertices)
    # set-equal: same height everywhere, and the vertices are shifted by 2/3 modulo 1
    xs = sorted((x % 1) for x, _ in img.exact_vertices)
    assert xs == sorted((x + Fraction(2, 3)) % 1 for x, _ in c.exact_vertices)


def test_profile_image_of_x_axis_matches_closed_form():
    img = image_curve(PROFILE, x_axis(64))
    l0 = (math.sin(math.pi / 2) + 1) / 8
    assert np.allclose(img.ys, l0, atol=1e-15)
    assert np.allclose(np.sort(np.mod(img.xs, 1)), np.arange(64) / 64, atol=1e-15)
    assert img.y_range()[1] == pytest.approx(0.25, abs=1e-15)


def test_closure_rule_and_equivariance():
    c = sine_curve(0.3, 2)
    P = c.closed()
    assert np.allclose(P[-1], P[0] + [1, 0])
    for F in (PROFILE, SKEW, vertical_sine(0.2, 1, 0.1)):
        a, b = image_curve(F, c.shifted(3)), image_curve(F, c)
        # both vertex lists are renormalised to start in [0, 1)
        assert np.allclose(a.xs, b.xs, atol=1e-9)
        assert np.allclose(a.ys, b.ys, atol=1e-9)


def test_self_intersecting_image_is_tainted():
    zigzag = PeriodicCurve.from_vertices([(0.0, 0.0), (0.6, 1.0), (0.2, 1.0), (0.8, 0.0)])
    assert zigzag.tainted
    u = build_U(g0, N=2, resolution=16)
    with pytest.raises(TaintedCurveError):
        crossings_with_orientation(zigzag, u)


# -- disjointness ----------------------------------------------------------------------------

def test_parallel_lines_are_disjoint():
    r = curves_disjoint(PeriodicCurve.horizontal(0), PeriodicCurve.horizontal(1))
    assert r.verdict == "disjoint" and r.min_gap == pytest.approx(1) and r.arithmetic_mode == "exact"


def test_sine_meets_the_axis():
    assert curves_disjoint(x_axis(), sine_curve(1)).verdict == "intersecting"


def test_axis_and_its_profile_image():
    r = curves_disjoint(x_axis(256), image_curve(PROFILE, x_axis(256)))
    assert r.verdict == "disjoint" and r.min_gap == pytest.approx(0.25, abs=1e-12)


def test_non_intersection_reports():
    assert non_intersection_report(g0, [x_axis()]).status == "non_intersection_certified"
    rep = non_intersection_report(h0, [PeriodicCurve.horizontal(y) for y in (0, Fraction(1, 2), 3)])
    assert rep.status == "all_intersecting_evidence_only"
    for F in (PROFILE, Compose(PROFILE, PROFILE)):
        assert non_intersection_report(F, [x_axis(128)]).certified


def test_non_graph_curves():
    # the shear tilts a steep sine into a curve that folds back over x
    c = image_curve(f0, sine_curve(0.3, 1, resolution=400))
    assert not c.is_graph() and c.is_simple()
    assert curves_disjoint(c, PeriodicCurve.horizontal(1.0)).verdict == "disjoint"
    assert curves_disjoint(c, PeriodicCurve.horizontal(1.0)).min_gap == pytest.approx(0.7, abs=1e-3)
    assert curves_disjoint(c, x_axis()).verdict == "intersecting"


def test_exact_and_float_routes_agree():
    pts = [(Fraction(0), Fraction(0)), (Fraction(1, 3), Fraction(1, 2)), (Fraction(2, 3), Fraction(-1, 4))]
    a = PeriodicCurve.from_vertices(pts)
    for dy in (Fraction(3, 4), Fraction(1, 2), Fraction(1, 5)):
        b = PeriodicCurve.from_vertices([(x, y + dy) for x, y in pts])
        exact = curves_disjoint(a, b)
        fl = curves_disjoint(PeriodicCurve.from_arrays(a.xs, a.ys), PeriodicCurve.from_arrays(b.xs, b.ys))
        assert exact.arithmetic_mode == "exact" and fl.arithmetic_mode == "float"
        assert exact.verdict == fl.verdict


curve_params = st.tuples(st.floats(0, 0.4), st.integers(1, 3), st.floats(0, 1), st.floats(-1.5, 1.5))


@given(curve_params, curve_params, st.integers(-3, 3))
def test_disjointness_is_symmetric_and_shift_invariant(p, q, k):
    c1, c2 = sine_curve(*p, resolution=64), sine_curve(*q, resolution=64)
    v = curves_disjoint(c1, c2).verdict
    assert curves_disjoint(c2, c1).verdict == v
    assert curves_disjoint(c1.shifted(k), c2).verdict == v


@given(curve_params, curve_params)
def test_sheared_disjointness_is_symmetric(p, q):
    c1 = image_curve(f0, sine_curve(*p, resolution=48))
    c2 = image_curve(f0, sine_curve(*q, resolution=48))
    assert curves_disjoint(c1, c2).verdict == curves_disjoint(c2, c1).verdict
    assert curves_disjoint(c1.shifted(2), c2).verdict == curves_disjoint(c1, c2).verdict


def test_join_of_graph_curves_is_lower_envelope():
    a, b = sine_curve(0.5, 1), PeriodicCurve.horizontal(0.1, 32)
    j = join_graph_curves(a, b)
    xs = np.linspace(0, 1, 97)
    assert np.allclose(j.height(xs), np.minimum(a.height(xs), b.height(xs)), atol=1e-12)


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=4, max_size=4))
def test_segment_predicates_exact_vs_float(pts):
    p1, p2, q1, q2 = [tuple(Fraction(v) for v in p) for p in pts]
    exact = segments_cross_properly(p1, p2, q1, q2)
    fl = segments_cross_properly(*[tuple(float(v) for v in p) for p in (p1, p2, q1, q2)])
    assert exact == fl
    if exact:
        assert segments_intersect(p1, p2, q1, q2)


# -- region U ---------------------------------------------------------------------------------

def test_region_of_vertical_translation():
    u = build_U(g0, N=10, resolution=16)
    for n in range(-10, 11):
        assert np.allclose(u.frontier_curves[n].ys, n)
    assert u.accumulation_up is None and u.accumulation_down is None
    assert u.message == "no accumulation detected up to N=10"
    assert u.ordered_depth == 10


def test_profile_region_accumulates_below_one_half():
    u = build_U(PROFILE, N=200, resolution=256)
    assert u.accumulation_up is not None and u.accumulation_up.level < 0.5
    assert u.accumulation_down is not None and u.accumulation_down.level > -0.5
    assert all(c.y_range()[1] < 0.5 for c in u.frontier_curves.values())


def test_shear_fails_the_precondition():
    with pytest.raises(IntersectionError):
        build_U(f0, N=5, resolution=16)


def test_consecutive_frontiers_disjoint_and_ordered(profile_region):
    u = profile_region
    assert u.ordered_depth == u.N
    for n in range(-u.N, u.N):
        if n in u.disjoint:
            assert u.disjoint[n] == "disjoint"
        assert np.all(u.frontier_curves[n + 1].height(u.frontier_curves[n].xs) > u.frontier_curves[n].ys)


# -- case classification -------------------------------------------------------------------------

def test_vertical_translation_clears_the_band(profile_region):
    r = classify_case(PROFILE, g0, u=profile_region)
    assert (r.case, r.regions) == ("case2_disjoint", ("X",))


def test_small_lift_is_inside_the_band(profile_region):
    r = classify_case(PROFILE, translate(0, 0.1), u=profile_region)
    assert (r.case, r.candidate, r.regions) == ("inconclusive", "case1_contained", ("U",))


def test_steep_sine_meets_all_regions(profile_region):
    r = classify_case(PROFILE, vertical_sine(2), u=profile_region)
    assert (r.case, r.regions) == ("case3b_XUY", ("X", "U", "Y"))


def test_one_sided_sine(profile_region):
    r = classify_case(PROFILE, vertical_sine(0.5, 1, 0, 0.5), u=profile_region)
    assert r.case == "case3a_XU"


# -- crossings ----------------------------------------------------------------------------------

def test_two_crossings(profile_region):
    c = image_curve(vertical_sine(2), x_axis(512))
    rec = crossings_with_orientation(c, profile_region)
    assert [r.orientation for r in rec] == ["downward", "upward"]
    assert brute_force_crossing_count(c, profile_region.bottom) == 2
    # started on the descending side, the same curve reads upward first
    c2 = image_curve(vertical_sine(2, 1, Fraction(1, 2)), x_axis(512))
    assert [r.orientation for r in crossings_with_orientation(c2, profile_region)] == ["upward", "downward"]


def test_no_crossings_inside_band(profile_region):
    assert crossings_with_orientation(PeriodicCurve.horizontal(0.1, 64), profile_region) == []


def test_four_crossings_alternate(profile_region):
    c = image_curve(vertical_sine(2, 2), x_axis(512))
    rec = crossings_with_orientation(c, profile_region)
    assert len(rec) == 4 == brute_force_crossing_count(c, profile_region.bottom)
    assert orientations_alternate(rec)


def test_crossing_components_are_distinct(profile_region):
    c = image_curve(vertical_sine(2, 2), x_axis(512))
    rec = crossings_with_orientation(c, profile_region)
    assert all(r.component_id >= 0 for r in rec)
    assert len({r.component_id for r in rec}) >= 2


@pytest.mark.parametrize("amp,freq,phase", [(1, 1, 0), (3, 2, 0.25), (1.5, 3, 0.1), (0.8, 4, 0.6)])
def test_crossing_alternation_and_oracle(profile_region, amp, freq, phase):
    c = image_curve(vertical_sine(amp, freq, phase), x_axis(1024))
    rec = crossings_with_orientation(c, profile_region)
    assert orientations_alternate(rec)
    assert len(rec) == brute_force_crossing_count(c, profile_region.bottom)


def test_brute_force_oracle_counts_simple_cases():
    P = np.array([[0, -1], [1, 1], [2, -1]], float)
    Q = np.array([[-1, 0], [3, 0]], float)
    assert count_proper_crossings(P, Q) == 2


def test_unseparated_frontiers_refused():
    u = build_U(PROFILE, N=3, resolution=32)
    u.frontier_curves[-3] = u.frontier_curves[3]
    with pytest.raises(InconclusiveRegionError):
        crossings_with_orientation(PeriodicCurve.horizontal(0.1, 8), u)


# -- translation-like elements -------------------------------------------------------------------

def test_word_order():
    order = word_order(1)
    assert order[:4] == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert len(order) == 8


def test_annulus_basic_returns_vertical_translation():
    res = find_translation_like(f0, g0, N=50, resolution=64)
    assert res.status == "found" and res.exponents == (0, 1)
    rejected = {c.exponents: c.reason for c in res.candidates if not c.accepted}
    assert rejected[(1, 0)] == rejected[(-1, 0)] == "not_disjoint"
    assert commutator_deck_element(f0, g0, [h0]).exponents == (1,)


def test_profile_rejects_f_by_accumulation():
    res = find_translation_like(PROFILE, g0, N=200, resolution=256)
    assert res.exponents == (0, 1)
    reasons = {c.exponents: c.reason for c in res.candidates}
    assert reasons[(1, 0)] == "accumulation"


def test_skew_rejects_f_by_the_invariant_line():
    res = find_translation_like(SKEW, g0, N=200, resolution=256)
    assert res.exponents == (0, 1)
    f_verdict = next(c for c in res.candidates if c.exponents == (1, 0))
    assert f_verdict.reason == "bounded_orbit" and "(0.375, 0.5)" in f_verdict.detail


def test_precondition_requires_nonzero_commutator():
    with pytest.raises(PreconditionError):
        find_translation_like(g0, translate(0, 2), N=5, resolution=16)


def test_skew_region_reports_no_accumulation():
    u = build_U(SKEW, N=200, resolution=256)
    assert u.message == "no accumulation detected up to N=200"


# -- straightening ---------------------------------------------------------------------------------

def test_conjugacy_of_vertical_translation():
    phi = build_vertical_conjugacy(g0, N=10, resolution=64)
    assert phi.vertical_residual == 0 and phi.horizontal_drift == 0


def test_conjugacy_of_drifting_translation():
    phi = build_vertical_conjugacy(translate(0.3, 1), N=10, resolution=64)
    assert phi.vertical_residual == pytest.approx(0, abs=1e-12)
    assert phi.horizontal_drift == pytest.approx(0.3, abs=1e-12)


def test_conjugacy_of_perturbed_translation():
    phi = build_vertical_conjugacy(Compose(g0, vertical_sine(0.05)), N=10, resolution=256)
    assert phi.vertical_residual <= 1e-7


def test_conjugacy_refuses_downward_frontiers():
    with pytest.raises(RefusalError):
        build_vertical_conjugacy(translate(0, -1), N=3, resolution=16)


@pytest.mark.parametrize("F", [f0, PROFILE, SKEW], ids=["shear", "profile", "skew"])
def test_found_element_straightens(F):
    res = find_translation_like(F, g0, N=60, resolution=128)
    phi = build_vertical_conjugacy(res.map, N=20, resolution=128)
    assert phi.vertical_residual <= 10 * res.settings["tol"]


def test_points_above_is_preserved_by_the_shear():
    # the sheared curve is not a graph, so membership goes through ray parity
    c = sine_curve(0.3, 2)
    px, py = np.linspace(0, 3, 50), np.linspace(-0.5, 0.5, 50)
    tilted = image_curve(f0, c)
    assert c.is_graph() and not tilted.is_graph()
    qx, qy = f0((px, py))
    assert np.array_equal(points_above(tilted, qx, qy), points_above(c, px, py))
