# File name: lemmas/oracles_test.py

"""Tests for the lemmas.oracles, lemmas.constants and lemmas.reports modules."""

import json

from hypothesis import given, settings, strategies as st

from geometry.scalar import *
from geometry.primitives import *
from geometry.lune import LuneFrame
from lemmas.reports import *
from lemmas.oracles import *
from lemmas.constants import *

HW = Precision.hardware()
BIG = Precision.big(256)


def _point(x, y, precision=HW):
    return Point.of(precision, x, y)


def _unit(precision=HW):
    return Circle(_point(0, 0, precision), 1)


def test_lemma_report(debug=False):
    if debug:
        print("Testing report verdicts")
    report = LemmaReport("demo", True, {"a": 1, "min_b": 3, "extra": 9}, {"a": 2, "min_b": 2})
    assert report.passed and not report.failed
    failing = LemmaReport("demo", True, {"a": 3, "min_b": 1}, {"a": 2, "min_b": 2})
    assert not failing.passed and failing.failed
    assert sorted(failing.violations()) == ["a", "min_b"]
    gated = LemmaReport("demo", False, {"a": 1}, {"a": 2})
    assert not gated.passed and not gated.failed
    assert json.loads(reports_to_json([report]))[0]["pass"] is True
    if debug:
        print("Testing merged reports")
    merged = merge_reports("all", [report, failing])
    assert not merged.passed and merged.measured["a"] == 3
    assert merge_reports("none", []).passed


def test_rotate_circle_to_contain(debug=False):
    K = _unit()
    Q = _point(1, 0)
    if debug:
        print("Testing a target already on the circle")
    same, alpha = rotate_circle_to_contain(K, Q, _point(0, 1), POSITIVE)
    assert same == K and alpha == 0

    if debug:
        print("Testing an interior target")
    P = _point(0, 0.9)
    rotated, alpha = rotate_circle_to_contain(K, Q, P, POSITIVE)
    root = HW.context.sqrt(HW.scalar("0.1"))
    assert rotated.contains(P)
    assert rotated.contains(Q)
    assert HW.context.sin(alpha) < 2 * root
    assert K.center.distance_to(rotated.center) < 4 * root
    assert rotated.center.is_close(rotate_point(K.center, Q, alpha), HW.scalar("1e-11"))

    if debug:
        print("Testing an exterior target in the negative sense")
    x = HW.scalar("0.51005")
    P = Point(x, HW.context.sqrt(HW.scalar("1.0201") - x * x))
    rotated, alpha = rotate_circle_to_contain(K, Q, P, NEGATIVE)
    assert rotated.contains(P)
    assert HW.context.sin(alpha) < HW.scalar("0.2")
    assert rotated.center.is_close(rotate_point(K.center, Q, -alpha), HW.scalar("1e-11"))

    if debug:
        print("Testing unreachable and degenerate targets")
    try:
        rotate_circle_to_contain(K, Q, _point(-2, 0), POSITIVE)
        assert False, "a target beyond reach must be rejected"
    except NoSolutionError:
        pass
    try:
        rotate_circle_to_contain(K, Q, Q, POSITIVE)
        assert False, "coinciding pivot and target must be rejected"
    except DegenerateError:
        pass


def test_check_lemma1(debug=False):
    K = _unit()
    Q = _point(1, 0)
    if debug:
        print("Testing an interior configuration")
    report = check_lemma1(K, Q, _point(0, 0.9), POSITIVE)
    if debug:
        print(report)
    assert report.hypotheses_met and report.passed

    if debug:
        print("Testing the hypothesis gate")
    # d = 0.01 but |PQ| = 0.15 < 2√d
    report = check_lemma1(K, Q, rotate_point(_point(0.99, 0), _point(0, 0), HW.scalar("0.15")), POSITIVE)
    assert not report.hypotheses_met and not report.passed

    if debug:
        print("Testing a target on the circle")
    report = check_lemma1(K, Q, _point(0, 1), POSITIVE)
    assert report.passed and report.measured["alpha"] == 0


def test_lemma1_campaign(debug=False):
    for case in ("interior", "exterior"):
        if debug:
            print("Testing sampled", case, "configurations")
        reports = lemma1_campaign(case, 200, seed=42, workers=2)
        assert len(reports) == 200
        assert all(report.hypotheses_met for report in reports)
        assert all(report.passed for report in reports), [r for r in reports if not r.passed][:3]
        again = lemma1_campaign(case, 5, seed=42)
        assert again == reports[:5]


def test_sprout_intersection(debug=False):
    K = _unit()
    A = _point(1, 0)
    if debug:
        print("Testing the positive sense")
    eta = HW.scalar("0.1")
    B = K.point_at(eta)
    P, report = sprout_intersection(K, A, B, eta / 4, eta / 2, POSITIVE)
    if debug:
        print(P, report)
    assert report.hypotheses_met and report.passed
    assert P.distance_to(A) < 2 and P.norm() < 1

    if debug:
        print("Testing the negative sense")
    B = K.point_at(HW.scalar("0.05"))
    P, report = sprout_intersection(K, A, B, HW.scalar("0.02"), HW.scalar("0.04"), NEGATIVE)
    assert report.hypotheses_met and report.passed
    assert P.distance_to(A) < 2.5 and P.norm() > 1

    if debug:
        print("Testing the angle ratio gate")
    B = K.point_at(eta)
    _, report = sprout_intersection(K, A, B, HW.scalar("0.04"), HW.scalar("0.05"), POSITIVE)
    assert not report.hypotheses_met and not report.passed


def test_chord_direction_bound(debug=False):
    frame = LuneFrame(HW.scalar("1e-3"), HW.scalar("0.05"), HW)
    if debug:
        print("Testing the tip chord of", frame)
    report = chord_direction_bound(frame.tip_arc, frame.tip_point(0), frame.tip_point(1), frame.h, frame.eps)
    assert report.hypotheses_met and report.passed
    report = chord_direction_bound(frame.tip_arc, frame.tip_point(0.25), frame.tip_point(0.75), frame.h, frame.eps)
    assert report.passed and report.measured["angle"] < frame.eps
    try:
        chord_direction_bound(frame.tip_arc, frame.tip_point(0.5), frame.tip_point(0.5), frame.h, frame.eps)
        assert False, "a chord needs two points"
    except DegenerateError:
        pass

    if debug:
        print("Testing a grid of chords in the strict regime")
    strict = LuneFrame(BIG.scalar("9e-10"), BIG.scalar("9e-7"), BIG)
    points = [strict.tip_point(BIG.scalar(k) / 45) for k in range(46)]
    reports = [
        chord_direction_bound(strict.tip_arc, p, q, strict.h, strict.eps)
        for j, p in enumerate(points)
        for q in points[j + 1 :]
    ]
    assert all(report.passed for report in reports)


def test_junction_rotation_check(debug=False):
    frame = LuneFrame(HW.scalar("1e-3"), HW.scalar("0.05"), HW)
    Q = frame.tip_point(0)
    C = frame.ring_arc(1).start
    if debug:
        print("Testing the identity rotation at", C)
    report = junction_rotation_check(Q, Q, C, frame.K0, frame.K0, frame.eps, frame)
    assert report.hypotheses_met and report.passed
    assert report.measured["alpha"] == 0
    assert report.bound["alpha"] == frame.eps and report.bound["line_angle"] == 6 * frame.eps
    if debug:
        print("Testing the distance gate")
    far = frame.ring_arc(2 - 2 * frame.eps).start
    report = junction_rotation_check(Q, Q, far, frame.K0, frame.K0, frame.eps, frame)
    assert not report.hypotheses_met
    if debug:
        print("Testing points off the left lune")
    outside = frame.ring_arc("0.5").start
    assert not frame.in_lune0(outside)
    report = junction_rotation_check(outside, outside, C, frame.K0, frame.K0, frame.eps, frame)
    assert not report.hypotheses_met
    try:
        junction_rotation_check(Q, Q, C, frame.K0, frame.K0, "0.1", frame)
        assert False, "ε must match the lune"
    except AssertionError as error:
        assert "tip radius" in str(error)


def test_smallest_angle_bound(debug=False):
    one = HW.scalar(1)
    if debug:
        print("Testing closed-form triangles")
    report = smallest_angle_bound(one, one, one)
    assert report.passed and abs(report.measured["angle"] - HW.pi / 3) < 1e-12
    report = smallest_angle_bound(one, one, HW.context.sqrt(2))
    assert report.passed and abs(report.measured["angle"] - HW.pi / 4) < 1e-12
    for sides, error in [((2, 1, 3), UnsortedSidesError), ((1, 1, 3), NotATriangleError)]:
        try:
            smallest_angle_bound(*[HW.scalar(side) for side in sides])
            assert False, f"{sides} must be rejected"
        except error:
            pass


_fractions = st.floats(min_value=0, max_value=1)


@given(st.floats(min_value=0.01, max_value=10), _fractions, _fractions)
@settings(max_examples=300, deadline=None)
def test_smallest_angle_random(c, u, w):
    c = HW.scalar(c)
    b = c * (HW.scalar("0.5") + HW.scalar(w) / 2)
    low = max((c - b) * (1 + HW.scalar("1e-9")), c * HW.scalar("1e-6"))
    a = min(b, low + (b - low) * HW.scalar(u))
    assert smallest_angle_bound(a, b, c).passed


def test_polynomial_certificate(debug=False):
    if debug:
        print("Testing the quartic at the right end")
    report = polynomial_certificate(HW.scalar("1.228"), 2)
    assert report.passed and report.measured["min_value"] >= 0
    report = polynomial_certificate(HW.scalar("1e-9"), 2)
    assert abs(report.measured["min_value"] - HW.scalar("15.999")) < 1e-6
    if debug:
        print("Testing a fine grid")
    report = polynomial_certificate(HW.scalar("1.228"), 10**4)
    assert report.passed
    assert abs(report.measured["argmin"] - HW.scalar("1.228")) < 1e-12


def test_constants(debug=False):
    h = HW.scalar("1e-3")
    u = continuity_radius(h)
    if debug:
        print("Testing the arccos continuity radius", u)
    assert 0 < u and arccos_modulus(u) < h
    assert abs(u - (1 - HW.context.cos(h))) < 1e-9
    n0, c = junction_constant(h, HW.scalar("0.05"))
    assert n0 == 2 / u and c >= 2 * n0 and c >= 8 / HW.scalar("0.05")
    eps = HW.scalar("0.05")
    v = ratio_continuity_radius(eps)
    if debug:
        print("Testing the weight ratio radius", v)
    assert 0 < v < 1
    weight = lambda t: t * HW.context.sqrt(1 - (t / 2) ** 2)
    assert weight(eps + v) / weight(eps) <= HW.scalar("1.1") + 1e-9


def test_lemma_suite(debug=False):
    reports = lemma_suite(seed=7, count=50)
    if debug:
        print("Testing", reports)
    assert [report.lemma_id for report in reports] == [
        "quartic_certificate",
        "rotation_interior",
        "rotation_exterior",
        "sprout_positive",
        "sprout_negative",
        "smallest_angle",
    ]
    assert all(report.hypotheses_met and report.passed for report in reports)
    assert lemma_suite(seed=7, count=50, workers=2) == reports
    if debug:
        print("Testing sampled sprouting configurations")
    for sense in (POSITIVE, NEGATIVE):
        campaign = sprout_campaign(sense, 20, seed=3)
        assert len(campaign) == 20
        assert all(report.hypotheses_met and report.passed for report in campaign)
        limit = 20 if sense == POSITIVE else 50
        assert all(report.bound["distance_PA"] == limit * report.measured["eta"] for report in campaign)
    triangles = smallest_angle_campaign(30, seed=5)
    assert len(triangles) == 30 and all(report.passed for report in triangles)


def test_all(debug=False):
    test_lemma_report(debug)
    test_rotate_circle_to_contain(debug)
    test_check_lemma1(debug)
    test_lemma1_campaign(debug)
    test_sprout_intersection(debug)
    test_chord_direction_bound(debug)
    test_junction_rotation_check(debug)
    test_smallest_angle_bound(debug)
    test_smallest_angle_random()
    test_polynomial_certificate(debug)
    test_constants(debug)
    test_lemma_suite(debug)
