# File name: sprouting/scene_test.py

"""Tests for the sprouting.scene module."""

import json
from fractions import Fraction

from geometry.scalar import *
from geometry.primitives import *
from sprouting.config import *
from sprouting.scene import *
from sprouting.scene import _Builder

STRICT_H = "9e-10"
STRICT_EPS = "9e-7"


def strict_scene(n):
    return build_scene(SproutConfig(STRICT_H, STRICT_EPS, n))


def relaxed_scene(n, h="1e-3", eps="0.05"):
    return build_scene(SproutConfig(h, eps, n, strict=False))


def test_base_scene(debug=False):
    scene = strict_scene(0)
    if debug:
        print("Testing", scene)
    assert scene.complete and scene.level == 0
    assert list(scene.K0) == [DyadicIndex(0, 0)] and list(scene.K1) == [DyadicIndex(1, 0)]
    assert scene.k0(0) == scene.frame.K0 and scene.k1(1) == scene.frame.K1
    assert scene.c(0, 0) == scene.M
    assert all(report.passed for report in check_invariants(scene))


def test_first_level(debug=False):
    scene = strict_scene(1)
    half = Fraction(1, 2)
    if debug:
        print("Testing", scene)
    P = scene.tip_point(half)
    slack = 16 * scene.precision.tolerance
    assert scene.k1(half).contains(P, slack) and scene.k0(half).contains(P, slack)
    assert scene.c(1, 0).is_close(scene.A[1][0], slack)
    assert scene.c(1, half).is_close(scene.A[1][1], slack)
    eps = scene.config.eps
    for circle in scene.circles():
        assert circle.center.distance_to(scene.frame.origin) < eps


def test_strict_invariants(debug=False):
    scene = strict_scene(4)
    reports = check_invariants(scene)
    if debug:
        for report in reports:
            print(report)
    assert all(report.hypotheses_met for report in reports)
    assert all(report.passed for report in reports)


def test_relaxed_scene(debug=False):
    scene = relaxed_scene(4)
    if debug:
        print("Testing", scene)
    reports = check_invariants(scene)
    for report in reports:
        if report.lemma_id in ("left_containment", "right_containment"):
            assert report.passed, report
        else:
            assert not report.hypotheses_met and not report.passed


def test_determinism(debug=False):
    if debug:
        print("Testing repeated builds")
    first = strict_scene(3)
    second = strict_scene(3)
    assert first == second
    assert first.dumps() == second.dumps()


def test_scale_sanity(debug=False):
    scene = strict_scene(2)
    context = scene.precision.context
    h = scene.config.h
    if debug:
        print("Testing the lune dimensions of", scene)
    assert abs(scene.M.distance_to(scene.N) - 2 * context.cos(h / 2)) <= scene.precision.tolerance
    assert scene.M.distance_to(scene.N) > 2 - h
    assert abs(scene.tip_arc.length - h * scene.config.eps) <= scene.precision.tolerance


def test_pivot_rotations(debug=False):
    scene = strict_scene(3)
    tolerance = 16 * scene.precision.tolerance
    if debug:
        print("Testing the rotations about the tip points")
    for x in dyadic_indices(3):
        if not 0 < x.value < 1:
            continue
        P = scene.tip_point(x)
        angle = rotation_angle(P, scene.k1(x), scene.k0(x))
        assert rotate_point(scene.k1(x).center, P, angle).is_close(scene.k0(x).center, tolerance)


def test_scene_json(debug=False):
    scene = strict_scene(2)
    document = json.loads(scene.dumps())
    if debug:
        print("Testing scene keys", sorted(document["points"]["C"]))
    assert sorted(document["points"]["C"]) == ["0/0", "1/0", "1/1", "2/0", "2/1", "2/2", "2/3"]
    assert sorted(document["circles"]["K0"]) == ["0", "1/2", "1/4", "3/4"]
    assert sorted(document["circles"]["K1"]) == ["1", "1/2", "1/4", "3/4"]
    assert document["config"]["precision"] == "BIG(256)"
    assert len(document["points"]["A"]) == 3
    # full precision survives serialization
    assert len(document["points"]["C"]["2/1"][0]) > 60


def test_fault_injection(debug=False):
    scene = strict_scene(2)
    circle = scene.k0("1/2")
    eps = scene.config.eps
    displaced = Circle(circle.center + Point(2 * eps, eps * 0), circle.radius)
    faulty = scene.replacing_circle("K0", "1/2", displaced)
    if debug:
        print("Testing a displaced circle in", faulty)
    offsets = [report for report in check_invariants(faulty) if report.lemma_id == "center_offset"]
    assert len(offsets) == 1 and offsets[0].failed
    assert scene.k0("1/2") == circle
    try:
        scene.replacing_circle("K0", 1, displaced)
        assert False, "K0^1 does not exist"
    except IndexOutOfRangeError:
        pass


def test_construction_failure(debug=False):
    builder = _Builder(SproutConfig(STRICT_H, STRICT_EPS, 2))
    builder.sprout(0)
    error = builder.fail(2, DyadicIndex(1, 2), "rotation", "test")
    if debug:
        print("Testing", error)
    assert error.level == 2 and error.invariant == "rotation"
    assert error.partial_scene.level == 1 and not error.partial_scene.complete


def test_lookups(debug=False):
    scene = strict_scene(1)
    if debug:
        print("Testing out-of-range lookups")
    for lookup in [lambda: scene.k0(1), lambda: scene.k1(0), lambda: scene.c(2, 0), lambda: scene.tip_point("1/4")]:
        try:
            lookup()
            assert False, "lookup must fail"
        except IndexOutOfRangeError:
            pass


def test_all(debug=False):
    test_base_scene(debug)
    test_first_level(debug)
    test_strict_invariants(debug)
    test_relaxed_scene(debug)
    test_determinism(debug)
    test_scale_sanity(debug)
    test_pivot_rotations(debug)
    test_scene_json(debug)
    test_fault_injection(debug)
    test_construction_failure(debug)
    test_lookups(debug)
