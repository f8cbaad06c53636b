# File name: geometry/lune_test.py

"""Tests for the geometry.lune module."""

from fractions import Fraction

from geometry.scalar import *
from geometry.primitives import *
from geometry.lune import *


def _frames():
    return [
        LuneFrame("0.3", "0.05", Precision.hardware()),
        LuneFrame("1e-3", "0.05", Precision.hardware()),
        LuneFrame("9e-10", "9e-7", Precision.big(256)),
    ]


def test_crossing_points(debug=False):
    for frame in _frames():
        if debug:
            print("Testing", frame)
        context = frame.precision.context
        for circle in [frame.K0, frame.K1]:
            assert circle.contains(frame.M) and circle.contains(frame.N)
        assert frame.to_global(frame.M).is_close(Point(0 * frame.h, context.cos(frame.h / 2)))
        assert frame.to_global(frame.origin).is_close(Point(0 * frame.h, 0 * frame.h))
        # the circles cross at M under the angle h
        radius_angle = (frame.M - frame.K0.center).angle() - (frame.M - frame.K1.center).angle()
        assert abs(abs(radius_angle) - frame.h) < frame.precision.tolerance


def test_tip_arc(debug=False):
    for frame in _frames():
        if debug:
            print("Testing the tip arc of", frame)
        tip = frame.tip_arc
        assert frame.K0.contains(tip.start) and frame.K1.contains(tip.end)
        for x in [0, Fraction(1, 4), Fraction(1, 2), 1]:
            p = frame.tip_point(x)
            assert abs(p.distance_to(frame.M) - frame.eps) < frame.precision.tolerance
            assert frame.in_lune0(p)
        assert frame.tip_point(0).is_close(tip.start) and frame.tip_point(1).is_close(tip.end)


def test_ring_arcs(debug=False):
    for frame in _frames():
        if debug:
            print("Testing the ring arcs of", frame)
        for radius in ["0.5", "1.227", "1.9"]:
            arc = frame.ring_arc(radius)
            assert frame.K0.contains(arc.start) and frame.K1.contains(arc.end)
            middle = arc_point_at_fraction(arc, Fraction(1, 2))
            assert frame.in_lune1(middle) and not frame.in_lune0(middle)
            assert abs(arc.sweep - frame.h) < frame.precision.tolerance


def test_all(debug=False):
    test_crossing_points(debug)
    test_tip_arc(debug)
    test_ring_arcs(debug)
