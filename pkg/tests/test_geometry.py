# File name: tests/test_geometry.py

"""Tests the scalar profiles, the primitives and the lune frame."""

from geometry.primitives_test import *
from geometry.lune_test import *


def test_precision(debug=False):
    test_precision_profiles(debug)
    test_normalize_angle(debug)


def test_primitives(debug=False):
    test_rotate_point(debug)
    test_circle_circle_intersection(debug)
    test_horn_area(debug)
    test_arc_point_at_fraction(debug)
    test_directed_arc(debug)
    test_isometry(debug)


def test_lune(debug=False):
    test_crossing_points(debug)
    test_tip_arc(debug)
    test_ring_arcs(debug)
