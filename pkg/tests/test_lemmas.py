# File name: tests/test_lemmas.py

"""Tests the lemma oracles and the scene-level bounds."""

from lemmas.oracles_test import *
from lemmas.scene_bounds_test import *


def test_oracles(debug=False):
    test_lemma_report(debug)
    test_rotate_circle_to_contain(debug)
    test_check_lemma1(debug)
    test_lemma1_campaign(debug)
    test_sprout_intersection(debug)
    test_chord_direction_bound(debug)
    test_junction_rotation_check(debug)
    test_smallest_angle_bound(debug)
    test_polynomial_certificate(debug)
    test_constants(debug)
    test_lemma_suite(debug)


def test_scene_bounds(debug=False):
    test_alpha_sandwich(debug)
    test_beta_sum(debug)
    test_consecutive_junctions(debug)
    test_ring_gap(debug)
    test_scene_lemma_reports(debug)
    test_containing_horns(debug)
