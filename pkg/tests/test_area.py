# File name: tests/test_area.py

"""Tests the area estimates and the convergence study."""

from area.sampling_test import *
from area.estimates_test import *
from area.convergence_test import *


def test_sampling(debug=False):
    test_blocks(debug)
    test_count_hits(debug)
    test_candidate_ranges(debug)
    test_mask_matches_exact_membership(debug)


def test_estimates(debug=False):
    test_area_estimate(debug)
    test_upper_bound(debug)
    test_single_horn(debug)
    test_disjoint_horns(debug)
    test_sampling_reproducible(debug)
    test_plan_area(debug)
    test_tn_minus_delta(debug)
    test_decomposition_bound(debug)
    test_stderr_halves(debug)
    test_delta_area(debug)
    test_below_resolution(debug)


def test_convergence(debug=False):
    test_level_zero(debug)
    test_study(debug)
    test_failure_rows(debug)
    test_resolution_rows(debug)
    test_is_decreasing(debug)
