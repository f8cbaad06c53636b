# File name: area/sampling_test.py

"""Tests for the area.sampling module."""

import numpy as np

from geometry.scalar import *
from geometry.primitives import *
from sprouting.config import dyadic_indices
from sprouting.horns import horn_region
from sprouting.scene_test import relaxed_scene
from area.sampling import *


def test_blocks(debug=False):
    if debug:
        print("Testing block sizes and streams")
    assert block_sizes(0) == []
    assert block_sizes(BLOCK_SIZE) == [BLOCK_SIZE]
    assert block_sizes(2 * BLOCK_SIZE + 5) == [BLOCK_SIZE, BLOCK_SIZE, 5]
    first = block_generator(42, 3).random(4)
    assert np.array_equal(first, block_generator(42, 3).random(4))
    assert not np.array_equal(first, block_generator(42, 4).random(4))
    assert not np.array_equal(first, block_generator(43, 3).random(4))


def test_count_hits(debug=False):
    def counter(rng, size):
        return int((rng.random(size) < 0.25).sum())

    samples = BLOCK_SIZE * 3 + 17
    single = count_hits(counter, samples, 7, workers=1)
    if debug:
        print("Testing", single, "hits")
    assert single == count_hits(counter, samples, 7, workers=3)
    assert abs(single / samples - 0.25) < 0.01


def test_candidate_ranges(debug=False):
    keys = np.array([0.1, 0.2, 0.3, 1.1, 1.4, 2.2, 2.3])
    positions = candidate_ranges(keys, np.array([0.15, 1.0, 2.5]), np.array([0.3, 1.2, 2.9]))
    if debug:
        print("Testing", positions)
    assert positions.tolist() == [1, 2, 3]
    assert candidate_ranges(keys, np.array([5.0]), np.array([6.0])).size == 0


def test_mask_matches_exact_membership(debug=False):
    scene = relaxed_scene(2)
    precision = scene.precision
    origin = scene.frame.origin
    rng = np.random.default_rng(5)
    for x in dyadic_indices(2)[:-1]:
        region = horn_region(scene, 2, x)
        horn = HornArrays(region, origin, precision.scalar(1))
        if debug:
            print("Testing", horn)
        x0, y0, x1, y1 = (float(value - shift) for value, shift in zip(region.bounding_box(), [origin.x, origin.y] * 2))
        xs = x0 + (x1 - x0) * rng.random(400)
        ys = y0 + (y1 - y0) * rng.random(400)
        mask = horn.mask(xs, ys)
        for px, py, inside in zip(xs, ys, mask):
            point = Point.of(precision, px, py) + origin
            assert region.contains(point) == bool(inside)
        assert 0 < horn.band < 0.01


def test_all(debug=False):
    test_blocks(debug)
    test_count_hits(debug)
    test_candidate_ranges(debug)
    test_mask_matches_exact_membership(debug)
