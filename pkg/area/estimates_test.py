# File name: area/estimates_test.py

"""Tests for the area.estimates module."""

import json
import math

from geometry.scalar import *
from geometry.primitives import *
from lemmas.constants import junction_constant
from sprouting.scene_test import strict_scene, relaxed_scene
from motion.plan import *
from area.estimates import *

SAMPLES = 20000


def pivot_step(precision, x, chord, angle):
    circle = Circle(Point.of(precision, x, 0), 1)
    length = 2 * precision.context.asin(precision.scalar(chord) / 2)
    pose = ArcPose(DirectedArc(circle, precision.scalar("1.5"), -length))
    return MotionStep.pivot(pose, pose.tail, precision.scalar(angle), ALPHA)


def test_area_estimate(debug=False):
    estimate = AreaEstimate(0.5, 0.01, 1000, MC_UNION, 7)
    if debug:
        print("Testing", estimate)
    assert json.loads(estimate.dumps()) == {
        "value": "0.5",
        "stderr": "0.01",
        "samples": 1000,
        "method": "MC_UNION",
        "seed": 7,
    }
    analytic = AreaEstimate.analytic(2)
    assert analytic.method == ANALYTIC_SUM and analytic.stderr == 0 and analytic.samples == 0
    assert estimate != analytic
    invalid = [
        ((1, "0.1", 0, ANALYTIC_SUM), "analytic sums carry no error"),
        ((-1, 0, 10, MC_UNION), "area must be non-negative, got -1"),
        ((1, 0, 10, "GUESS"), ""),
    ]
    for arguments, message in invalid:
        try:
            AreaEstimate(*arguments)
            raised = None
        except AssertionError as error:
            raised = str(error)
        assert raised == message, f"{arguments} is not an estimate"


def test_upper_bound(debug=False):
    precision = Precision.hardware()
    h = precision.scalar("0.3")
    single = MotionPlan([pivot_step(precision, 0, 1, h)])
    bound = swept_area_upper_bound(single)
    if debug:
        print("Testing", bound)
    assert abs(bound.value - h / 2) < 1e-12
    assert bound.method == ANALYTIC_SUM
    scene = relaxed_scene(1)
    slides = MotionPlan(build_motion_plan(scene).slides())
    assert swept_area_upper_bound(slides).value == 0
    assert swept_area_upper_bound(MotionPlan([])).value == 0
    plan = build_motion_plan(scene)
    assert swept_area_upper_bound(plan).value == plan.total_swept_bound


def test_single_horn(debug=False):
    precision = Precision.hardware()
    plan = MotionPlan([pivot_step(precision, 0, "1.2", math.pi / 2)])
    estimate = monte_carlo_swept_area(plan, SAMPLES, seed=3)
    expected = 1.44 * math.pi / 4
    if debug:
        print("Testing", estimate, "against", expected)
    assert estimate.method == MC_UNION and estimate.samples == SAMPLES and estimate.seed == 3
    assert 0 < estimate.stderr < 0.05
    assert abs(estimate.value - expected) <= 4 * estimate.stderr


def test_disjoint_horns(debug=False):
    precision = Precision.hardware()
    first = pivot_step(precision, 0, 1, "0.8")
    second = pivot_step(precision, 6, 1, "0.8")
    estimate = monte_carlo_swept_area(MotionPlan([first, second]), 50000)
    expected = float(first.swept_bound + second.swept_bound)
    if debug:
        print("Testing", estimate, "against", expected)
    assert abs(estimate.value - expected) <= 4 * estimate.stderr
    empty = monte_carlo_swept_area(MotionPlan([]), SAMPLES)
    assert empty.value == 0 and empty.stderr == 0
    try:
        monte_carlo_swept_area(MotionPlan([first]), 10)
        raised = None
    except AssertionError as error:
        raised = str(error)
    assert raised == f"at least {MIN_SAMPLES} samples are needed"


def test_sampling_reproducible(debug=False):
    precision = Precision.hardware()
    plan = MotionPlan([pivot_step(precision, 0, 1, "0.5")])
    once = monte_carlo_swept_area(plan, 3 * SAMPLES, seed=11, workers=1)
    if debug:
        print("Testing", once)
    assert once == monte_carlo_swept_area(plan, 3 * SAMPLES, seed=11, workers=1)
    assert once == monte_carlo_swept_area(plan, 3 * SAMPLES, seed=11, workers=3)
    assert once != monte_carlo_swept_area(plan, 3 * SAMPLES, seed=12, workers=1)


def test_plan_area(debug=False):
    plan = build_motion_plan(relaxed_scene(2))
    bound = swept_area_upper_bound(plan)
    estimate = monte_carlo_swept_area(plan, SAMPLES)
    if debug:
        print("Testing", estimate, "against", bound)
    assert bound.value >= estimate.value - 3 * estimate.stderr
    assert estimate.value > 0


def test_tn_minus_delta(debug=False):
    base = tn_minus_delta_area(relaxed_scene(0), SAMPLES)
    assert base.value == 0 and base.stderr == 0
    scene = relaxed_scene(2)
    estimate = tn_minus_delta_area(scene, SAMPLES, seed=5)
    bound, valid = decomposition_bound(scene)
    if debug:
        print("Testing", estimate, "against", bound, valid)
    assert estimate.method == MC_UNION and estimate.value >= 0
    assert estimate.value <= bound + 3 * estimate.stderr
    assert estimate == tn_minus_delta_area(scene, SAMPLES, seed=5, workers=2)


def test_decomposition_bound(debug=False):
    bound, valid = decomposition_bound(relaxed_scene(0))
    assert bound == 0 and valid
    scene = relaxed_scene(3)
    config = scene.config
    context = config.precision.context
    _, c = junction_constant(config.h, config.eps)
    if debug:
        print("Testing c =", c)
    assert piece_bound(scene, 0) == PIECE_CONSTANT * c**2 / 9
    assert abs(piece_bound(scene, 2) - PIECE_CONSTANT * c**2 / 36) <= 1e-9 * piece_bound(scene, 2)
    bound, valid = decomposition_bound(scene)
    log_n = context.log(3, 2)
    disc = context.pi * (2 * (log_n + 1) / 3) ** 2
    assert bound <= 2 * PIECE_CONSTANT * c**2 / 3 + disc + 1e-9 * bound
    assert bound >= disc
    # far too few levels for the bound to be proven
    assert not valid
    assert not decomposition_bound(strict_scene(1))[1]


def test_stderr_halves(debug=False):
    precision = Precision.hardware()
    plan = MotionPlan([pivot_step(precision, 0, "1.2", math.pi / 2)])
    ratios = []
    for seed in range(10):
        coarse = monte_carlo_swept_area(plan, 4000, seed=seed)
        fine = monte_carlo_swept_area(plan, 16000, seed=seed)
        ratios.append(float(fine.stderr) / float(coarse.stderr))
    mean = sum(ratios) / len(ratios)
    if debug:
        print("Testing stderr ratio", mean)
    assert 0.4 <= mean <= 0.6


def test_delta_area(debug=False):
    scene = strict_scene(2)
    config = scene.config
    estimate = delta_area(scene, 200000, seed=4)
    expected = float(config.h * config.eps**2 / 2)
    if debug:
        print("Testing", estimate, "against", expected)
    assert estimate.method == MC_UNION and estimate.samples == 200000
    assert 0 < estimate.stderr < 0.01 * expected
    assert abs(estimate.value - expected) <= 4 * estimate.stderr
    assert estimate.value + 3 * estimate.stderr < float(config.eps**2) * math.pi
    relaxed = relaxed_scene(1)
    expected = float(relaxed.config.h * relaxed.config.eps**2 / 2)
    estimate = delta_area(relaxed, SAMPLES, seed=4)
    assert abs(estimate.value - expected) <= 4 * estimate.stderr


def test_below_resolution(debug=False):
    scene = strict_scene(1)
    if debug:
        print("Testing", scene)
    assert tn_minus_delta_area(strict_scene(0), SAMPLES).value == 0
    try:
        tn_minus_delta_area(scene, SAMPLES)
        assert False, "strict horns are below float64 resolution"
    except ResolutionError as error:
        assert "float64 resolution" in str(error)
    assert tn_minus_delta_area(relaxed_scene(3), SAMPLES).value > 0


def test_all(debug=False):
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
