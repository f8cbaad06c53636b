# File name: motion/refine_test.py

"""Tests for the motion.refine module."""

from geometry.scalar import *
from geometry.primitives import *
from lemmas.scene_bounds import beta_sum
from sprouting.config import SproutConfig
from sprouting.scene import build_scene
from sprouting.scene_test import STRICT_EPS, strict_scene, relaxed_scene
from motion.plan import *
from motion.refine import *


def test_depth_zero(debug=False):
    scene = relaxed_scene(2)
    plan = build_motion_plan(scene)
    if debug:
        print("Testing depth 0 on", plan)
    assert refine_plan(plan, scene, 0) is plan


def test_single_refinement(debug=False):
    scene = relaxed_scene(1)
    plan = build_motion_plan(scene)
    refined = refine_plan(plan, scene, 1)
    if debug:
        print("Testing", plan, "->", refined)
    assert len(refined.steps) == len(plan.steps) - 1 + 7
    assert refined.start_pose == plan.start_pose and refined.end_pose == plan.end_pose
    assert validate_plan(refined).passed
    # the sub-plan is mirrored, so its pivots now sit at the arc's head
    transported = refined.steps[3:10]
    assert transported[0].start_pose.distance_to(plan.steps[3].start_pose) < 1e-12
    assert transported[-1].end_pose.distance_to(plan.steps[3].end_pose) < 1e-12


def test_refinement_counts(debug=False):
    scene = relaxed_scene(2)
    plan = build_motion_plan(scene)
    refined = refine_plan(plan, scene, 1, sub_n=1)
    if debug:
        print("Testing", plan, "->", refined)
    assert len(plan.steps) == 15
    assert len(refined.steps) == 15 - 3 + 3 * 7
    assert validate_plan(refined).passed
    assert refine_plan(plan, scene, 1, sub_n=1, workers=2) == refined


def test_deep_refinement(debug=False):
    scene = relaxed_scene(1)
    plan = build_motion_plan(scene)
    refined = refine_plan(plan, scene, 2, sub_n=1)
    if debug:
        print("Testing", refined)
    assert len(refined.steps) == 6 + 13
    report = validate_plan(refined)
    assert report.passed, report.violations()


def test_refinement_angles(debug=False):
    scene = relaxed_scene(3)
    plan = build_motion_plan(scene)
    angles = refinement_angles(plan)
    if debug:
        print("Testing sub-problem angles", angles)
    assert len(angles) == 7
    report = beta_sum(scene)
    context = scene.precision.context
    assert abs(context.fsum(angles) - report.measured["beta_sum"]) < 1e-15
    assert context.fsum(angles) < scene.config.h


def test_transport_isometry(debug=False):
    scene = relaxed_scene(1)
    plan = build_motion_plan(scene)
    step = [step for step in plan.pivots() if step.role == BETA][0]
    sub_scene = build_scene(scene.config.with_angle(abs(step.angle), 1))
    tau = transport_isometry(step.center, step.end_pose.circle, sub_scene)
    if debug:
        print("Testing", tau)
    assert tau.reverses_orientation
    assert tau.apply(sub_scene.M).is_close(step.center)
    assert tau.apply_circle(sub_scene.frame.K0).is_close(step.end_pose.circle)
    assert tau.apply_circle(sub_scene.frame.K1).is_close(step.start_pose.circle)


def test_recursion_gate(debug=False):
    scene = strict_scene(1)
    plan = build_motion_plan(scene)
    if debug:
        print("Testing the recursion gate on", scene)
    try:
        refine_plan(plan, scene, 1)
        assert False, "the default strict angle is not below ε²/100"
    except RecursionInfeasibleError:
        pass

    narrow = build_scene(SproutConfig("8e-15", STRICT_EPS, 1))
    if debug:
        print("Testing a strict scene below the gate", narrow)
    plan = build_motion_plan(narrow)
    assert narrow.config.h < narrow.config.eps**2 / RECURSION_RATIO
    refined = refine_plan(plan, narrow, 1)
    assert len(refined.steps) == len(plan.steps) - 1 + 7
    assert validate_plan(refined).passed


def test_all(debug=False):
    test_depth_zero(debug)
    test_single_refinement(debug)
    test_refinement_counts(debug)
    test_deep_refinement(debug)
    test_refinement_angles(debug)
    test_transport_isometry(debug)
    test_recursion_gate(debug)
