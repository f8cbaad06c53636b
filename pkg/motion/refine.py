# File name: motion/refine.py

"""Recursive refinement of motion plans: each pivot about a tip point is
replaced by a whole motion plan for the smaller crossing angle, carried into
place by a reflection followed by a rotation."""

from __future__ import annotations

import logging
from typing import Any, List, Optional, Tuple

from joblib import Parallel, delayed

from kakeya_utils import worker_count

from geometry.scalar import *
from geometry.primitives import *
from sprouting.config import InvalidConfigError
from sprouting.scene import ConstructionFailedError, SproutScene, build_scene
from motion.plan import *

logger = logging.getLogger(__name__)

#: A scene of crossing angle h can be refined when h < ε²/RECURSION_RATIO.
RECURSION_RATIO = 100


class RecursionInfeasibleError(Exception):
    """Raised when a plan cannot be refined: the crossing angle of a strict
    scene is too large for its tip radius, or a sub-scene cannot be built."""


def transport_isometry(pivot: Point, left: Circle, sub_scene: SproutScene) -> Isometry:
    """The isometry τ mapping the crossing point M of a sub-scene onto `pivot`
    and its circles K₀, K₁ onto the two circles through `pivot`.

    The reflection in the y axis sends the left-centered K₀ of the sub-scene
    to the right; the rotation then turns its center onto the center of
    `left`, the circle the pivot ends on.

    Parameters:
        pivot: the tip point the pivot turns about.
        left: K₀ˣ, whose center lies to the right of K₁ˣ as seen from `pivot`.
        sub_scene: a scene whose angle equals the pivot angle.

    Returns:
        τ.
    """
    frame = sub_scene.frame
    mirrored = Point(-frame.K0.center.x, frame.K0.center.y)
    angle = (left.center - pivot).angle() - mirrored.angle()
    return Isometry.reflection_then_rotation(frame.M, pivot, angle)


def _check_gate(scene: SproutScene) -> None:
    config = scene.config
    limit = config.eps**2 / RECURSION_RATIO
    if config.h < limit:
        return
    message = f"crossing angle {config.precision.render(config.h)} is not below ε²/{RECURSION_RATIO}"
    if config.strict:
        raise RecursionInfeasibleError(message)
    logger.warning("%s; refining anyway in the relaxed regime", message)


def _sub_plan(step: MotionStep, scene: SproutScene, depth: int, sub_n: int) -> Tuple[MotionPlan, Isometry]:
    """Builds, refines and reverses the plan for one pivot, and returns it
    together with the isometry placing it."""
    beta = abs(step.angle)
    try:
        sub_scene = build_scene(scene.config.with_angle(beta, sub_n))
    except (ConstructionFailedError, InvalidConfigError) as error:
        raise RecursionInfeasibleError(f"no sub-scene for the pivot at x={step.index}: {error}") from error
    sub_plan = build_motion_plan(sub_scene, step.start_pose.length)
    sub_plan = refine_plan(sub_plan, sub_scene, depth - 1, sub_n)
    tau = transport_isometry(step.center, step.end_pose.circle, sub_scene)
    logger.debug("refining pivot x=%s by %s", step.index, sub_plan)
    return sub_plan.reversed(), tau


def refine_plan(
    plan: MotionPlan,
    scene: SproutScene,
    depth: int,
    sub_n: Optional[int] = None,
    workers: Optional[int] = None,
) -> MotionPlan:
    """Replaces every pivot about a tip point by a transported motion plan.

    A pivot by β about P_x carries the arc from K₁ˣ onto K₀ˣ. The plan built
    on a fresh scene for angle β carries an arc from K₀(β) to K₁(β) about the
    sub-scene's M; reversed and mapped by `transport_isometry` it performs the
    same move while sweeping far less area. The sub-plans are refined
    recursively `depth` − 1 more times.

    Parameters:
        plan: a plan built on `scene` by `build_motion_plan`.
        scene: the scene the plan moves through.
        depth: number of refinement rounds, non-negative.
        sub_n: level count of the sub-scenes; that of `scene` by default.
        workers: joblib worker threads for the sub-scene builds; the
            ``KAKEYA_WORKERS`` setting by default.

    Returns:
        The refined plan; `plan` itself for depth 0.

    Raises:
        RecursionInfeasibleError: if the strict scene angle h is not below ε²/100
            or a sub-scene cannot be built.
    """
    assert depth >= 0
    if depth == 0:
        return plan
    if sub_n is None:
        sub_n = scene.n
    betas = [step for step in plan.steps if step.kind == PIVOT and step.role == BETA]
    _check_gate(scene)
    for step in betas:
        assert step.angle > 0, f"pivot at x={step.index} turns clockwise"
    if workers is None:
        workers = worker_count(1)
    results = Parallel(n_jobs=workers, prefer="threads")(
        delayed(_sub_plan)(step, scene, depth, sub_n) for step in betas
    )
    replacements = dict(zip((id(step) for step in betas), results))
    steps: List[MotionStep] = []
    for step in plan.steps:
        if id(step) not in replacements:
            steps.append(step)
            continue
        sub_plan, tau = replacements[id(step)]
        steps.extend(sub_plan.transformed(tau).steps)
    refined = MotionPlan(steps)
    logger.info("depth %d refinement of %d pivots: %s", depth, len(betas), refined)
    return refined


def refinement_angles(plan: MotionPlan) -> List[Any]:
    """The angles of the sub-problems a refinement round would create."""
    return [abs(step.angle) for step in plan.steps if step.kind == PIVOT and step.role == BETA]
