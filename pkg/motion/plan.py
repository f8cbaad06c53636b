# File name: motion/plan.py

"""Motion plans: sequences of pivots about an arc endpoint and slides along
the arc's own circle that carry a unit-radius arc between two positions."""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from kakeya_utils import frozen, memoized_parameterless_method

from geometry.scalar import *
from geometry.primitives import *
from lemmas.reports import LemmaReport
from sprouting.config import DyadicIndex, dyadic_indices
from sprouting.horns import HornRegion
from sprouting.scene import SproutScene

logger = logging.getLogger(__name__)

#: Arcs must be shorter than this.
ARC_LENGTH_LIMIT = "1.32"
ARC_LENGTH_DEFAULT = "1.31"

#: Multiple of the profile tolerance accepted between poses that must coincide.
PLAN_SLACK = 64

PIVOT = "PIVOT"
SLIDE = "SLIDE"

ENTRY, ALPHA, BETA, SLIDE_ROLE, EXIT, LINK = "entry", "alpha", "beta", "slide", "exit", "link"
ROLES = (ENTRY, ALPHA, BETA, SLIDE_ROLE, EXIT, LINK)


class SceneIncompleteError(Exception):
    """Raised when a plan is requested from a scene built to fewer levels than configured."""


class ArcTooLongError(ValueError):
    """Raised when the moving arc is not shorter than the admissible limit."""


@frozen
class ArcPose:
    """A position of the moving arc.

    The arc is stored clockwise: it runs from its head by a negative sweep to
    its tail. Arcs given counter-clockwise are stored reversed.

    Attributes:
        arc (`~geometry.primitives.DirectedArc`): the arc in this position.
    """

    arc: DirectedArc

    def __init__(self, arc: DirectedArc):
        """Initializes an `ArcPose`.

        Parameters:
            arc: a unit-radius arc shorter than 1.32.
        """
        precision = arc.precision
        assert abs(arc.circle.radius - 1) <= PLAN_SLACK * precision.tolerance, "poses lie on unit circles"
        if arc.length >= precision.scalar(ARC_LENGTH_LIMIT):
            raise ArcTooLongError(f"arc length {arc.length} is not below {ARC_LENGTH_LIMIT}")
        self.arc = arc.reversed() if arc.sweep > 0 else arc

    @property
    def precision(self) -> Precision:
        return self.arc.precision

    @property
    def circle(self) -> Circle:
        return self.arc.circle

    @property
    def head(self) -> Point:
        return self.arc.start

    @property
    def tail(self) -> Point:
        return self.arc.end

    @property
    def length(self) -> Any:
        return self.arc.length

    @property
    def chord(self) -> Any:
        return self.arc.chord

    def transformed(self, isometry: Isometry) -> ArcPose:
        return ArcPose(isometry.apply_arc(self.arc))

    def rotated(self, pivot: Point, angle: Any) -> ArcPose:
        return self.transformed(Isometry.rotation(pivot, angle))

    def slid(self, angle: Any) -> ArcPose:
        """The pose moved along its own circle by a signed angle."""
        return ArcPose(DirectedArc(self.circle, self.arc.start_angle + angle, self.arc.sweep))

    def distance_to(self, other: ArcPose) -> Any:
        """The largest displacement between corresponding endpoints and centers."""
        return max(
            self.head.distance_to(other.head),
            self.tail.distance_to(other.tail),
            self.circle.center.distance_to(other.circle.center),
            abs(self.circle.radius - other.circle.radius),
        )

    def to_json(self) -> dict:
        return self.arc.to_json()

    def __repr__(self) -> str:
        return f"ArcPose({self.head} -> {self.tail} on {self.circle})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ArcPose) and self.arc == other.arc

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash(self.arc)


@frozen
class MotionStep:
    """A primitive rigid move of the arc.

    Attributes:
        kind (`str`): ``'PIVOT'`` (rotation about an arc endpoint) or
            ``'SLIDE'`` (rotation about the center of the arc's circle).
        center (`~geometry.primitives.Point`): the fixed point of the rotation.
        circle (`~typing.Optional`\\[`~geometry.primitives.Circle`]): for a
            slide, the circle the arc moves along.
        angle: signed rotation angle.
        start_pose (`ArcPose`): position before the move.
        end_pose (`ArcPose`): position after the move.
        swept_bound: upper bound on the area swept by the move.
        role (`str`): place of the move in its plan, one of `ROLES`.
        index (`~typing.Optional`\\[`~sprouting.config.DyadicIndex`]): the
            dyadic index the move belongs to, if any.
    """

    kind: str
    center: Point
    circle: Optional[Circle]
    angle: Any
    start_pose: ArcPose
    end_pose: ArcPose
    swept_bound: Any
    role: str
    index: Optional[DyadicIndex]

    def __init__(
        self,
        kind: str,
        center: Point,
        angle: Any,
        start_pose: ArcPose,
        end_pose: ArcPose,
        role: str,
        index: Optional[DyadicIndex] = None,
        circle: Optional[Circle] = None,
    ):
        assert kind in (PIVOT, SLIDE)
        assert role in ROLES
        assert (circle is not None) == (kind == SLIDE)
        self.kind = kind
        self.center = center
        self.circle = circle
        self.angle = center.context.mpf(angle)
        self.start_pose = start_pose
        self.end_pose = end_pose
        self.role = role
        self.index = index
        if kind == PIVOT:
            self.swept_bound = horn_area(start_pose.chord, abs(self.angle))
        else:
            self.swept_bound = center.context.mpf(0)

    @staticmethod
    def pivot(
        pose: ArcPose,
        center: Point,
        angle: Any,
        role: str,
        index: Optional[DyadicIndex] = None,
        target: Optional[Circle] = None,
    ) -> MotionStep:
        """Rotates a pose about one of its endpoints.

        Parameters:
            pose: the starting pose.
            center: the arc endpoint to rotate about.
            angle: signed rotation angle.
            role: role of the move.
            index: dyadic index of the move.
            target: the circle the rotated arc is known to lie on; the end pose
                is placed on it exactly.
        """
        end = pose.rotated(center, angle)
        if target is not None:
            end = ArcPose(DirectedArc(target, target.angle_of(end.head), end.arc.sweep))
        return MotionStep(PIVOT, center, angle, pose, end, role, index)

    @staticmethod
    def slide(pose: ArcPose, angle: Any, role: str, index: Optional[DyadicIndex] = None) -> MotionStep:
        return MotionStep(SLIDE, pose.circle.center, angle, pose, pose.slid(angle), role, index, pose.circle)

    def isometry(self) -> Isometry:
        return Isometry.rotation(self.center, self.angle)

    def pose_at(self, fraction: Any) -> ArcPose:
        """The pose after the given fraction of the move."""
        if fraction <= 0:
            return self.start_pose
        if fraction >= 1:
            return self.end_pose
        if self.kind == SLIDE:
            return self.start_pose.slid(self.angle * fraction)
        return self.start_pose.rotated(self.center, self.angle * fraction)

    def reversed(self) -> MotionStep:
        """The move undoing this one."""
        return MotionStep(
            self.kind, self.center, -self.angle, self.end_pose, self.start_pose, self.role, self.index, self.circle
        )

    def transformed(self, isometry: Isometry, role: Optional[str] = None) -> MotionStep:
        """The image of this move under a rigid motion of the plane."""
        angle = -self.angle if isometry.reverses_orientation else self.angle
        circle = None if self.circle is None else isometry.apply_circle(self.circle)
        return MotionStep(
            self.kind,
            isometry.apply(self.center),
            angle,
            self.start_pose.transformed(isometry),
            self.end_pose.transformed(isometry),
            self.role if role is None else role,
            self.index,
            circle,
        )

    def horn(self) -> HornRegion:
        """The region swept by a pivot."""
        assert self.kind == PIVOT
        return HornRegion.swept(self.center, self.start_pose.arc, self.angle)

    def to_json(self) -> dict:
        precision = self.center.precision
        document = {
            "kind": self.kind,
            "role": self.role,
            "index": None if self.index is None else str(self.index),
            "center": self.center.to_json(),
            "angle": precision.render(self.angle),
            "start_pose": self.start_pose.to_json(),
            "end_pose": self.end_pose.to_json(),
            "swept_bound": precision.render(self.swept_bound),
        }
        if self.circle is not None:
            document["circle"] = self.circle.to_json()
        return document

    def __repr__(self) -> str:
        suffix = "" if self.index is None else f" x={self.index}"
        return f"{self.kind}[{self.role}{suffix}]({self.center}, {self.center.context.nstr(self.angle, 8)})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MotionStep)
            and self.kind == other.kind
            and self.center == other.center
            and self.angle == other.angle
            and self.start_pose == other.start_pose
            and self.end_pose == other.end_pose
            and self.role == other.role
        )

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash(str(self))


@frozen
class MotionPlan:
    """An immutable sequence of moves.

    Attributes:
        steps (`~typing.Tuple`\\[`MotionStep`, ...]): the moves in order.
        total_swept_bound: sum of the per-step area bounds.
    """

    steps: Tuple[MotionStep, ...]
    total_swept_bound: Any

    def __init__(self, steps: Sequence[MotionStep]):
        self.steps = tuple(steps)
        if self.steps:
            context = self.steps[0].center.context
            self.total_swept_bound = context.fsum(step.swept_bound for step in self.steps)
        else:
            self.total_swept_bound = 0

    @property
    def start_pose(self) -> ArcPose:
        return self.steps[0].start_pose

    @property
    def end_pose(self) -> ArcPose:
        return self.steps[-1].end_pose

    def pivots(self) -> List[MotionStep]:
        return [step for step in self.steps if step.kind == PIVOT]

    def slides(self) -> List[MotionStep]:
        return [step for step in self.steps if step.kind == SLIDE]

    def carry(self, pose: ArcPose) -> ArcPose:
        """Applies the rotation of every step in turn to a pose."""
        for step in self.steps:
            pose = pose.transformed(step.isometry())
        return pose

    def reversed(self) -> MotionPlan:
        return MotionPlan([step.reversed() for step in reversed(self.steps)])

    def transformed(self, isometry: Isometry) -> MotionPlan:
        return MotionPlan([step.transformed(isometry) for step in self.steps])

    @memoized_parameterless_method
    def to_json(self) -> dict:
        if not self.steps:
            return {"steps": [], "total_swept_bound": "0", "touched_curve_length": "0"}
        precision = self.steps[0].center.precision
        return {
            "steps": [step.to_json() for step in self.steps],
            "total_swept_bound": precision.render(self.total_swept_bound),
            "touched_curve_length": precision.render(touched_curve_length(self)),
        }

    def dumps(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_json(), indent=indent)

    def __repr__(self) -> str:
        return f"MotionPlan({len(self.pivots())} pivots, {len(self.slides())} slides)"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MotionPlan) and self.steps == other.steps

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash(self.steps)


def initial_pose(scene: SproutScene, arc_len: Real = ARC_LENGTH_DEFAULT) -> ArcPose:
    """The arc of K₀ of the given length hanging clockwise from M, on the
    boundary of the right lune."""
    K0 = scene.frame.K0
    length = scene.precision.scalar(arc_len)
    return ArcPose(DirectedArc(K0, K0.angle_of(scene.M), -length))


def final_pose(scene: SproutScene, arc_len: Real = ARC_LENGTH_DEFAULT) -> ArcPose:
    """The arc of K₁ of the given length hanging clockwise from M."""
    K1 = scene.frame.K1
    length = scene.precision.scalar(arc_len)
    return ArcPose(DirectedArc(K1, K1.angle_of(scene.M), -length))


def _slide_tail_to(pose: ArcPose, target: Point, role: str, index: Optional[DyadicIndex] = None) -> MotionStep:
    circle = pose.circle
    angle = normalize_angle(circle.angle_of(target) - circle.angle_of(pose.tail))
    return MotionStep.slide(pose, angle, role, index)


def _slide_head_to(pose: ArcPose, target: Point, role: str) -> MotionStep:
    circle = pose.circle
    angle = normalize_angle(circle.angle_of(target) - circle.angle_of(pose.head))
    return MotionStep.slide(pose, angle, role)


def build_motion_plan(scene: SproutScene, arc_len: Real = ARC_LENGTH_DEFAULT) -> MotionPlan:
    """Builds the motion carrying the arc from K₀ to K₁ through the scene.

    The arc starts as the clockwise arc of K₀ hanging from M and slides down K₀
    until its tail reaches C_n⁰. For every x ∈ D_n, x < 1, it then pivots
    about C_nˣ onto K₁^{x+2⁻ⁿ}; unless x + 2⁻ⁿ = 1 it slides along that circle
    into the left lune with its tail at P_{x+2⁻ⁿ}, pivots about P_{x+2⁻ⁿ} onto
    K₀^{x+2⁻ⁿ} and slides back until its tail reaches C_n^{x+2⁻ⁿ}. A last
    slide along K₁ brings its head back to M. A level 0 scene yields the
    single pivot about M by h.

    Parameters:
        scene: a complete scene.
        arc_len: length of the moving arc, below 1.32.

    Returns:
        The plan.

    Raises:
        SceneIncompleteError: if the scene is not complete.
        ArcTooLongError: if the arc is too long or not positive.
    """
    if not scene.complete:
        raise SceneIncompleteError(f"{scene} is built to level {scene.level} of {scene.n}")
    length = scene.precision.scalar(arc_len)
    if length <= 0:
        raise ArcTooLongError(f"arc length must be positive, got {arc_len}")
    pose = initial_pose(scene, length)
    frame = scene.frame
    n = scene.n
    if n == 0:
        angle = rotation_angle(scene.M, frame.K0, frame.K1)
        return MotionPlan([MotionStep.pivot(pose, scene.M, angle, ALPHA, DyadicIndex(0, 0), frame.K1)])
    width = Fraction(1, 2**n)
    steps = [_slide_tail_to(pose, scene.c(n, 0), ENTRY)]
    for x in dyadic_indices(n):
        if x.value >= 1:
            continue
        z = x.shifted(width)
        pose = steps[-1].end_pose
        C = scene.c(n, x)
        K1 = scene.k1(z)
        steps.append(MotionStep.pivot(pose, C, rotation_angle(C, pose.circle, K1), ALPHA, x, K1))
        if z.value == 1:
            break
        P = scene.tip_point(z)
        K0 = scene.k0(z)
        steps.append(_slide_tail_to(steps[-1].end_pose, P, SLIDE_ROLE, z))
        steps.append(MotionStep.pivot(steps[-1].end_pose, P, rotation_angle(P, K1, K0), BETA, z, K0))
        steps.append(_slide_tail_to(steps[-1].end_pose, scene.c(n, z), SLIDE_ROLE, z))
    steps.append(_slide_head_to(steps[-1].end_pose, scene.M, EXIT))
    plan = MotionPlan(steps)
    logger.info("built %s on %s", plan, scene)
    return plan


def _endpoint_offset(pose: ArcPose, p: Point) -> Any:
    return min(pose.head.distance_to(p), pose.tail.distance_to(p))


def validate_plan(plan: MotionPlan) -> LemmaReport:
    """Checks a plan move by move.

    Measures the largest jump between consecutive poses, the distance of each
    pivot center from the nearest endpoint of its arc, the deviation of each
    end pose from the rotated start pose, the distance of slide poses from the
    slide circle, the deviation of each swept bound from the horn formula and
    of the total from the sum, and counts poses off unit circles.

    Parameters:
        plan: the plan to check.

    Returns:
        The report; an empty plan passes vacuously.
    """
    if not plan.steps:
        return LemmaReport("motion_plan", True, {}, {}, "empty plan")
    precision = plan.steps[0].center.precision
    context = precision.context
    slack = PLAN_SLACK * precision.tolerance
    zero = context.mpf(0)
    discontinuity = zero
    pivot_offset = zero
    motion_error = zero
    circle_error = zero
    bound_error = zero
    bad_poses = 0
    limit = precision.scalar(ARC_LENGTH_LIMIT)
    for previous, step in zip((None,) + plan.steps[:-1], plan.steps):
        if previous is not None:
            discontinuity = max(discontinuity, previous.end_pose.distance_to(step.start_pose))
        for pose in (step.start_pose, step.end_pose):
            if abs(pose.circle.radius - 1) > slack or pose.length >= limit:
                bad_poses += 1
        expected = step.start_pose.transformed(step.isometry())
        motion_error = max(motion_error, expected.distance_to(step.end_pose))
        if step.kind == PIVOT:
            pivot_offset = max(pivot_offset, _endpoint_offset(step.start_pose, step.center))
            bound_error = max(bound_error, abs(step.swept_bound - horn_area(step.start_pose.chord, abs(step.angle))))
        else:
            for pose in (step.start_pose, step.end_pose):
                circle_error = max(circle_error, pose.circle.center.distance_to(step.circle.center))
            bound_error = max(bound_error, abs(step.swept_bound))
    total_error = abs(plan.total_swept_bound - context.fsum(step.swept_bound for step in plan.steps))
    measured = {
        "discontinuity": discontinuity,
        "pivot_offset": pivot_offset,
        "motion_error": motion_error,
        "circle_error": circle_error,
        "bound_error": bound_error,
        "total_error": total_error,
        "bad_poses": bad_poses,
    }
    bound = {name: slack for name in measured}
    bound["bad_poses"] = 0
    return LemmaReport("motion_plan", True, measured, bound, f"{len(plan.steps)} steps")


def pose_at(plan: MotionPlan, t: Real) -> ArcPose:
    """Samples the plan at time t ∈ [0, 1], moving at uniform angular speed.

    Parameters:
        plan: a non-empty plan.
        t: time.

    Returns:
        The pose at time t.

    Raises:
        OutOfRangeError: if t lies outside [0, 1].
    """
    assert plan.steps, "an empty plan has no poses"
    precision = plan.steps[0].center.precision
    time = precision.scalar(t)
    if time < 0 or time > 1:
        raise OutOfRangeError(f"time must lie in [0, 1], got {t}")
    context = precision.context
    total = context.fsum(abs(step.angle) for step in plan.steps)
    if total == 0:
        return plan.start_pose if time < 1 else plan.end_pose
    remaining = time * total
    for step in plan.steps:
        span = abs(step.angle)
        if remaining <= span and span > 0:
            return step.pose_at(remaining / span)
        remaining -= span
    return plan.end_pose


def touched_curve_length(plan: MotionPlan) -> Any:
    """Length of the circle portions covered by the arc while sliding."""
    if not plan.steps:
        return 0
    context = plan.steps[0].center.context
    return context.fsum(
        min(2 * context.pi, step.start_pose.length + abs(step.angle) * step.circle.radius) for step in plan.slides()
    )
