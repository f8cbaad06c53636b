# File name: motion/chain.py

"""Moving an arc between two arbitrary congruent positions: rotations about a
shared point split into small pieces, and chains of circles joining the
starting circle to the final one."""

from __future__ import annotations

import json
import logging
from typing import Any, List, Optional, Sequence, Tuple

from kakeya_utils import frozen, memoized_parameterless_method

from geometry.scalar import *
from geometry.primitives import *
from sprouting.config import SproutConfig
from sprouting.scene import build_scene
from motion.plan import *

logger = logging.getLogger(__name__)

#: Largest distance between the centers of consecutive chain circles.
CHAIN_SPACING = "1.9"

#: Defaults for the per-link scenes; links are built in the relaxed regime.
LINK_EPS = "0.05"
LINK_LEVELS = 2
MAX_PIECE = "0.01"


class DegenerateChainError(Exception):
    """Raised when two poses are not congruent, so that no rigid motion joins them."""


def theorem2_plan(
    h: Real,
    eps: Real = LINK_EPS,
    n: int = LINK_LEVELS,
    arc_len: Real = ARC_LENGTH_DEFAULT,
    max_piece: Real = MAX_PIECE,
    precision: Optional[Precision] = None,
    strict: bool = False,
) -> MotionPlan:
    """A plan rotating the arc hanging from M on K₀(h) onto K₁(h) for any
    angle h ∈ (0, π).

    The angle is split into k equal pieces h/k ≤ `max_piece`. One scene and
    plan are built for h/k and carried by the rotations κ_j about M mapping
    K₀(h/k) onto N_{j−1} and K₁(h/k) onto N_j, where N_j is the unit circle
    through M whose center lies at angle −π/2 − h/2 + j·h/k.

    Parameters:
        h: the rotation angle.
        eps: tip radius of the piece scenes.
        n: level count of the piece scenes.
        arc_len: length of the arc.
        max_piece: largest angle handled by a single scene.
        precision: profile; HARDWARE for relaxed and BIG(256) for strict
            scenes by default.
        strict: whether the piece scenes enforce the strict regime.

    Returns:
        The plan, in the frame of `~geometry.lune.LuneFrame` for angle h.

    Raises:
        OutOfRangeError: if h does not lie in (0, π).
    """
    if precision is None:
        precision = Precision.big(256) if strict else Precision.hardware()
    context = precision.context
    angle = precision.scalar(h)
    if not 0 < angle < context.pi:
        raise OutOfRangeError(f"rotation angle must lie in (0, π), got {h}")
    pieces = max(1, int(context.ceil(angle / precision.scalar(max_piece))))
    piece = angle / pieces
    scene = build_scene(SproutConfig(piece, eps, n, precision=precision, strict=strict))
    plan = build_motion_plan(scene, arc_len)
    if pieces == 1:
        return plan
    steps: List[MotionStep] = []
    for j in range(1, pieces + 1):
        kappa = Isometry.rotation(scene.M, -angle / 2 + (j - 1) * piece + piece / 2)
        steps.extend(plan.transformed(kappa).steps)
    logger.info("rotation by %s split into %d pieces of %s", context.nstr(angle, 8), pieces, plan)
    return MotionPlan(steps)


def _link_isometry(pivot: Point, source: Circle, angle: Any, local_source: Circle, local_pivot: Point) -> Isometry:
    """The motion placing a local lune frame at a chain junction.

    A counter-clockwise link is a plain rotation; a clockwise one is mirrored
    first so that the local counter-clockwise plan runs backwards in turn.
    """
    offset = local_source.center - local_pivot
    if angle > 0:
        turn = (source.center - pivot).angle() - offset.angle()
        return Isometry(Isometry.ROTATION, pivot, turn, local_pivot)
    turn = (source.center - pivot).angle() - Point(-offset.x, offset.y).angle()
    return Isometry.reflection_then_rotation(local_pivot, pivot, turn)


def _slide_to(pose: ArcPose, end_angle: Any, use_head: bool) -> MotionStep:
    circle = pose.circle
    current = circle.angle_of(pose.head if use_head else pose.tail)
    return MotionStep.slide(pose, normalize_angle(end_angle - current), LINK)


@frozen
class TheoremOneChain:
    """A motion between two congruent arc positions through a chain of unit
    circles.

    Attributes:
        circles (`~typing.Tuple`\\[`~geometry.primitives.Circle`, ...]): K₀, ..., K_m.
        junctions (`~typing.Tuple`\\[`~geometry.primitives.Point`, ...]): M_i ∈ K_{i−1} ∩ K_i.
        link_angles (`~typing.Tuple`): signed rotation angle h_i about M_i
            carrying K_{i−1} onto K_i.
        link_plans (`~typing.Tuple`\\[`~motion.plan.MotionPlan`, ...]): the
            transported plan of each link.
        plan (`~motion.plan.MotionPlan`): the complete motion, connecting
            slides included.
        budget: the area allowance per link.
    """

    circles: Tuple[Circle, ...]
    junctions: Tuple[Point, ...]
    link_angles: Tuple[Any, ...]
    link_plans: Tuple[MotionPlan, ...]
    plan: MotionPlan
    budget: Any

    def __init__(
        self,
        circles: Sequence[Circle],
        junctions: Sequence[Point],
        link_angles: Sequence[Any],
        link_plans: Sequence[MotionPlan],
        plan: MotionPlan,
        budget: Any,
    ):
        assert len(junctions) == len(link_angles) == len(link_plans) == max(0, len(circles) - 1)
        self.circles = tuple(circles)
        self.junctions = tuple(junctions)
        self.link_angles = tuple(link_angles)
        self.link_plans = tuple(link_plans)
        self.plan = plan
        self.budget = budget

    @property
    def links(self) -> int:
        return len(self.link_plans)

    @property
    def link_bounds(self) -> List[Any]:
        return [plan.total_swept_bound for plan in self.link_plans]

    @property
    def within_budget(self) -> List[bool]:
        return [bound < self.budget for bound in self.link_bounds]

    @property
    def total_swept_bound(self) -> Any:
        return self.plan.total_swept_bound

    @memoized_parameterless_method
    def to_json(self) -> dict:
        precision = self.plan.steps[0].center.precision
        render = precision.render
        return {
            "circles": [circle.to_json() for circle in self.circles],
            "junctions": [point.to_json() for point in self.junctions],
            "link_angles": [render(angle) for angle in self.link_angles],
            "link_bounds": [render(bound) for bound in self.link_bounds],
            "within_budget": self.within_budget,
            "budget": render(self.budget),
            "total_swept_bound": render(self.total_swept_bound),
            "steps": len(self.plan.steps),
        }

    def dumps(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_json(), indent=indent)

    def __repr__(self) -> str:
        return f"TheoremOneChain({self.links} links, {len(self.plan.steps)} steps)"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TheoremOneChain) and self.circles == other.circles and self.plan == other.plan

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash((self.circles, self.plan))


def chain_circles(start: Circle, end: Circle) -> List[Circle]:
    """The shortest chain of unit circles from `start` to `end` with centers on
    the segment between their centers, consecutive centers min(1.9, remaining)
    apart."""
    precision = start.precision
    spacing = precision.scalar(CHAIN_SPACING)
    delta = end.center - start.center
    distance = delta.norm()
    if distance <= precision.tolerance:
        return [start]
    links = int(precision.context.ceil(distance / spacing))
    direction = delta.scaled(1 / distance)
    circles = [start]
    for i in range(1, links):
        circles.append(Circle(start.center + direction.scaled(spacing * i), 1))
    circles.append(end)
    return circles


def compose_theorem1(
    start: ArcPose,
    end: ArcPose,
    per_step_budget: Real,
    eps: Real = LINK_EPS,
    n: int = LINK_LEVELS,
    max_piece: Real = MAX_PIECE,
) -> TheoremOneChain:
    """Moves an arc between two congruent positions.

    The arc slides along K₀ until an endpoint reaches M₁, the common point of
    K₀ and K₁ with the larger y, is carried onto K₁ by a rotation plan about
    M₁, slides along K₁ to M₂, and so on; a last slide along K_m reaches
    `end`. Positions on one circle are the degenerate case of a single
    rotation instance: the rotation about the shared center is a slide, so
    they are joined by one SLIDE step with zero swept area and an empty
    chain of link scenes.

    Parameters:
        start: the initial position.
        end: the final position, of the same length.
        per_step_budget: area allowance per link; recorded, not enforced.
        eps: tip radius of the link scenes.
        n: level count of the link scenes.
        max_piece: largest angle handled by a single link scene.

    Returns:
        The chain.

    Raises:
        DegenerateChainError: if the two arcs differ in length.
    """
    precision = start.precision
    tolerance = PLAN_SLACK * precision.tolerance
    budget = precision.scalar(per_step_budget)
    if abs(start.length - end.length) > tolerance:
        raise DegenerateChainError(f"arcs of lengths {start.length} and {end.length} are not congruent")
    circles = chain_circles(start.circle, end.circle)
    if len(circles) == 1:
        slide = _slide_to(start, start.circle.angle_of(end.head), True)
        logger.info("start and end share %s; a single slide joins them", start.circle)
        return TheoremOneChain(circles, [], [], [], MotionPlan([slide]), budget)
    steps: List[MotionStep] = []
    junctions: List[Point] = []
    angles: List[Any] = []
    link_plans: List[MotionPlan] = []
    pose = start
    for source, target in zip(circles, circles[1:]):
        junction = max(circle_circle_intersection(source, target), key=lambda p: (p.y, p.x))
        angle = rotation_angle(junction, source, target)
        local = theorem2_plan(abs(angle), eps, n, start.length, max_piece, precision)
        local_start = local.start_pose
        isometry = _link_isometry(junction, source, angle, local_start.circle, local_start.head)
        plan = local.transformed(isometry)
        steps.append(_slide_to(pose, source.angle_of(junction), angle > 0))
        steps.extend(plan.steps)
        pose = steps[-1].end_pose
        junctions.append(junction)
        angles.append(angle)
        link_plans.append(plan)
        logger.debug("link at %s turns by %s", junction, precision.context.nstr(angle, 8))
    steps.append(_slide_to(pose, pose.circle.angle_of(end.head), True))
    chain = TheoremOneChain(circles, junctions, angles, link_plans, MotionPlan(steps), budget)
    logger.info("built %s", chain)
    return chain
