# File name: sprouting/horns.py

"""Horn shaped domains: the regions swept when an arc turns about one of its
endpoints, and the horns H_iˣ of a sprouting scene."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional, Tuple

from kakeya_utils import frozen

from geometry.scalar import *
from geometry.primitives import *
from sprouting.config import DyadicIndex
from sprouting.scene import Index, IndexOutOfRangeError, SproutScene


@frozen
class HornRegion:
    """A horn with vertex V between two circles through V of equal radius.

    A point p at distance r from V belongs to the horn iff the direction of
    p − V lies between the directions of the chords of length r from V on the
    two circles, and either r ≤ `reach` or p lies in the optional cap disc.

    Attributes:
        vertex (`~geometry.primitives.Point`): the common point V.
        from_circle (`~geometry.primitives.Circle`): circle B bounding the
            horn on one side.
        to_circle (`~geometry.primitives.Circle`): circle A, the image of B
            under the rotation about V by `sweep`.
        side (`int`): +1 or −1, the side of the radius through V on which the
            chords of B bounding the horn lie.
        sweep: signed rotation angle carrying B onto A about V.
        reach: largest distance from V covered without the cap.
        cap_center (`~typing.Optional`\\[`~geometry.primitives.Point`]):
            center of the cap disc, if any.
        cap_radius: radius of the cap disc, if any.
        boundary (`tuple`): the bounding arcs, for drawing and bounding boxes.
    """

    vertex: Point
    from_circle: Circle
    to_circle: Circle
    side: int
    sweep: Any
    reach: Any
    cap_center: Optional[Point]
    cap_radius: Any
    boundary: Tuple[DirectedArc, ...]

    def __init__(
        self,
        vertex: Point,
        from_circle: Circle,
        to_circle: Circle,
        toward: Point,
        reach: Any,
        boundary: Tuple[DirectedArc, ...],
        cap_center: Optional[Point] = None,
        cap_radius: Any = None,
    ):
        """Initializes a `HornRegion`.

        Parameters:
            vertex: the common point of the two circles.
            from_circle: the first circle.
            to_circle: the second circle, of the same radius.
            toward: a point of `from_circle` other than the vertex, on the
                branch of the first circle that bounds the horn.
            reach: distance cut-off from the vertex.
            boundary: bounding arcs.
            cap_center: optional cap disc center.
            cap_radius: optional cap disc radius.
        """
        assert abs(from_circle.radius - to_circle.radius) <= vertex.precision.tolerance
        self.vertex = vertex
        self.from_circle = from_circle
        self.to_circle = to_circle
        self.sweep = rotation_angle(vertex, from_circle, to_circle)
        self.reach = reach
        self.cap_center = cap_center
        self.cap_radius = cap_radius
        self.boundary = tuple(boundary)
        direction = (toward - vertex).angle()
        distance = toward.distance_to(vertex)
        plus = abs(normalize_angle(direction - self._chord_direction(distance, 1)))
        minus = abs(normalize_angle(direction - self._chord_direction(distance, -1)))
        self.side = 1 if plus <= minus else -1

    @staticmethod
    def swept(pivot: Point, arc: DirectedArc, angle: Any) -> HornRegion:
        """The horn swept by an arc turning about its endpoint `pivot` by `angle`."""
        other = arc.end if pivot.is_close(arc.start) else arc.start
        rotation = Isometry.rotation(pivot, angle)
        target = rotation.apply_circle(arc.circle)
        moved = rotation.apply_arc(arc)
        trace = DirectedArc(Circle(pivot, pivot.distance_to(other)), (other - pivot).angle(), angle)
        return HornRegion(pivot, arc.circle, target, other, arc.chord, (arc, moved, trace))

    def _chord_direction(self, r: Any, side: Optional[int] = None) -> Any:
        context = r.context
        if side is None:
            side = self.side
        center = self.from_circle.center
        ratio = min(r / (2 * self.from_circle.radius), context.mpf(1))
        return (self.vertex - center).angle() + side * (context.pi / 2 + context.asin(ratio))

    @property
    def base_direction(self) -> Any:
        """Direction of the degenerate chord of length 0, the tangent at V."""
        context = self.vertex.context
        return (self.vertex - self.from_circle.center).angle() + self.side * context.pi / 2

    def bounding_box(self) -> Tuple[Any, Any, Any, Any]:
        boxes = [arc.bounding_box() for arc in self.boundary]
        return (
            min(box[0] for box in boxes),
            min(box[1] for box in boxes),
            max(box[2] for box in boxes),
            max(box[3] for box in boxes),
        )

    def contains(self, p: Point, tolerance: Optional[Any] = None) -> bool:
        """Closed membership: boundary points within tolerance count as inside."""
        if tolerance is None:
            tolerance = self.vertex.precision.tolerance
        offset = p - self.vertex
        r = offset.norm()
        if r <= tolerance:
            return True
        if r > self.reach + tolerance:
            if self.cap_center is None or p.distance_to(self.cap_center) > self.cap_radius + tolerance:
                return False
        if r > 2 * self.from_circle.radius + tolerance:
            return False
        delta = normalize_angle(offset.angle() - self._chord_direction(r))
        slack = tolerance / r
        low, high = (0, self.sweep) if self.sweep >= 0 else (self.sweep, 0)
        return low - slack <= delta <= high + slack

    def __repr__(self) -> str:
        context = self.vertex.context
        return f"HornRegion(vertex={self.vertex}, sweep={context.nstr(self.sweep, 8)})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HornRegion)
            and self.vertex == other.vertex
            and self.from_circle == other.from_circle
            and self.to_circle == other.to_circle
            and self.reach == other.reach
            and self.cap_center == other.cap_center
        )

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash(repr(self))


def _short_arc(circle: Circle, start: Point, end: Point) -> DirectedArc:
    sweep = normalize_angle(circle.angle_of(end) - circle.angle_of(start))
    return DirectedArc.between(circle, start, end, positive=sweep >= 0)


def horn_region(scene: SproutScene, i: int, x: Index) -> HornRegion:
    """The horn H_iˣ bounded by the arc from P_x to C_iˣ of K₀ˣ, the arc from
    P_{x+2⁻ⁱ} to C_iˣ of K₁^{x+2⁻ⁱ}, and the tip arc between P_x and P_{x+2⁻ⁱ}.

    Parameters:
        scene: a scene built at least to level `i`.
        i: level.
        x: index in D_i with x < 1.

    Returns:
        The horn; H₀⁰ is the tip region Δ(h) of the lune.
    """
    index = DyadicIndex.of(x)
    if not 0 <= i <= scene.level or index.level > i or index.value >= 1:
        raise IndexOutOfRangeError(f"no horn H_{i}^{index} in {scene}")
    frame = scene.frame
    step = Fraction(1, 2**i)
    right = index.shifted(step)
    vertex = scene.c(i, index)
    from_circle = scene.k0(index)
    to_circle = scene.k1(right)
    near = scene.tip_point(index)
    far = scene.tip_point(right)
    tip = frame.tip_arc
    boundary = (
        _short_arc(from_circle, vertex, near),
        _short_arc(to_circle, vertex, far),
        DirectedArc(
            tip.circle,
            tip.start_angle + tip.sweep * frame.precision.scalar(index.value),
            tip.sweep * frame.precision.scalar(step),
        ),
    )
    return HornRegion(vertex, from_circle, to_circle, near, vertex.distance_to(frame.M), boundary, frame.M, frame.eps)


def point_in_horn(p: Point, region: HornRegion) -> bool:
    """Whether a point lies in the closed horn."""
    return region.contains(p)
