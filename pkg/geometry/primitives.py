# File name: geometry/primitives.py

"""Planar primitives in a configurable precision: points, circles, directed
arcs and the rigid motions acting on them, together with the horn-area formula."""

from __future__ import annotations

from typing import Any, List, Optional, Tuple

from kakeya_utils import frozen, memoized_parameterless_method

from geometry.scalar import *


class GeometryError(Exception):
    """Base class of the geometric failures raised by this module."""


class IdenticalCirclesError(GeometryError):
    """Raised when intersecting a circle with itself."""


class NegativeInputError(GeometryError):
    """Raised when a length or angle that must be non-negative is negative."""


class OutOfRangeError(GeometryError):
    """Raised when a parameter lies outside its admissible interval."""


class DegenerateError(GeometryError):
    """Raised when two points that must differ coincide."""


@frozen
class Point:
    """An immutable point of the plane.

    Attributes:
        x: the first Cartesian coordinate.
        y: the second Cartesian coordinate.
    """

    x: Any
    y: Any

    def __init__(self, x: Any, y: Any):
        """Initializes a `Point` from two scalars of one precision profile.

        Parameters:
            x: first coordinate.
            y: second coordinate.
        """
        assert x.context is y.context, "point coordinates must share a precision profile"
        self.x = x
        self.y = y

    @staticmethod
    def of(precision: Precision, x: Real, y: Real) -> Point:
        return Point(precision.scalar(x), precision.scalar(y))

    @property
    def precision(self) -> Precision:
        return Precision.of(self.x)

    @property
    def context(self) -> Any:
        return self.x.context

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Point:
        return Point(-self.x, -self.y)

    def scaled(self, factor: Any) -> Point:
        return Point(self.x * factor, self.y * factor)

    def dot(self, other: Point) -> Any:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Point) -> Any:
        return self.x * other.y - self.y * other.x

    def norm(self) -> Any:
        return self.context.hypot(self.x, self.y)

    def angle(self) -> Any:
        """The polar angle of this point seen as a vector, in (−π, π]."""
        return self.context.atan2(self.y, self.x)

    def distance_to(self, other: Point) -> Any:
        return (self - other).norm()

    def is_close(self, other: Point, tolerance: Optional[Any] = None) -> bool:
        if tolerance is None:
            tolerance = self.precision.tolerance
        return self.distance_to(other) <= tolerance

    def to_json(self) -> List[str]:
        precision = self.precision
        return [precision.render(self.x), precision.render(self.y)]

    def __repr__(self) -> str:
        return f"({self.context.nstr(self.x, 12)}, {self.context.nstr(self.y, 12)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Point) and self.x == other.x and self.y == other.y

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash((self.x, self.y))


def unit_vector(angle: Any) -> Point:
    """The point at distance 1 from the origin in the direction of the given angle."""
    context = angle.context
    return Point(context.cos(angle), context.sin(angle))


def rotate_point(p: Point, pivot: Point, angle: Any) -> Point:
    """Rotates a point counter-clockwise about a pivot.

    Parameters:
        p: point to rotate.
        pivot: fixed point of the rotation.
        angle: rotation angle in radians.

    Returns:
        The rotated point.
    """
    context = p.context
    cosine = context.cos(angle)
    sine = context.sin(angle)
    offset = p - pivot
    return Point(pivot.x + cosine * offset.x - sine * offset.y, pivot.y + sine * offset.x + cosine * offset.y)


def signed_angle(u: Point, v: Point) -> Any:
    """The signed angle in (−π, π] turning vector `u` into the direction of `v`."""
    return u.context.atan2(u.cross(v), u.dot(v))


def orientation(a: Point, b: Point, c: Point) -> Any:
    """Twice the signed area of the triangle abc; positive when abc is counter-clockwise."""
    return (b - a).cross(c - a)


@frozen
class Circle:
    """An immutable circle.

    Attributes:
        center (`Point`): the center.
        radius: the radius, a positive scalar.
    """

    center: Point
    radius: Any

    def __init__(self, center: Point, radius: Any):
        """Initializes a `Circle`.

        Parameters:
            center: the center.
            radius: the radius, in the center's precision profile.
        """
        if radius <= 0:
            raise NegativeInputError(f"circle radius must be positive, got {radius}")
        self.center = center
        self.radius = center.x.context.mpf(radius)

    @property
    def precision(self) -> Precision:
        return self.center.precision

    def point_at(self, angle: Any) -> Point:
        return self.center + unit_vector(angle).scaled(self.radius)

    def angle_of(self, p: Point) -> Any:
        return (p - self.center).angle()

    def power(self, p: Point) -> Any:
        """The power of a point: negative inside, zero on the circle, positive outside."""
        offset = p - self.center
        return offset.dot(offset) - self.radius * self.radius

    def distance_from(self, p: Point) -> Any:
        """The unsigned distance from a point to the circle line."""
        return abs(p.distance_to(self.center) - self.radius)

    def contains(self, p: Point, tolerance: Optional[Any] = None) -> bool:
        """Whether a point lies on the circle within tolerance."""
        if tolerance is None:
            tolerance = self.precision.tolerance
        return self.distance_from(p) <= tolerance

    def encloses(self, p: Point, tolerance: Optional[Any] = None) -> bool:
        """Whether a point lies in the closed disc within tolerance."""
        if tolerance is None:
            tolerance = self.precision.tolerance
        return p.distance_to(self.center) <= self.radius + tolerance

    def is_close(self, other: Circle, tolerance: Optional[Any] = None) -> bool:
        if tolerance is None:
            tolerance = self.precision.tolerance
        return self.center.is_close(other.center, tolerance) and abs(self.radius - other.radius) <= tolerance

    def to_json(self) -> dict:
        return {"center": self.center.to_json(), "radius": self.precision.render(self.radius)}

    def __repr__(self) -> str:
        return f"Circle({self.center}, {self.center.context.nstr(self.radius, 12)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Circle) and self.center == other.center and self.radius == other.radius

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash((self.center, self.radius))


@frozen
class DirectedArc:
    """An immutable arc of a circle traversed from a start angle by a signed sweep.

    Attributes:
        circle (`Circle`): the supporting circle.
        start_angle: polar angle of the start point about the center.
        sweep: signed angular extent, counter-clockwise when positive,
            with absolute value below 2π.
    """

    circle: Circle
    start_angle: Any
    sweep: Any

    def __init__(self, circle: Circle, start_angle: Any, sweep: Any):
        """Initializes a `DirectedArc`.

        Parameters:
            circle: the supporting circle.
            start_angle: polar angle of the start point.
            sweep: signed angular extent.
        """
        context = circle.center.context
        if abs(sweep) >= 2 * context.pi:
            raise OutOfRangeError(f"arc sweep must be below a full turn, got {sweep}")
        self.circle = circle
        self.start_angle = normalize_angle(context.mpf(start_angle))
        self.sweep = context.mpf(sweep)

    @staticmethod
    def between(circle: Circle, start: Point, end: Point, positive: bool) -> DirectedArc:
        """The arc of a circle from one point to another in the given sense.

        Parameters:
            circle: supporting circle; both points are projected onto it.
            start: start point.
            end: end point.
            positive: ``True`` for counter-clockwise travel.

        Returns:
            The arc, with sweep in [0, 2π) or (−2π, 0].
        """
        context = circle.center.context
        start_angle = circle.angle_of(start)
        sweep = normalize_angle(circle.angle_of(end) - start_angle)
        if positive and sweep < 0:
            sweep += 2 * context.pi
        elif not positive and sweep > 0:
            sweep -= 2 * context.pi
        return DirectedArc(circle, start_angle, sweep)

    @property
    def precision(self) -> Precision:
        return self.circle.precision

    @property
    @memoized_parameterless_method
    def start(self) -> Point:
        return self.circle.point_at(self.start_angle)

    @property
    @memoized_parameterless_method
    def end(self) -> Point:
        return self.circle.point_at(self.start_angle + self.sweep)

    @property
    def length(self) -> Any:
        return self.circle.radius * abs(self.sweep)

    @property
    def chord(self) -> Any:
        return self.start.distance_to(self.end)

    def reversed(self) -> DirectedArc:
        """The same point set traversed from the other end."""
        return DirectedArc(self.circle, self.start_angle + self.sweep, -self.sweep)

    def contains_angle(self, angle: Any, slack: Optional[Any] = None) -> bool:
        """Whether a polar angle about the center falls within the arc.

        Parameters:
            angle: polar angle to test.
            slack: angular tolerance; defaults to the profile tolerance
                divided by the radius.
        """
        context = self.circle.center.context
        if slack is None:
            slack = self.precision.tolerance / self.circle.radius
        offset = angle - self.start_angle
        if self.sweep < 0:
            offset = -offset
        offset -= 2 * context.pi * context.floor(offset / (2 * context.pi))
        extent = abs(self.sweep)
        return offset <= extent + slack or offset >= 2 * context.pi - slack

    def contains(self, p: Point, tolerance: Optional[Any] = None) -> bool:
        """Whether a point lies on the arc within tolerance."""
        if tolerance is None:
            tolerance = self.precision.tolerance
        return self.circle.contains(p, tolerance) and self.contains_angle(
            self.circle.angle_of(p), tolerance / self.circle.radius
        )

    def bounding_box(self) -> Tuple[Any, Any, Any, Any]:
        """The exact axis-aligned bounding box ``(xmin, ymin, xmax, ymax)``."""
        context = self.circle.center.context
        points = [self.start, self.end]
        for quarter in range(-4, 5):
            angle = quarter * context.pi / 2
            if self.contains_angle(angle, context.mpf(0)):
                points.append(self.circle.point_at(angle))
        xs = [point.x for point in points]
        ys = [point.y for point in points]
        return min(xs), min(ys), max(xs), max(ys)

    def is_close(self, other: DirectedArc, tolerance: Optional[Any] = None) -> bool:
        """Whether two arcs have close circles and close endpoints in the same order."""
        if tolerance is None:
            tolerance = self.precision.tolerance
        return (
            self.circle.is_close(other.circle, tolerance)
            and self.start.is_close(other.start, tolerance)
            and self.end.is_close(other.end, tolerance)
        )

    def to_json(self) -> dict:
        precision = self.precision
        return {
            "circle": self.circle.to_json(),
            "start_angle": precision.render(self.start_angle),
            "sweep": precision.render(self.sweep),
            "start": self.start.to_json(),
            "end": self.end.to_json(),
        }

    def __repr__(self) -> str:
        context = self.circle.center.context
        return f"Arc({self.circle}, {context.nstr(self.start_angle, 12)}, {context.nstr(self.sweep, 12)})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DirectedArc)
            and self.circle == other.circle
            and self.start_angle == other.start_angle
            and self.sweep == other.sweep
        )

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash((self.circle, self.start_angle, self.sweep))


@frozen
class Isometry:
    """An immutable rigid motion of the plane, either a rotation or a
    reflection in the y axis followed by a rotation.

    The motion maps a point p to ``center + R(angle)·(σ(p) − σ(source))``,
    where σ is the identity for a ``'ROTATION'`` and x ↦ −x for a
    ``'REFLECT_Y_THEN_ROTATE'``. With ``source == center`` a rotation is the
    rotation about `center` by `angle`.

    Attributes:
        kind (`str`): ``'ROTATION'`` or ``'REFLECT_Y_THEN_ROTATE'``.
        center (`Point`): image of `source`.
        angle: rotation angle applied after the optional reflection.
        source (`Point`): the point sent to `center`.
    """

    kind: str
    center: Point
    angle: Any
    source: Point

    ROTATION = "ROTATION"
    REFLECT_Y_THEN_ROTATE = "REFLECT_Y_THEN_ROTATE"

    def __init__(self, kind: str, center: Point, angle: Any, source: Optional[Point] = None):
        """Initializes an `Isometry`.

        Parameters:
            kind: ``'ROTATION'`` or ``'REFLECT_Y_THEN_ROTATE'``.
            center: image of `source`.
            angle: rotation angle.
            source: the point sent to `center`; defaults to `center` itself.
        """
        assert kind in (Isometry.ROTATION, Isometry.REFLECT_Y_THEN_ROTATE)
        self.kind = kind
        self.center = center
        self.angle = center.context.mpf(angle)
        self.source = center if source is None else source

    @staticmethod
    def rotation(center: Point, angle: Any) -> Isometry:
        return Isometry(Isometry.ROTATION, center, angle)

    @staticmethod
    def reflection_then_rotation(source: Point, target: Point, angle: Any) -> Isometry:
        """The reflection in the y axis followed by the rotation that sends the
        mirror image of `source` to `target` and turns directions by `angle`."""
        return Isometry(Isometry.REFLECT_Y_THEN_ROTATE, target, angle, source)

    @property
    def reverses_orientation(self) -> bool:
        return self.kind == Isometry.REFLECT_Y_THEN_ROTATE

    def _mirror(self, p: Point) -> Point:
        return Point(-p.x, p.y) if self.reverses_orientation else p

    def apply(self, p: Point) -> Point:
        offset = self._mirror(p) - self._mirror(self.source)
        context = offset.context
        cosine = context.cos(self.angle)
        sine = context.sin(self.angle)
        return Point(
            self.center.x + cosine * offset.x - sine * offset.y, self.center.y + sine * offset.x + cosine * offset.y
        )

    def apply_angle(self, angle: Any) -> Any:
        """The image of a direction given by its polar angle."""
        context = angle.context
        mirrored = context.pi - angle if self.reverses_orientation else angle
        return normalize_angle(mirrored + self.angle)

    def apply_circle(self, circle: Circle) -> Circle:
        return Circle(self.apply(circle.center), circle.radius)

    def apply_arc(self, arc: DirectedArc) -> DirectedArc:
        sweep = -arc.sweep if self.reverses_orientation else arc.sweep
        return DirectedArc(self.apply_circle(arc.circle), self.apply_angle(arc.start_angle), sweep)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "center": self.center.to_json(),
            "angle": self.center.precision.render(self.angle),
            "source": self.source.to_json(),
        }

    def __repr__(self) -> str:
        return f"{self.kind}({self.source} -> {self.center}, {self.center.context.nstr(self.angle, 12)})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Isometry)
            and self.kind == other.kind
            and self.center == other.center
            and self.angle == other.angle
            and self.source == other.source
        )

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash(str(self))


def rotation_angle(pivot: Point, source: Circle, target: Circle) -> Any:
    """The signed angle of the rotation about `pivot` carrying `source` onto
    `target`, measured as the angle from center(source) to center(target)
    seen from the pivot."""
    return signed_angle(source.center - pivot, target.center - pivot)


def circle_circle_intersection(a: Circle, b: Circle) -> List[Point]:
    """Intersects two circles.

    Parameters:
        a: first circle.
        b: second circle.

    Returns:
        Zero, one or two points. With two points, the one to the left of the
        directed line from the center of `a` to the center of `b` comes first.
    """
    precision = a.precision
    tolerance = precision.tolerance
    context = precision.context
    delta = b.center - a.center
    d = delta.norm()
    if d <= tolerance and abs(a.radius - b.radius) <= tolerance:
        raise IdenticalCirclesError(f"cannot intersect {a} with itself")
    if d <= tolerance:
        return []
    ra, rb = a.radius, b.radius
    product = (ra + rb - d) * (ra + rb + d) * (d - ra + rb) * (d + ra - rb)
    along = (d * d + (ra - rb) * (ra + rb)) / (2 * d)
    base = a.center + delta.scaled(along / d)
    if product < 0:
        # tangent within tolerance, or genuinely apart
        if min(abs(ra + rb - d), abs(abs(ra - rb) - d)) <= tolerance:
            return [base]
        return []
    height = context.sqrt(product) / (2 * d)
    if 2 * height <= tolerance:
        return [base]
    normal = Point(-delta.y, delta.x).scaled(height / d)
    return [base + normal, base - normal]


def horn_area(chord: Any, angle: Any) -> Any:
    """The area swept by an arc rotated about one endpoint, |AB|²·α/2.

    Parameters:
        chord: distance between the arc endpoints.
        angle: rotation angle, non-negative.

    Returns:
        The horn area.
    """
    if chord < 0 or angle < 0:
        raise NegativeInputError(f"horn area needs non-negative chord and angle, got {chord}, {angle}")
    return chord * chord * angle / 2


def arc_point_at_fraction(arc: DirectedArc, x: Real) -> Point:
    """The point splitting a directed arc in proportion x : (1 − x) by length.

    Parameters:
        arc: the arc.
        x: fraction in [0, 1].

    Returns:
        The point at arc length x·length from the start.
    """
    fraction = arc.precision.scalar(x)
    if fraction < 0 or fraction > 1:
        raise OutOfRangeError(f"arc fraction must lie in [0, 1], got {x}")
    if fraction == 0:
        return arc.start
    if fraction == 1:
        return arc.end
    return arc.circle.point_at(arc.start_angle + fraction * arc.sweep)
