# File name: geometry/lune.py

"""The two unit circles crossing at angle h, their lunes, and the arcs the
sprouting construction hangs from them, all in a frame anchored at the upper
crossing point M."""

from __future__ import annotations

from typing import Any, Optional

from kakeya_utils import frozen

from geometry.scalar import *
from geometry.primitives import *


@frozen
class LuneFrame:
    """The unit circles K₀, K₁ with centers (∓sin(h/2), 0) in global
    coordinates, expressed relative to their upper intersection M.

    Attributes:
        h: angle between the circles at M.
        eps: radius of the tip arc about M.
        precision (`~geometry.scalar.Precision`): profile of every coordinate.
        anchor (`~geometry.primitives.Point`): global position of M.
        M (`~geometry.primitives.Point`): the upper crossing point (local origin).
        N (`~geometry.primitives.Point`): the lower crossing point.
        origin (`~geometry.primitives.Point`): the global origin, midway
            between the two centers.
        K0 (`~geometry.primitives.Circle`): the left-centered unit circle.
        K1 (`~geometry.primitives.Circle`): the right-centered unit circle.
        tip_arc (`~geometry.primitives.DirectedArc`): the radius-`eps` arc
            about M inside the left lune, from its point P₀ on K₀ to its point
            P₁ on K₁.
    """

    h: Any
    eps: Any
    precision: Precision
    anchor: Point
    M: Point
    N: Point
    origin: Point
    K0: Circle
    K1: Circle
    tip_arc: DirectedArc

    def __init__(self, h: Real, eps: Real, precision: Precision):
        """Initializes a `LuneFrame`.

        Parameters:
            h: crossing angle, in (0, π).
            eps: tip arc radius, positive and below 2.
            precision: profile for all coordinates.
        """
        context = precision.context
        self.precision = precision
        self.h = precision.scalar(h)
        self.eps = precision.scalar(eps)
        assert 0 < self.h < context.pi, "crossing angle must lie in (0, π)"
        assert 0 < self.eps < 2, "tip radius must lie in (0, 2)"
        half_sin = context.sin(self.h / 2)
        half_cos = context.cos(self.h / 2)
        zero = context.mpf(0)
        self.anchor = Point(zero, half_cos)
        self.M = Point(zero, zero)
        self.N = Point(zero, -2 * half_cos)
        self.origin = Point(zero, -half_cos)
        self.K0 = Circle(Point(-half_sin, -half_cos), 1)
        self.K1 = Circle(Point(half_sin, -half_cos), 1)
        self.tip_arc = DirectedArc(
            Circle(self.M, self.eps), context.pi - self.h / 2 + context.asin(self.eps / 2), self.h
        )

    def tip_point(self, x: Real) -> Point:
        """P_x: the point of the tip arc at fraction x of its length from P₀."""
        return arc_point_at_fraction(self.tip_arc, x)

    def ring(self, radius: Any) -> Circle:
        return Circle(self.M, radius)

    def ring_arc(self, radius: Any) -> DirectedArc:
        """The arc of the circle of the given radius about M lying in the right
        lune, from its point on K₀ to its point on K₁."""
        context = self.precision.context
        radius = self.precision.scalar(radius)
        assert 0 < radius <= 2
        return DirectedArc(self.ring(radius), -self.h / 2 - context.asin(radius / 2), self.h)

    def in_lune0(self, p: Point, tolerance: Optional[Any] = None) -> bool:
        """Closed left lune: inside K₀ and not strictly inside K₁."""
        if tolerance is None:
            tolerance = self.precision.tolerance
        return self.K0.encloses(p, tolerance) and p.distance_to(self.K1.center) >= 1 - tolerance

    def in_lune1(self, p: Point, tolerance: Optional[Any] = None) -> bool:
        """Closed right lune: inside K₁ and not strictly inside K₀."""
        if tolerance is None:
            tolerance = self.precision.tolerance
        return self.K1.encloses(p, tolerance) and p.distance_to(self.K0.center) >= 1 - tolerance

    def to_global(self, p: Point) -> Point:
        return p + self.anchor

    def __repr__(self) -> str:
        context = self.precision.context
        return f"LuneFrame(h={context.nstr(self.h, 8)}, eps={context.nstr(self.eps, 8)}, {self.precision})"
