# File name: sprouting/scene.py

"""The sprouting construction: unit circles K₀ˣ, K₁ˣ and junction points C_iˣ
over the dyadic levels 0..n, built level by level from the two circles
crossing at the lune tip M."""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from kakeya_utils import frozen, frozendict

from geometry.scalar import *
from geometry.primitives import *
from geometry.lune import LuneFrame
from lemmas.reports import LemmaReport
from lemmas.oracles import POSITIVE, NEGATIVE, NoSolutionError, rotate_circle_to_contain
from sprouting.config import *

logger = logging.getLogger(__name__)

#: Multiple of the profile tolerance allowed for a point to count as lying on a curve.
SLACK = 16

Index = Union[DyadicIndex, Fraction, int, str]


class ConstructionFailedError(Exception):
    """Raised when a sprouting step cannot be realized.

    Attributes:
        level (`int`): the level being built.
        index (`DyadicIndex`): the dyadic index whose step failed.
        invariant (`str`): the failing step or invariant.
        partial_scene (`SproutScene`): the scene as built up to the last
            completed level.
    """

    def __init__(self, level: int, index: DyadicIndex, invariant: str, partial_scene: SproutScene, detail: str = ""):
        message = f"construction failed at level {level}, x={index}: {invariant}"
        super().__init__(message + (f" ({detail})" if detail else ""))
        self.level = level
        self.index = index
        self.invariant = invariant
        self.partial_scene = partial_scene


class IndexOutOfRangeError(LookupError):
    """Raised when a scene is asked for a level or dyadic index it does not hold."""


@frozen
class SproutScene:
    """An immutable sprouting configuration.

    Attributes:
        config (`~sprouting.config.SproutConfig`): construction parameters.
        frame (`~geometry.lune.LuneFrame`): the lune tip frame.
        level (`int`): number of completed levels; equals ``config.n`` for a
            complete scene.
        radii (`tuple`): the ring radii r_i = i·R/n, i = 0..n.
        A (`tuple`): pairs (A_i⁰, A_i¹) of ring arc endpoints, i = 0..n.
        P (`~typing.Mapping`\\[`DyadicIndex`, `Point`]): tip points P_x, x ∈ D_n.
        K0 (`~typing.Mapping`\\[`DyadicIndex`, `Circle`]): circles K₀ˣ, x < 1.
        K1 (`~typing.Mapping`\\[`DyadicIndex`, `Circle`]): circles K₁ˣ, x > 0.
        C (`~typing.Mapping`\\[`tuple`, `Point`]): junction points C_iˣ keyed
            by (i, x) for x ∈ D_i, x < 1.
    """

    config: SproutConfig
    frame: LuneFrame
    level: int
    radii: Tuple[Any, ...]
    A: Tuple[Tuple[Point, Point], ...]
    P: Mapping[DyadicIndex, Point]
    K0: Mapping[DyadicIndex, Circle]
    K1: Mapping[DyadicIndex, Circle]
    C: Mapping[Tuple[int, DyadicIndex], Point]

    def __init__(
        self,
        config: SproutConfig,
        frame: LuneFrame,
        level: int,
        radii: Tuple[Any, ...],
        A: Tuple[Tuple[Point, Point], ...],
        P: Mapping[DyadicIndex, Point],
        K0: Mapping[DyadicIndex, Circle],
        K1: Mapping[DyadicIndex, Circle],
        C: Mapping[Tuple[int, DyadicIndex], Point],
    ):
        assert 0 <= level <= config.n
        self.config = config
        self.frame = frame
        self.level = level
        self.radii = tuple(radii)
        self.A = tuple(A)
        self.P = frozendict(P)
        self.K0 = frozendict(K0)
        self.K1 = frozendict(K1)
        self.C = frozendict(C)

    @property
    def precision(self) -> Precision:
        return self.config.precision

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def complete(self) -> bool:
        return self.level == self.config.n

    @property
    def M(self) -> Point:
        return self.frame.M

    @property
    def N(self) -> Point:
        return self.frame.N

    @property
    def tip_arc(self) -> DirectedArc:
        return self.frame.tip_arc

    def tip_point(self, x: Index) -> Point:
        index = DyadicIndex.of(x)
        if index not in self.P:
            raise IndexOutOfRangeError(f"no tip point P_{index} at level {self.config.n}")
        return self.P[index]

    def k0(self, x: Index) -> Circle:
        index = DyadicIndex.of(x)
        if index not in self.K0:
            raise IndexOutOfRangeError(f"no circle K0^{index}")
        return self.K0[index]

    def k1(self, x: Index) -> Circle:
        index = DyadicIndex.of(x)
        if index not in self.K1:
            raise IndexOutOfRangeError(f"no circle K1^{index}")
        return self.K1[index]

    def c(self, i: int, x: Index) -> Point:
        index = DyadicIndex.of(x)
        if (i, index) not in self.C:
            raise IndexOutOfRangeError(f"no junction point C_{i}^{index}")
        return self.C[(i, index)]

    def ring_arc(self, i: int) -> DirectedArc:
        """The arc ⌢A_i⁰A_i¹ of the ring of radius r_i, for 1 ≤ i ≤ n."""
        if not 1 <= i <= self.config.n:
            raise IndexOutOfRangeError(f"no ring arc at level {i}")
        return self.frame.ring_arc(self.radii[i])

    def circles(self) -> List[Circle]:
        return list(self.K0.values()) + list(self.K1.values())

    def replacing_circle(self, family: str, x: Index, circle: Circle) -> SproutScene:
        """A copy of the scene in which one circle is replaced.

        Parameters:
            family: ``'K0'`` or ``'K1'``.
            x: dyadic index of the circle to replace.
            circle: the replacement.
        """
        index = DyadicIndex.of(x)
        K0 = dict(self.K0)
        K1 = dict(self.K1)
        target = K0 if family == "K0" else K1 if family == "K1" else None
        assert target is not None, f"unknown circle family {family}"
        if index not in target:
            raise IndexOutOfRangeError(f"no circle {family}^{index}")
        target[index] = circle
        return SproutScene(self.config, self.frame, self.level, self.radii, self.A, self.P, K0, K1, self.C)

    def to_json(self) -> dict:
        def junction_key(key: Tuple[int, DyadicIndex]) -> str:
            i, x = key
            return f"{i}/{x.value * 2**i}"

        return {
            "config": self.config.to_json(),
            "level": self.level,
            "points": {
                "M": self.M.to_json(),
                "N": self.N.to_json(),
                "anchor": self.frame.anchor.to_json(),
                "A": [[a0.to_json(), a1.to_json()] for a0, a1 in self.A],
                "P": {str(x): p.to_json() for x, p in sorted(self.P.items())},
                "C": {junction_key(key): p.to_json() for key, p in sorted(self.C.items())},
            },
            "circles": {
                "K0": {str(x): circle.to_json() for x, circle in sorted(self.K0.items())},
                "K1": {str(x): circle.to_json() for x, circle in sorted(self.K1.items())},
            },
        }

    def dumps(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_json(), indent=indent)

    def __repr__(self) -> str:
        return f"SproutScene({self.config}, level {self.level}, {len(self.K0) + len(self.K1)} circles)"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SproutScene) and self.to_json() == other.to_json()

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash(repr(self))


class _Builder:
    """Mutable state of a construction in progress."""

    def __init__(self, config: SproutConfig):
        self.config = config
        self.frame = LuneFrame(config.h, config.eps, config.precision)
        self.radii = tuple(config.ring_radius(i) for i in range(config.n + 1))
        M = self.frame.M
        self.A = [(M, M)]
        for radius in self.radii[1:]:
            arc = self.frame.ring_arc(radius)
            self.A.append((arc.start, arc.end))
        self.P = {x: self.frame.tip_point(x.value) for x in dyadic_indices(config.n)}
        self.K0: Dict[DyadicIndex, Circle] = {DyadicIndex(0, 0): self.frame.K0}
        self.K1: Dict[DyadicIndex, Circle] = {DyadicIndex(1, 0): self.frame.K1}
        self.C: Dict[Tuple[int, DyadicIndex], Point] = {(0, DyadicIndex(0, 0)): M}
        self.level = 0
        self.snapshot = self.scene()

    def scene(self) -> SproutScene:
        return SproutScene(self.config, self.frame, self.level, self.radii, self.A, self.P, self.K0, self.K1, self.C)

    def fail(self, level: int, index: DyadicIndex, invariant: str, detail: str = "") -> ConstructionFailedError:
        logger.info("construction failed at level %d, x=%s: %s %s", level, index, invariant, detail)
        return ConstructionFailedError(level, index, invariant, self.snapshot, detail)

    def ring_point(self, circle: Circle, level: int, index: DyadicIndex) -> Point:
        """The intersection of a circle with ring `level` on the right-hand side of M."""
        radius = self.radii[level]
        points = circle_circle_intersection(circle, self.frame.ring(radius))
        if not points:
            raise self.fail(level, index, "ring_intersection", f"{circle} misses the ring of radius {radius}")
        point = max(points, key=lambda p: p.x)
        if self.config.strict:
            arc = self.frame.ring_arc(radius)
            if not arc.contains(point, SLACK * self.config.precision.tolerance):
                raise self.fail(level, index, "ring_membership", f"{point} is off the ring arc")
        return point

    def rotate(self, circle: Circle, pivot: Point, target: Point, sense: str, level: int, index: DyadicIndex) -> Circle:
        try:
            rotated, _ = rotate_circle_to_contain(circle, pivot, target, sense)
        except (NoSolutionError, DegenerateError) as error:
            raise self.fail(level, index, "rotation", str(error))
        return rotated

    def sprout(self, level: int) -> None:
        """Builds level `level` + 1 from level `level`."""
        half = Fraction(1, 2 ** (level + 1))
        target = level + 1
        for x in dyadic_indices(level):
            if x.value < 1:
                self.C[(target, x)] = self.ring_point(self.K0[x], target, x)
            if x.value > 0:
                y = x.shifted(-half)
                self.C[(target, y)] = self.ring_point(self.K1[x], target, y)
                self.K0[y] = self.rotate(self.K1[x], self.C[(target, y)], self.P[y], NEGATIVE, target, y)
            if x.value < 1:
                z = x.shifted(half)
                self.K1[z] = self.rotate(self.K0[x], self.C[(target, x)], self.P[z], POSITIVE, target, z)
        self.level = target
        self.snapshot = self.scene()
        logger.debug("level %d built: %d circles", target, len(self.K0) + len(self.K1))


def build_scene(config: SproutConfig) -> SproutScene:
    """Runs the sprouting construction.

    Level 0 holds K₀⁰ = K₀, K₁¹ = K₁ and C₀⁰ = M. Each further level i + 1
    intersects K₀ˣ and K₁ˣ, x ∈ D_i, with the ring of radius r_{i+1}, and
    rotates them about the new junction points so that they pass through the
    tip points of the new indices: K₁ˣ clockwise onto K₀^{x−2⁻ⁱ⁻¹}, K₀ˣ
    counter-clockwise onto K₁^{x+2⁻ⁱ⁻¹}.

    Parameters:
        config: construction parameters.

    Returns:
        The complete scene.

    Raises:
        ConstructionFailedError: if an intersection or rotation cannot be
            realized, or, in strict mode, a junction point leaves its ring arc.
    """
    builder = _Builder(config)
    for level in range(config.n):
        builder.sprout(level)
    logger.info("built %s", config)
    return builder.snapshot


def _report(lemma_id: str, level: Optional[int], hypotheses: bool, measured: dict, bound: dict) -> LemmaReport:
    note = "" if level is None else f"level {level}"
    return LemmaReport(lemma_id, hypotheses, measured, bound, note)


def _offset_bound(config: SproutConfig, level: int) -> Any:
    context = config.precision.context
    root = context.sqrt(config.h * config.eps)
    return config.h + 3 * root * sum((context.mpf(2) ** (-context.mpf(j) / 2) for j in range(level)), context.mpf(0))


def _arc_excess(arc: DirectedArc, p: Point) -> Any:
    """Angular distance of a point's polar angle from a directed arc, 0 inside."""
    context = p.context
    if arc.contains_angle(arc.circle.angle_of(p), context.mpf(0)):
        return context.mpf(0)
    start = abs(normalize_angle(arc.circle.angle_of(p) - arc.start_angle))
    end = abs(normalize_angle(arc.circle.angle_of(p) - arc.start_angle - arc.sweep))
    return min(start, end)


def check_invariants(scene: SproutScene) -> List[LemmaReport]:
    """Measures the construction invariants, one report per family and level.

    Families: junction points on their ring arcs (``ring_membership``);
    K₀ˣ through P_x and C_iˣ (``left_containment``); K₁ˣ through P_x and
    C_i^{x−2⁻ⁱ} (``right_containment``); center drift at level i below
    h + 3√(hε)·Σ_{j<i} 2^{−j/2} (``center_drift``); every center within
    min(10√(hε), ε) of the origin (``center_offset``); every circle of level
    i crossing the ring arcs of levels i..n (``ring_crossing``). The bound
    families are only claimed in the strict regime.
    """
    config = scene.config
    precision = config.precision
    context = precision.context
    slack = SLACK * precision.tolerance
    zero = context.mpf(0)
    strict = config.strict
    origin = scene.frame.origin
    reports = []
    for i in range(scene.level + 1):
        indices = dyadic_indices(i)
        step = Fraction(1, 2**i)
        if i >= 1:
            arc = scene.ring_arc(i)
            radius = scene.radii[i]
            points = [scene.C[(i, x)] for x in indices if x.value < 1]
            measured = {
                "radius_gap": max(abs(p.norm() - radius) for p in points),
                "arc_excess": max(_arc_excess(arc, p) for p in points),
            }
            reports.append(
                _report("ring_membership", i, strict, measured, {"radius_gap": slack, "arc_excess": slack / radius})
            )
        left = [
            max(scene.K0[x].distance_from(scene.P[x]), scene.K0[x].distance_from(scene.C[(i, x)]))
            for x in indices
            if x.value < 1
        ]
        reports.append(_report("left_containment", i, True, {"gap": max(left, default=zero)}, {"gap": slack}))
        right = [
            max(scene.K1[x].distance_from(scene.P[x]), scene.K1[x].distance_from(scene.C[(i, x.shifted(-step))]))
            for x in indices
            if x.value > 0
        ]
        reports.append(_report("right_containment", i, True, {"gap": max(right, default=zero)}, {"gap": slack}))
        drift = max(
            circle.center.distance_to(origin)
            for x in indices
            for circle in (scene.K0.get(x), scene.K1.get(x))
            if circle is not None
        )
        reports.append(_report("center_drift", i, strict, {"offset": drift}, {"offset": _offset_bound(config, i)}))
        missed = 0
        for x in indices:
            if x.value == 1:
                continue
            for circle in (scene.K0[x], scene.K1[x.shifted(step)]):
                for j in range(max(i, 1), scene.level + 1):
                    arc = scene.ring_arc(j)
                    try:
                        crossings = circle_circle_intersection(circle, arc.circle)
                    except IdenticalCirclesError:
                        crossings = []
                    if not any(arc.contains(p, slack) for p in crossings):
                        missed += 1
        reports.append(_report("ring_crossing", i, strict, {"missed_arcs": missed}, {"missed_arcs": 0}))
    offset = max(circle.center.distance_to(origin) for circle in scene.circles())
    bound = min(10 * context.sqrt(config.h * config.eps), config.eps)
    reports.append(_report("center_offset", None, strict, {"offset": offset}, {"offset": bound}))
    logger.info("checked %d invariant families on %s", len(reports), scene)
    return reports
