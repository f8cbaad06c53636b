# File name: area/estimates.py

"""Area of the regions touched by a moving arc: analytic sums of horn areas,
Monte Carlo estimates of their unions, and the bound on the part of the
sprouted horns outside the tip region."""

from __future__ import annotations

import json
import logging
from typing import Any, List, Optional, Tuple

import numpy as np

from kakeya_utils import frozen

from geometry.scalar import *
from geometry.primitives import *
from lemmas.constants import junction_constant, ratio_continuity_radius
from sprouting.config import dyadic_indices
from sprouting.horns import HornRegion, horn_region
from sprouting.scene import SproutScene
from motion.plan import MotionPlan
from area.sampling import HornArrays, candidate_ranges, count_hits

logger = logging.getLogger(__name__)

ANALYTIC_SUM = "ANALYTIC_SUM"
MC_UNION = "MC_UNION"

DEFAULT_SAMPLES = 10**6
DEFAULT_SEED = 42
MIN_SAMPLES = 10**3

#: Number of angular slabs used to narrow down horn candidates.
ANGULAR_BINS = 1024

#: Horns narrower than this many float64 spacings of the sampling frame are not resolved.
RESOLUTION_SPACINGS = 1024

#: Constant of the per-piece bound c²·PIECE_CONSTANT·2⁻ⁱ/n².
PIECE_CONSTANT = 10000


class ResolutionError(GeometryError):
    """Raised when the regions to sample are too thin for float64 coordinates."""


@frozen
class AreaEstimate:
    """An area, computed or estimated.

    Attributes:
        value: the area.
        stderr: standard error; 0 for analytic sums.
        samples (`int`): number of sample points; 0 for analytic sums.
        method (`str`): ``'ANALYTIC_SUM'`` or ``'MC_UNION'``.
        seed (`int`): root seed of the sampling.
    """

    value: Any
    stderr: Any
    samples: int
    method: str
    seed: int

    def __init__(self, value: Any, stderr: Any, samples: int, method: str, seed: int = DEFAULT_SEED):
        assert method in (ANALYTIC_SUM, MC_UNION)
        assert value >= 0, f"area must be non-negative, got {value}"
        assert method == MC_UNION or stderr == 0, "analytic sums carry no error"
        self.value = value
        self.stderr = stderr
        self.samples = samples
        self.method = method
        self.seed = seed

    @staticmethod
    def analytic(value: Any) -> AreaEstimate:
        return AreaEstimate(value, 0, 0, ANALYTIC_SUM, 0)

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "stderr": str(self.stderr),
            "samples": self.samples,
            "method": self.method,
            "seed": self.seed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __repr__(self) -> str:
        return f"AreaEstimate({self.value} ± {self.stderr}, {self.method})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AreaEstimate)
            and self.value == other.value
            and self.stderr == other.stderr
            and self.samples == other.samples
            and self.method == other.method
            and self.seed == other.seed
        )

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash((str(self.value), self.method, self.samples, self.seed))


def _estimate(hits: int, samples: int, region_area: float, seed: int) -> AreaEstimate:
    fraction = hits / samples
    value = fraction * region_area
    stderr = float(np.sqrt(fraction * (1 - fraction) / samples)) * region_area
    return AreaEstimate(value, stderr, samples, MC_UNION, seed)


def swept_area_upper_bound(plan: MotionPlan) -> AreaEstimate:
    """The sum of the horn areas |AB|²·|α|/2 of all pivots; slides add nothing."""
    pivots = plan.pivots()
    if not pivots:
        return AreaEstimate.analytic(0)
    context = pivots[0].center.context
    return AreaEstimate.analytic(context.fsum(horn_area(step.start_pose.chord, abs(step.angle)) for step in pivots))


def _union_area(
    regions: List[HornRegion],
    samples: int,
    seed: int,
    workers: Optional[int],
    anchor: Optional[Point] = None,
    scale: Any = None,
) -> Tuple[AreaEstimate, int]:
    """Samples the bounding box of some horns and counts the points in any of them.

    Coordinates are taken relative to `anchor` and divided by `scale`, so
    that thin regions keep their float64 resolution; by default the box is
    anchored at its lower left corner and shrunk to unit size.
    """
    precision = regions[0].vertex.precision
    tolerance = precision.tolerance
    boxes = [region.bounding_box() for region in regions]
    left = min(box[0] for box in boxes) - tolerance
    bottom = min(box[1] for box in boxes) - tolerance
    right = max(box[2] for box in boxes) + tolerance
    top = max(box[3] for box in boxes) + tolerance
    if anchor is None:
        anchor = Point(left, bottom)
        scale = max(right - left, top - bottom)
    horns = [HornArrays(region, anchor, scale) for region in regions]

    def local(x0: Any, y0: Any, x1: Any, y1: Any) -> Tuple[float, float, float, float]:
        return (
            float((x0 - anchor.x) / scale),
            float((y0 - anchor.y) / scale),
            float((x1 - anchor.x) / scale),
            float((y1 - anchor.y) / scale),
        )

    local_boxes = [local(*box) for box in boxes]
    x_low, y_low, x_high, y_high = local(left, bottom, right, top)
    slack = float(tolerance / scale)

    def counter(rng: np.random.Generator, size: int) -> int:
        x = x_low + rng.random(size) * (x_high - x_low)
        y = y_low + rng.random(size) * (y_high - y_low)
        hit = np.zeros(size, dtype=bool)
        for horn, (x0, y0, x1, y1) in zip(horns, local_boxes):
            inside = (x >= x0 - slack) & (x <= x1 + slack) & (y >= y0 - slack) & (y <= y1 + slack) & ~hit
            candidates = np.nonzero(inside)[0]
            if candidates.size:
                hit[candidates[horn.mask(x[candidates], y[candidates])]] = True
        return int(hit.sum())

    hits = count_hits(counter, samples, seed, workers)
    area = float((right - left) * (top - bottom))
    return _estimate(hits, samples, area, seed), hits


def monte_carlo_swept_area(
    plan: MotionPlan, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED, workers: Optional[int] = None
) -> AreaEstimate:
    """Estimates the area of the union of the horns swept by the pivots.

    Points are drawn uniformly from the bounding box of all pivot horns,
    translated to its corner and shrunk to unit size. Slides touch only arcs,
    a set of measure zero.

    Parameters:
        plan: the plan.
        samples: number of points, at least 1000.
        seed: root seed.
        workers: joblib worker threads.

    Returns:
        The estimate; 0 without sampling for a plan without pivots.
    """
    assert samples >= MIN_SAMPLES, f"at least {MIN_SAMPLES} samples are needed"
    pivots = [step for step in plan.pivots() if step.angle != 0]
    if not pivots:
        return AreaEstimate(0, 0, samples, MC_UNION, seed)
    estimate, hits = _union_area([step.horn() for step in pivots], samples, seed, workers)
    logger.info("swept area of %s: %s from %d hits", plan, estimate, hits)
    return estimate


def delta_area(
    scene: SproutScene, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED, workers: Optional[int] = None
) -> AreaEstimate:
    """Estimates the area of the tip region Δ(h) = H₀⁰, exactly hε²/2.

    Δ(h) lies within ε of M. Points are drawn in the frame anchored at M and
    shrunk by ε, where the region has unit extent even in the strict regime,
    and the area is scaled back by ε².

    Parameters:
        scene: a built scene.
        samples: number of points, at least 1000.
        seed: root seed.
        workers: joblib worker threads.

    Returns:
        The estimate.
    """
    assert samples >= MIN_SAMPLES, f"at least {MIN_SAMPLES} samples are needed"
    estimate, hits = _union_area([horn_region(scene, 0, 0)], samples, seed, workers, scene.M, scene.config.eps)
    logger.info("m(tip region) of %s: %s from %d hits", scene, estimate, hits)
    return estimate


def _sector(scene: SproutScene, horns: List[HornArrays], regions: List[Any]) -> Tuple[float, float, float, float]:
    """Angular and radial ranges about O of an annular sector holding every horn."""
    origin = scene.frame.origin
    tolerance = scene.precision.tolerance
    low_radius = min(h.radius - h.band - float(np.hypot(*h.center)) for h in horns)
    high_radius = max(h.radius + h.band + float(np.hypot(*h.center)) for h in horns)
    angles = []
    for region in regions:
        x0, y0, x1, y1 = region.bounding_box()
        angles += [(Point(x, y) - origin).angle() for x in (x0, x1) for y in (y0, y1)]
    low_angle = float(min(angles) - tolerance)
    high_angle = float(max(angles) + tolerance)
    return low_angle, high_angle, max(low_radius - float(tolerance), 0.0), high_radius + float(tolerance)


def _radial_windows(horn: HornArrays, centers: np.ndarray, width: float) -> Tuple[np.ndarray, np.ndarray]:
    """Per angular slab, the distances from O that points of the horn can have.

    Every horn point lies within `band` of the horn's first circle, whose
    center sits at δ from O; along the ray at angle ψ such points are at
    distance a + √(ρ² − |δ|² + a²) from O with a = δ·(cos ψ, sin ψ) and
    |ρ − radius| ≤ band. Across a slab this moves by at most |δ|·width.
    """
    dx, dy = horn.center
    offset = float(np.hypot(dx, dy))
    a = dx * np.cos(centers) + dy * np.sin(centers)
    inner = max(horn.radius - horn.band, offset)
    outer = horn.radius + horn.band
    low = a + np.sqrt(inner**2 - offset**2 + a**2) - offset * width
    high = a + np.sqrt(outer**2 - offset**2 + a**2) + offset * width
    return low, high


def tn_minus_delta_area(
    scene: SproutScene,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: Optional[int] = None,
    bins: int = ANGULAR_BINS,
) -> AreaEstimate:
    """Estimates the area of the points of the last-level horns H_nˣ that lie
    outside the tip region Δ(h) = H₀⁰.

    Points are drawn uniformly by area from an annular sector about the
    origin O holding every horn. Each horn is only tested on the points of
    each angular slab whose distance from O it can reach.

    Parameters:
        scene: a built scene.
        samples: number of points, at least 1000.
        seed: root seed.
        workers: joblib worker threads.
        bins: number of angular slabs.

    Returns:
        The estimate; exactly 0 for a level 0 scene, where Tₙ = Δ(h).

    Raises:
        ResolutionError: if the thinnest horn is narrower than
            RESOLUTION_SPACINGS float64 spacings at the sector's outer radius,
            as for strict scenes, whose horns are about hε·2⁻ⁿ wide.
    """
    assert samples >= MIN_SAMPLES, f"at least {MIN_SAMPLES} samples are needed"
    n = scene.level
    if n == 0:
        return AreaEstimate(0, 0, samples, MC_UNION, seed)
    origin = scene.frame.origin
    one = scene.precision.scalar(1)
    regions = [horn_region(scene, n, x) for x in dyadic_indices(n) if x.value < 1]
    horns = [HornArrays(region, origin, one) for region in regions]
    delta = HornArrays(horn_region(scene, 0, 0), origin, one)
    low_angle, high_angle, low_radius, high_radius = _sector(scene, horns, regions)
    spacing = float(np.spacing(high_radius))
    thinnest = min(horn.band - horn.tolerance for horn in horns)
    if thinnest < RESOLUTION_SPACINGS * spacing:
        raise ResolutionError(
            f"horns of {scene} are {thinnest:.3g} wide, below the float64 resolution {spacing:.3g} about O"
        )
    span = high_angle - low_angle
    width = span / bins
    centers = low_angle + width * (np.arange(bins) + 0.5)
    radial_span = high_radius - low_radius
    windows = []
    for horn in horns:
        low, high = _radial_windows(horn, centers, width)
        low = np.clip((low - low_radius) / radial_span, 0.0, 1.0)
        high = np.clip((high - low_radius) / radial_span, 0.0, 1.0)
        windows.append((np.arange(bins) + low * 0.5, np.arange(bins) + high * 0.5))

    def counter(rng: np.random.Generator, size: int) -> int:
        psi = low_angle + span * rng.random(size)
        rho = np.sqrt(low_radius**2 + (high_radius**2 - low_radius**2) * rng.random(size))
        x = rho * np.cos(psi)
        y = rho * np.sin(psi)
        slab = np.minimum(((psi - low_angle) / width).astype(np.int64), bins - 1)
        keys = slab + 0.5 * (rho - low_radius) / radial_span
        order = np.argsort(keys, kind="stable")
        sorted_keys = keys[order]
        hit = np.zeros(size, dtype=bool)
        for horn, (lows, highs) in zip(horns, windows):
            candidates = order[candidate_ranges(sorted_keys, lows, highs)]
            candidates = candidates[~hit[candidates]]
            if candidates.size:
                hit[candidates[horn.mask(x[candidates], y[candidates])]] = True
        inside = np.nonzero(hit)[0]
        outside_delta = ~delta.mask(x[inside], y[inside])
        return int(outside_delta.sum())

    hits = count_hits(counter, samples, seed, workers)
    area = span * (high_radius**2 - low_radius**2) / 2
    estimate = _estimate(hits, samples, area, seed)
    logger.info("m(T_%d minus the tip region) of %s: %s", n, scene, estimate)
    return estimate


def piece_bound(scene: SproutScene, i: int) -> Any:
    """The bound 10000·c²·2⁻ⁱ/n² on one difference H_{i+1}ˣ ∖ H_iʸ."""
    config = scene.config
    n = scene.level
    assert 0 <= i < n
    _, c = junction_constant(config.h, config.eps)
    return PIECE_CONSTANT * c**2 * config.precision.context.ldexp(1, -i) / n**2


def decomposition_bound(scene: SproutScene) -> Tuple[Any, bool]:
    """The analytic bound on m(Tₙ ∖ Δ(h)).

    Tₙ ∖ Δ(h) is covered by the differences H_{i+1}ˣ ∖ H_iʸ. For levels
    i > log₂n there are 2·2ⁱ of them, each bounded by `piece_bound`; the
    rest lies in the disc about M of radius 2(log₂n + 1)/n.

    Parameters:
        scene: a built scene.

    Returns:
        The bound, and whether n > max(10c, (1 + c)/v), under which it is
        proven.
    """
    config = scene.config
    precision = config.precision
    context = precision.context
    n = scene.level
    if n == 0:
        return precision.scalar(0), True
    log_n = context.log(n, 2)
    _, c = junction_constant(config.h, config.eps)
    v = ratio_continuity_radius(config.eps)
    pieces = context.fsum(2 * 2**i * piece_bound(scene, i) for i in range(n) if i > log_n)
    disc = context.pi * (2 * (log_n + 1) / n) ** 2
    valid = n > max(10 * c, (1 + c) / v)
    logger.debug("decomposition bound at n=%d: pieces %s, disc %s", n, context.nstr(pieces, 6), context.nstr(disc, 6))
    return pieces + disc, bool(valid)
