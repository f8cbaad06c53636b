# File name: area/sampling.py

"""Vectorized horn membership and reproducible block sampling for the Monte
Carlo area estimates."""

from __future__ import annotations

import logging
from typing import Any, Callable, List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from kakeya_utils import worker_count

from geometry.scalar import *
from geometry.primitives import *
from sprouting.horns import HornRegion

logger = logging.getLogger(__name__)

#: Samples drawn per block; totals do not depend on how blocks are spread over workers.
BLOCK_SIZE = 1 << 16


class HornArrays:
    """A `~sprouting.horns.HornRegion` in float64, in a frame translated to
    `origin` and shrunk by `scale`.

    Attributes:
        vertex (`~typing.Tuple`\\[`float`, `float`]): the horn vertex.
        center (`~typing.Tuple`\\[`float`, `float`]): center of the first
            bounding circle.
        radius (`float`): common radius of the bounding circles.
        base (`float`): direction from that center to the vertex.
        side (`int`): side of the bounding chords.
        sweep (`float`): signed angular width.
        reach (`float`): distance cut-off from the vertex.
        cap (`~typing.Optional`\\[`~typing.Tuple`\\[`float`, `float`, `float`]]):
            center and radius of the cap disc.
        tolerance (`float`): closed-membership slack.
        band (`float`): a bound on the distance of a horn point from its
            first circle.
    """

    def __init__(self, region: HornRegion, origin: Point, scale: Any):
        precision = region.vertex.precision

        def local(p: Point) -> Tuple[float, float]:
            offset = (p - origin).scaled(1 / scale)
            return float(offset.x), float(offset.y)

        self.vertex = local(region.vertex)
        self.center = local(region.from_circle.center)
        self.radius = float(region.from_circle.radius / scale)
        self.base = float((region.vertex - region.from_circle.center).angle())
        self.side = region.side
        self.sweep = float(region.sweep)
        self.reach = float(region.reach / scale)
        extent = region.reach
        if region.cap_center is None:
            self.cap = None
        else:
            cx, cy = local(region.cap_center)
            self.cap = (cx, cy, float(region.cap_radius / scale))
            extent = max(extent, region.vertex.distance_to(region.cap_center) + region.cap_radius)
        self.tolerance = float(precision.tolerance / scale)
        self.band = float(extent * abs(region.sweep) / scale) + self.tolerance

    def mask(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Closed membership of the points (x, y)."""
        dx = x - self.vertex[0]
        dy = y - self.vertex[1]
        r = np.hypot(dx, dy)
        chord = self.base + self.side * (np.pi / 2 + np.arcsin(np.minimum(r / (2 * self.radius), 1.0)))
        delta = np.remainder(np.arctan2(dy, dx) - chord + np.pi, 2 * np.pi) - np.pi
        slack = self.tolerance / np.maximum(r, self.tolerance)
        low, high = (0.0, self.sweep) if self.sweep >= 0 else (self.sweep, 0.0)
        between = (delta >= low - slack) & (delta <= high + slack)
        near = r <= self.reach + self.tolerance
        if self.cap is not None:
            cx, cy, cr = self.cap
            near |= np.hypot(x - cx, y - cy) <= cr + self.tolerance
        return (r <= self.tolerance) | (near & (r <= 2 * self.radius + self.tolerance) & between)

    def __repr__(self) -> str:
        return f"HornArrays(vertex={self.vertex}, sweep={self.sweep:.3g})"


def block_sizes(samples: int) -> List[int]:
    """Sizes of the sampling blocks for a total sample count."""
    assert samples >= 0
    full, rest = divmod(samples, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def block_generator(seed: int, block: int) -> np.random.Generator:
    """The random stream of one block, fixed by the seed and block number."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))


def count_hits(
    counter: Callable[[np.random.Generator, int], int],
    samples: int,
    seed: int,
    workers: Optional[int] = None,
) -> int:
    """Runs a block counter over all blocks and adds up the hits.

    Parameters:
        counter: draws the given number of points from the generator and
            returns how many of them hit the region.
        samples: total number of points.
        seed: root seed.
        workers: joblib worker threads; the ``KAKEYA_WORKERS`` setting by
            default.

    Returns:
        The number of hits, independent of `workers`.
    """
    if workers is None:
        workers = worker_count()
    sizes = block_sizes(samples)
    hits = Parallel(n_jobs=workers, prefer="threads")(
        delayed(counter)(block_generator(seed, block), size) for block, size in enumerate(sizes)
    )
    logger.debug("%d blocks of %d samples: %d hits", len(sizes), samples, sum(hits))
    return int(sum(hits))


def candidate_ranges(keys: np.ndarray, lows: np.ndarray, highs: np.ndarray) -> np.ndarray:
    """Positions of the sorted `keys` falling in any of the intervals
    [lows[k], highs[k]], which must be disjoint and ascending."""
    starts = np.searchsorted(keys, lows, side="left")
    ends = np.searchsorted(keys, highs, side="right")
    lengths = np.maximum(ends - starts, 0)
    total = int(lengths.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    shifts = np.repeat(starts - np.cumsum(lengths) + lengths, lengths)
    return shifts + np.arange(total)
