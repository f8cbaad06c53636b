# File name: area/convergence.py

"""How the area of the sprouted horns outside the tip region shrinks as the
number of levels grows."""

from __future__ import annotations

import logging
import math
import time
from typing import Any, List, Optional, Sequence

from kakeya_utils import frozen

from sprouting.config import SproutConfig
from sprouting.scene import ConstructionFailedError, build_scene
from area.estimates import *

logger = logging.getLogger(__name__)

CSV_HEADER = "n,area,stderr,samples,analytic_bound,runtime_seconds"


@frozen
class ConvergenceRow:
    """One measured level count.

    Attributes:
        n (`int`): number of levels.
        area_tn_minus_delta (`~typing.Optional`\\[`~area.estimates.AreaEstimate`]):
            the estimate, or ``None`` if the scene could not be built or sampled.
        analytic_bound: the decomposition bound, or ``None``.
        runtime_seconds (`float`): wall time of the row, 0 unless timed.
        failure (`str`): why there is no estimate, or empty.
    """

    n: int
    area_tn_minus_delta: Optional[AreaEstimate]
    analytic_bound: Any
    runtime_seconds: float
    failure: str

    def __init__(
        self,
        n: int,
        area_tn_minus_delta: Optional[AreaEstimate],
        analytic_bound: Any,
        runtime_seconds: float = 0.0,
        failure: str = "",
    ):
        assert (area_tn_minus_delta is None) == bool(failure)
        self.n = n
        self.area_tn_minus_delta = area_tn_minus_delta
        self.analytic_bound = analytic_bound
        self.runtime_seconds = runtime_seconds
        self.failure = failure

    @property
    def failed(self) -> bool:
        return bool(self.failure)

    def within_bound(self) -> bool:
        """Whether the estimate stays below the analytic bound plus three standard errors."""
        if self.failed:
            return False
        estimate = self.area_tn_minus_delta
        return estimate.value <= self.analytic_bound + 3 * estimate.stderr

    def to_csv(self) -> str:
        if self.failed:
            return f"{self.n},nan,nan,0,nan,{self.runtime_seconds:.6g}"
        estimate = self.area_tn_minus_delta
        return (
            f"{self.n},{float(estimate.value):.12g},{float(estimate.stderr):.12g},{estimate.samples},"
            f"{float(self.analytic_bound):.12g},{self.runtime_seconds:.6g}"
        )

    def __repr__(self) -> str:
        if self.failed:
            return f"ConvergenceRow(n={self.n}, failed: {self.failure})"
        return f"ConvergenceRow(n={self.n}, {self.area_tn_minus_delta})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ConvergenceRow)
            and self.n == other.n
            and self.area_tn_minus_delta == other.area_tn_minus_delta
            and self.failure == other.failure
        )

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash((self.n, self.area_tn_minus_delta, self.failure))


def convergence_study(
    config: SproutConfig,
    n_list: Sequence[int],
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: Optional[int] = None,
    timings: bool = False,
) -> List[ConvergenceRow]:
    """Measures m(Tₙ ∖ Δ(h)) and its analytic bound for several level counts.

    Parameters:
        config: template configuration; its level count is replaced.
        n_list: ascending level counts.
        samples: sample points per estimate.
        seed: root seed, shared by all rows.
        workers: joblib worker threads.
        timings: whether to record wall times; rows are otherwise identical
            from run to run.

    Returns:
        One row per level count; scenes that cannot be built, or whose horns
        are too thin to sample in float64, yield failure rows instead of
        raising.
    """
    assert list(n_list) == sorted(n_list), "level counts must be ascending"
    rows = []
    for n in n_list:
        started = time.perf_counter()
        try:
            scene = build_scene(config.with_angle(config.h, n))
        except ConstructionFailedError as error:
            logger.warning("no scene at n=%d: %s", n, error)
            runtime = time.perf_counter() - started if timings else 0.0
            rows.append(ConvergenceRow(n, None, None, runtime, f"{error.invariant} at level {error.level}"))
            continue
        try:
            estimate = tn_minus_delta_area(scene, samples, seed, workers)
        except ResolutionError as error:
            logger.warning("no estimate at n=%d: %s", n, error)
            runtime = time.perf_counter() - started if timings else 0.0
            rows.append(ConvergenceRow(n, None, None, runtime, "below float64 resolution"))
            continue
        bound, valid = decomposition_bound(scene)
        if not valid:
            logger.info("n=%d is below the range where the decomposition bound is proven", n)
        runtime = time.perf_counter() - started if timings else 0.0
        rows.append(ConvergenceRow(n, estimate, bound, runtime))
        logger.info("n=%d: %s", n, rows[-1])
    return rows


def rows_to_csv(rows: Sequence[ConvergenceRow]) -> str:
    return "\n".join([CSV_HEADER] + [row.to_csv() for row in rows]) + "\n"


def is_decreasing(rows: Sequence[ConvergenceRow]) -> bool:
    """Whether every estimate is below the one before it.

    Failure rows are skipped. A decrease smaller than three combined standard
    errors still counts but is logged as not significant.
    """
    measured = [row for row in rows if not row.failed]
    for previous, current in zip(measured, measured[1:]):
        before = previous.area_tn_minus_delta
        after = current.area_tn_minus_delta
        drop = float(before.value) - float(after.value)
        if drop <= 0:
            return False
        if drop < 3 * math.hypot(float(before.stderr), float(after.stderr)):
            logger.info("the decrease from n=%d to n=%d is within 3σ", previous.n, current.n)
    return True
