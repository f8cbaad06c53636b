# File name: lemmas/constants.py

"""Constructive values of the constants that the junction and area estimates
only assert to exist."""

from __future__ import annotations

import logging
from typing import Any, Callable, Tuple

from geometry.scalar import *

logger = logging.getLogger(__name__)


def _bisect_largest(predicate: Callable[[Any], bool], low: Any, high: Any, steps: int) -> Any:
    """Largest point of [low, high] found by bisection at which `predicate`
    holds, assuming it holds at `low` and is monotone."""
    assert predicate(low)
    if predicate(high):
        return high
    for _ in range(steps):
        middle = (low + high) / 2
        if predicate(middle):
            low = middle
        else:
            high = middle
    return low


def arccos_modulus(u: Any) -> Any:
    """The modulus of continuity of arccos on [0, 1] at step u.

    arccos is concave there with slope growing towards 1, so the largest
    change over a step of length u happens on [1 − u, 1].
    """
    context = u.context
    return context.acos(1 - min(u, context.mpf(1)))


def continuity_radius(h: Any) -> Any:
    """A step u > 0 such that |arccos x − arccos y| < h whenever |x − y| ≤ u."""
    precision = Precision.of(h)
    one = precision.scalar(1)
    return _bisect_largest(lambda u: arccos_modulus(u) < h, precision.scalar(0), one, precision.bits + 8)


def junction_constant(h: Any, eps: Any) -> Tuple[Any, Any]:
    """Returns the level count n₀ = 2/u beyond which consecutive ring arcs stay
    within 6h of each other, and the junction constant c = max(2n₀, 8/ε)."""
    u = continuity_radius(h)
    if u <= 0:
        raise ValueError(f"angle {h} is too small for the working precision")
    n0 = 2 / u
    c = max(2 * n0, 8 / eps)
    logger.debug("junction constant: u=%s n0=%s c=%s", u, n0, c)
    return n0, c


def _chord_weight(t: Any) -> Any:
    return t * t.context.sqrt(1 - (t / 2) ** 2)


def ratio_continuity_radius(eps: Any) -> Any:
    """A step v > 0 such that the ratio of t·√(1 − (t/2)²) at any two points of
    [ε, 2 − 4ε] less than v apart stays below 1.1.

    The logarithmic derivative of the weight is decreasing, so the worst
    windows sit at the two ends of the interval.
    """
    precision = Precision.of(eps)
    context = precision.context
    low, high = eps, 2 - 4 * eps
    peak = context.sqrt(2)
    limit = precision.scalar("1.1")

    def ratio(v: Any) -> Any:
        left = _chord_weight(min(low + v, peak)) / _chord_weight(low)
        right = _chord_weight(max(high - v, peak)) / _chord_weight(high)
        return max(left, right)

    return _bisect_largest(lambda v: ratio(v) < limit, precision.scalar(0), high - low, precision.bits + 8)
