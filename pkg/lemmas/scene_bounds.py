# File name: lemmas/scene_bounds.py

"""Quantitative checks measured on a built sprouting scene: the two-sided
estimate of the junction rotation angles, the β-sum contraction, the
distances between consecutive junction points and the corners of consecutive
horns."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, List

from geometry.scalar import *
from geometry.primitives import *
from lemmas.reports import LemmaReport, merge_reports
from lemmas.oracles import (
    NEGATIVE,
    POSITIVE,
    NoIntersectionError,
    chord_direction_bound,
    junction_rotation_check,
    sprout_intersection,
)
from lemmas.constants import junction_constant
from sprouting.config import DyadicIndex, dyadic_indices
from sprouting.scene import SLACK, Index, IndexOutOfRangeError, SproutScene, check_invariants

logger = logging.getLogger(__name__)

#: Number of sample points per ring arc when measuring ring-to-ring distances.
RING_SAMPLES = 100


def _chord_weight(t: Any) -> Any:
    return t * t.context.sqrt(1 - (t / 2) ** 2)


def alpha_sandwich(scene: SproutScene, i: int, x: Index) -> LemmaReport:
    """Checks the two-sided estimate of the rotation angle α_iˣ about C_iˣ
    between K₀ˣ and K₁^{x+2⁻ⁱ}.

    With t = |P_{x+2⁻ⁱ} C_iˣ| and w = hε·2⁻ⁱ / (t·√(1 − (t/2)²)), the claim is
    0.9·w < α_iˣ < 1.1·w, and further α_iˣ < 2⁻ⁱ·10⁻³.

    Parameters:
        scene: a scene built at least to level `i`.
        i: level, 1 ≤ i.
        x: index in D_i with x < 1.

    Returns:
        The report; its hypotheses hold in the strict regime only.

    Raises:
        IndexOutOfRangeError: if (i, x) names no junction point with a right
            neighbour.
    """
    index = DyadicIndex.of(x)
    if not 1 <= i <= scene.level or index.level > i or index.value >= 1:
        raise IndexOutOfRangeError(f"no angle alpha_{i}^{index} in {scene}")
    config = scene.config
    context = config.precision.context
    step = Fraction(1, 2**i)
    C = scene.c(i, index)
    alpha = abs(rotation_angle(C, scene.k1(index.shifted(step)), scene.k0(index)))
    t = scene.tip_point(index.shifted(step)).distance_to(C)
    scale = context.ldexp(context.mpf(1), -i)
    width = config.h * config.eps * scale / _chord_weight(t)
    measured = {"alpha": alpha, "min_alpha": alpha, "alpha_level": alpha, "t": t}
    bound = {
        "alpha": config.precision.scalar("1.1") * width,
        "min_alpha": config.precision.scalar("0.9") * width,
        "alpha_level": scale * config.precision.scalar("1e-3"),
    }
    return LemmaReport("alpha_sandwich", config.strict, measured, bound, f"i={i}, x={index}")


def alpha_sandwich_level(scene: SproutScene, i: int) -> LemmaReport:
    """The worst case of `alpha_sandwich` over all x ∈ D_i, x < 1."""
    reports = [alpha_sandwich(scene, i, x) for x in dyadic_indices(i) if x.value < 1]
    return merge_reports("alpha_sandwich", reports, f"level {i}")


def beta_sum(scene: SproutScene) -> LemmaReport:
    """Checks that the pivot angles of the last level add up to less than h.

    For x ∈ D_n, 0 < x < 1, β_nˣ is the rotation angle about P_x carrying K₁ˣ
    onto K₀ˣ and β′ the angle at M between C_n^{x−2⁻ⁿ} and C_nˣ. The β′ add
    up to h exactly, while every ratio β/β′ and the sum Σβ / h stay below
    1 − ε⁴.

    Parameters:
        scene: the scene; checked at its last built level.

    Returns:
        The report, vacuous for a level 0 scene.
    """
    n = scene.level
    if n == 0:
        return LemmaReport("beta_sum", True, {}, {}, "vacuous")
    config = scene.config
    precision = config.precision
    context = precision.context
    step = Fraction(1, 2**n)
    M = scene.M
    q = 1 - config.eps**4
    betas = []
    primes = []
    ratios = []
    for x in dyadic_indices(n):
        if not 0 < x.value < 1:
            continue
        beta = abs(rotation_angle(scene.tip_point(x), scene.k1(x), scene.k0(x)))
        prime = signed_angle(scene.c(n, x.shifted(-step)) - M, scene.c(n, x) - M)
        betas.append(beta)
        primes.append(prime)
        ratios.append(beta / prime if prime > 0 else context.inf)
    zero = context.mpf(0)
    total = context.fsum(betas) if betas else zero
    # telescopes from C_n⁰ = A_n⁰ to C_n^{1−2⁻ⁿ} = A_n¹
    prime_total = context.fsum(primes) if primes else zero
    measured = {
        "beta_sum": total,
        "beta_prime_sum": prime_total,
        "prime_gap": abs(prime_total - config.h),
        "max_ratio": max(ratios, default=zero),
        "min_beta_prime": min(primes, default=zero),
    }
    bound = {
        "beta_sum": q * config.h,
        "prime_gap": SLACK * precision.tolerance,
        "max_ratio": q,
        "min_beta_prime": zero,
    }
    logger.debug("beta sum over %d pivots: %s", len(betas), context.nstr(total, 12))
    return LemmaReport("beta_sum", config.strict, measured, bound, f"n={n}")


def ring_gap(scene: SproutScene, i: int, samples: int = RING_SAMPLES) -> Any:
    """The largest sampled distance between a point of the ring arc of level
    `i` and a point of the ring arc of level `i` + 1."""
    assert samples >= 2
    precision = scene.precision
    fractions = [Fraction(k, samples - 1) for k in range(samples)]
    if i == 0:
        inner = [scene.M]
    else:
        inner = [arc_point_at_fraction(scene.ring_arc(i), f) for f in fractions]
    outer = [arc_point_at_fraction(scene.ring_arc(i + 1), f) for f in fractions]
    return max((X.distance_to(Y) for X in inner for Y in outer), default=precision.scalar(0))


def consecutive_junction_bounds(scene: SproutScene, samples: int = RING_SAMPLES) -> LemmaReport:
    """Checks that junction points of consecutive levels are at most c/n apart.

    For 0 ≤ i < n and x ∈ D_i, x < 1, both |C_iˣ C_{i+1}ˣ| and
    |C_iˣ C_{i+1}^{x+2⁻ⁱ⁻¹}| are bounded by c/n with c = max(2n₀, 8/ε). Once
    n ≥ n₀, points of consecutive ring arcs are also less than 6h apart;
    below n₀ the sampled ring gap is reported without a bound.

    Parameters:
        scene: the scene.
        samples: points per ring arc for the ring gap.

    Returns:
        The report.
    """
    config = scene.config
    context = config.precision.context
    n = scene.level
    zero = context.mpf(0)
    if n == 0:
        return LemmaReport("consecutive_junctions", True, {"junction_gap": zero}, {"junction_gap": zero}, "vacuous")
    n0, c = junction_constant(config.h, config.eps)
    gap = zero
    for i in range(n):
        half = Fraction(1, 2 ** (i + 1))
        for x in dyadic_indices(i):
            if x.value >= 1:
                continue
            C = scene.c(i, x)
            gap = max(gap, C.distance_to(scene.c(i + 1, x)), C.distance_to(scene.c(i + 1, x.shifted(half))))
    rings = max(ring_gap(scene, i, samples) for i in range(n))
    measured = {"junction_gap": gap, "ring_gap": rings, "n0": n0, "c": c}
    bound = {"junction_gap": c / n}
    beyond = n >= n0
    if beyond:
        bound["ring_gap"] = 6 * config.h
    # below n₀ the junction bound is the trivial |C C'| ≤ 2 ≤ c/n
    hypotheses = config.strict or not beyond
    note = f"n={n}" if beyond else f"n={n} below n0, ring gap unbounded"
    return LemmaReport("consecutive_junctions", hypotheses, measured, bound, note)


def junction_rotation_level(scene: SproutScene) -> LemmaReport:
    """The worst case of the junction rotation check over the junction points
    of the last level, each with its two circles through neighbouring tip points."""
    n = scene.level
    step = Fraction(1, 2**n)
    reports = []
    for x in dyadic_indices(n):
        if x.value >= 1:
            continue
        right = x.shifted(step)
        reports.append(
            junction_rotation_check(
                scene.tip_point(x),
                scene.tip_point(right),
                scene.c(n, x),
                scene.k0(x),
                scene.k1(right),
                scene.config.eps,
                scene.frame,
            )
        )
    return merge_reports("junction_rotation", reports, f"level {n}")


def _sprout_pair(K: Circle, A: Point, B: Point, to_A: Circle, to_B: Circle, sense: str, note: str) -> LemmaReport:
    """Runs `sprout_intersection` on K with the rotation angles about A and B
    that carry K onto `to_A` and `to_B`; rotations against `sense` leave the
    hypotheses unmet."""
    alpha = rotation_angle(A, K, to_A)
    beta = rotation_angle(B, K, to_B)
    sign = 1 if sense == POSITIVE else -1
    oriented = sign * alpha > 0 and sign * beta > 0
    try:
        _, report = sprout_intersection(K, A, B, abs(alpha), abs(beta), sense)
    except NoIntersectionError as error:
        failure = f"{note}: {error}"
        return LemmaReport(f"sprout_{sense.lower()}", oriented, {"min_meeting": 0}, {"min_meeting": 1}, failure)
    return LemmaReport(report.lemma_id, report.hypotheses_met and oriented, report.measured, report.bound, note)


def _merge_applicable(lemma_id: str, reports: List[LemmaReport]) -> LemmaReport:
    applicable = [report for report in reports if report.hypotheses_met]
    if not reports:
        return merge_reports(lemma_id, reports)
    if not applicable:
        return LemmaReport(lemma_id, False, {}, {}, f"hypotheses fail at all {len(reports)} pairs")
    merged = merge_reports(lemma_id, applicable)
    if merged.passed:
        return LemmaReport(lemma_id, True, merged.measured, merged.bound, f"{len(applicable)} of {len(reports)} pairs")
    return merged


def containing_horn_bounds(scene: SproutScene) -> List[LemmaReport]:
    """Checks that the corner of each difference of consecutive horns lies
    close to the new junction point.

    For H_{i+1}ˣ ∖ H_iˣ the circles K₁^{x+2⁻ⁱ} and K₁^{x+2⁻ⁱ⁻¹} are both
    images of K₀ˣ, under rotations about C_iˣ and C_{i+1}ˣ; their common
    point inside K₀ˣ must be nearer than 20η to C_{i+1}ˣ, where η is the angle
    under which C_iˣ C_{i+1}ˣ is seen from the center of K₀ˣ. For
    H_{i+1}ˣ ∖ H_i^{x−2⁻ⁱ⁻¹} the roles are played by K₁^{x+2⁻ⁱ⁻¹} and its
    images K₀ˣ and K₀^{x−2⁻ⁱ⁻¹}, with the common point outside and the
    bound 50η.

    Only pairs meeting the hypotheses of the sprouting step are compared;
    they hold for the deep levels of a scene with many levels.

    Parameters:
        scene: the scene.

    Returns:
        Two reports, for the inner and the outer differences.
    """
    n = scene.level
    inner = []
    outer = []
    for i in range(n):
        whole = Fraction(1, 2**i)
        half = Fraction(1, 2 ** (i + 1))
        for x in dyadic_indices(i):
            if x.value >= 1:
                continue
            K = scene.k0(x)
            A = scene.c(i + 1, x)
            B = scene.c(i, x)
            note = f"i={i}, x={x}"
            inner.append(_sprout_pair(K, A, B, scene.k1(x.shifted(half)), scene.k1(x.shifted(whole)), POSITIVE, note))
        for x in dyadic_indices(i + 1):
            if x.level != i + 1:
                continue
            y = x.shifted(-half)
            K = scene.k1(x.shifted(half))
            A = scene.c(i + 1, x)
            B = scene.c(i, y)
            note = f"i={i}, x={x}"
            outer.append(_sprout_pair(K, A, B, scene.k0(x), scene.k0(y), NEGATIVE, note))
    return [_merge_applicable("containing_horn_inner", inner), _merge_applicable("containing_horn_outer", outer)]


def scene_lemma_reports(scene: SproutScene, samples: int = RING_SAMPLES) -> List[LemmaReport]:
    """Every check that can be measured on a scene: the construction
    invariants, the α estimates per level, the β-sum, the junction distances,
    the tip chord direction, the junction rotations of the last level and the
    corners of the differences of consecutive horns."""
    reports = check_invariants(scene)
    reports += [alpha_sandwich_level(scene, i) for i in range(1, scene.level + 1)]
    reports.append(beta_sum(scene))
    reports.append(consecutive_junction_bounds(scene, samples))
    frame = scene.frame
    reports.append(chord_direction_bound(frame.tip_arc, frame.tip_arc.start, frame.tip_arc.end, frame.h, frame.eps))
    reports.append(junction_rotation_level(scene))
    reports += containing_horn_bounds(scene)
    failures = [report for report in reports if report.failed]
    logger.info("%d scene reports on %s, %d failing", len(reports), scene, len(failures))
    return reports
