# File name: lemmas/oracles.py

"""Constructive steps and numeric checks for the quantitative lemmas about
unit circles, their small rotations and the arcs near the lune tip."""

from __future__ import annotations

import logging
from typing import Any, List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from geometry.scalar import *
from geometry.primitives import *
from geometry.lune import LuneFrame
from lemmas.reports import LemmaReport, merge_reports

logger = logging.getLogger(__name__)

POSITIVE = "POSITIVE"
NEGATIVE = "NEGATIVE"

#: Largest argument for which the quartic certificate is claimed.
QUARTIC_LIMIT = "1.228"
#: Coefficients of t⁴ + 4t³ − 4t² − 16t + 15.999, highest degree first.
QUARTIC_COEFFICIENTS = (1, 4, -4, -16, "15.999")

#: Configurations per sampled family in `lemma_suite`.
SUITE_SAMPLES = 200
#: Evaluation points of the quartic certificate in `lemma_suite`.
SUITE_GRID = 10**4


class NoSolutionError(GeometryError):
    """Raised when no rotation about the given point brings the circle through the target."""


class NoIntersectionError(GeometryError):
    """Raised when two rotated circles fail to meet although the hypotheses hold."""


class NotATriangleError(GeometryError):
    """Raised when three lengths violate the triangle inequality."""


class UnsortedSidesError(GeometryError):
    """Raised when triangle sides are not given in ascending order."""


def _sign(sense: str) -> int:
    assert sense in (POSITIVE, NEGATIVE), f"unknown sense {sense}"
    return 1 if sense == POSITIVE else -1


def rotate_circle_to_contain(K: Circle, Q: Point, P: Point, sense: str) -> Tuple[Circle, Any]:
    """Rotates a circle about one of its points until it passes through a target.

    Parameters:
        K: the circle to rotate.
        Q: the fixed point, on `K`.
        P: the point the rotated circle must contain.
        sense: ``POSITIVE`` for counter-clockwise rotation, ``NEGATIVE``
            for clockwise.

    Returns:
        A pair of the rotated circle, whose center is the matching common
        point of the circles of radius ``K.radius`` about `Q` and `P`, and the
        unsigned rotation angle in [0, π).
    """
    precision = K.precision
    tolerance = precision.tolerance
    assert K.contains(Q, 16 * tolerance), "the pivot must lie on the circle"
    if Q.is_close(P):
        raise DegenerateError("pivot and target coincide")
    zero = precision.scalar(0)
    if K.contains(P):
        return K, zero
    if Q.distance_to(P) > 2 * K.radius + tolerance:
        raise NoSolutionError(f"{P} is out of reach of rotations about {Q}")
    sign = _sign(sense)
    best: Optional[Tuple[Any, Point]] = None
    for center in circle_circle_intersection(Circle(Q, K.radius), Circle(P, K.radius)):
        angle = signed_angle(K.center - Q, center - Q)
        if sign * angle < -tolerance:
            continue
        if best is None or abs(angle) < abs(best[0]):
            best = (angle, center)
    if best is None:
        raise NoSolutionError(f"no {sense.lower()} rotation about {Q} reaches {P}")
    return Circle(best[1], K.radius), abs(best[0])


def check_lemma1(K: Circle, Q: Point, P: Point, sense: str) -> LemmaReport:
    """Checks the bounds on a rotation bringing a unit circle through a nearby point.

    With d the distance of `P` from `K`, the hypotheses are d < 1/2, a
    positively oriented triangle P, center, Q, and either `P` inside with
    |PQ| ≥ 2√d (``POSITIVE`` sense) or `P` outside with 3√d ≤ |PQ| ≤ 2 − d
    (``NEGATIVE`` sense). The conclusions are sin α < 2√d and a center
    displacement below 4√d.

    Parameters:
        K: unit circle.
        Q: pivot on `K`.
        P: target point.
        sense: rotation sense.

    Returns:
        The report.
    """
    precision = K.precision
    context = precision.context
    tolerance = precision.tolerance
    O = K.center
    radial = O.distance_to(P)
    d = abs(radial - 1)
    pq = P.distance_to(Q)
    root = context.sqrt(d)
    if d <= tolerance:
        hypotheses = True
    else:
        interior = radial < 1
        if sense == POSITIVE:
            case_holds = interior and pq >= 2 * root
        else:
            case_holds = (not interior) and 3 * root <= pq <= 2 - d
        hypotheses = (
            abs(K.radius - 1) <= tolerance
            and K.contains(Q, 16 * tolerance)
            and d < precision.scalar("0.5")
            and orientation(P, O, Q) > 0
            and case_holds
        )
    try:
        rotated, alpha = rotate_circle_to_contain(K, Q, P, sense)
    except (NoSolutionError, DegenerateError) as error:
        logger.debug("rotation not realizable: %s", error)
        return LemmaReport("lemma1_rotation", False, {"d": d}, {}, str(error))
    measured = {
        "alpha": alpha,
        "sin_alpha": context.sin(alpha),
        "center_shift": O.distance_to(rotated.center),
        "containment_gap": rotated.distance_from(P),
        "d": d,
    }
    bound = {"sin_alpha": 2 * root, "center_shift": 4 * root, "containment_gap": 16 * tolerance}
    return LemmaReport("lemma1_rotation", hypotheses, measured, bound, sense)


def sprout_intersection(
    K: Circle, A: Point, B: Point, alpha: Any, beta: Any, sense: str
) -> Tuple[Optional[Point], LemmaReport]:
    """Rotates a unit circle about two of its points by two small angles and
    locates the common point of the two images next to the arc between them.

    Parameters:
        K: unit circle with center O.
        A: first point of `K`.
        B: second point of `K`, counter-clockwise from `A` as seen from O.
        alpha: rotation angle about `A`.
        beta: rotation angle about `B`.
        sense: rotation sense of both rotations.

    Returns:
        The common point on the side of the line of the two new centers where
        `A` and `B` lie (``None`` if the images do not meet and the hypotheses
        fail), and a report bounding its distance from `A` by 20η
        (``POSITIVE``) or 50η (``NEGATIVE``), where η = ∠BOA, and checking
        that it lies inside (``POSITIVE``) or outside (``NEGATIVE``) `K`.
    """
    precision = K.precision
    context = precision.context
    tolerance = precision.tolerance
    sign = _sign(sense)
    alpha = precision.scalar(alpha)
    beta = precision.scalar(beta)
    O = K.center
    eta = abs(signed_angle(A - O, B - O))
    eta_limit = precision.scalar(1) / (5 if sense == POSITIVE else 10)
    hypotheses = (
        abs(K.radius - 1) <= tolerance
        and K.contains(A, 16 * tolerance)
        and K.contains(B, 16 * tolerance)
        and orientation(O, A, B) > 0
        and eta < eta_limit
        and 0 < alpha < 3 * beta / 4
        and beta < eta
    )
    rotated_about_A = Circle(rotate_point(O, A, sign * alpha), K.radius)
    rotated_about_B = Circle(rotate_point(O, B, sign * beta), K.radius)
    try:
        candidates = circle_circle_intersection(rotated_about_A, rotated_about_B)
    except IdenticalCirclesError:
        candidates = []
    side = orientation(rotated_about_A.center, rotated_about_B.center, A)
    chosen = [p for p in candidates if orientation(rotated_about_A.center, rotated_about_B.center, p) * side > 0]
    if not chosen:
        if hypotheses:
            raise NoIntersectionError(f"rotated circles about {A} and {B} do not meet")
        return None, LemmaReport(f"sprout_{sense.lower()}", False, {"eta": eta}, {}, "no intersection")
    P = chosen[0]
    gap = O.distance_to(P) - K.radius
    factor = 20 if sense == POSITIVE else 50
    measured = {"distance_PA": P.distance_to(A), "eta": eta}
    bound = {"distance_PA": factor * eta}
    if sense == POSITIVE:
        measured["radius_gap"] = gap
        bound["radius_gap"] = context.mpf(0)
    else:
        measured["min_radius_gap"] = gap
        bound["min_radius_gap"] = context.mpf(0)
    return P, LemmaReport(f"sprout_{sense.lower()}", hypotheses, measured, bound)


def chord_direction_bound(scene_tip_arc: DirectedArc, q1: Point, q2: Point, h: Any, eps: Any) -> LemmaReport:
    """Bounds the angle between a chord of the tip arc and the y axis by h + ε.

    Parameters:
        scene_tip_arc: the radius-ε arc about M inside the left lune.
        q1: first chord endpoint, on the arc.
        q2: second chord endpoint, on the arc.
        h: crossing angle of the lune.
        eps: radius of the tip arc.

    Returns:
        The report.
    """
    if q1.is_close(q2):
        raise DegenerateError("chord endpoints coincide")
    context = q1.context
    tolerance = q1.precision.tolerance
    hypotheses = scene_tip_arc.contains(q1, 16 * tolerance) and scene_tip_arc.contains(q2, 16 * tolerance)
    direction = q2 - q1
    angle = context.atan2(abs(direction.x), abs(direction.y))
    return LemmaReport("tip_chord_direction", hypotheses, {"angle": angle}, {"angle": h + eps})


def junction_rotation_check(
    Qp: Point, Qpp: Point, C: Point, Kp: Circle, Kpp: Circle, eps: Any, frame: LuneFrame
) -> LemmaReport:
    """Checks the rotation about a junction point that carries one unit circle
    through the tip arc onto another.

    With ρ the rotation about `C` mapping `Kpp` onto `Kp`, the conclusions are
    that its angle is below ε and that the line through `Qp` and ρ(`Qpp`)
    makes an angle below 6ε with the x axis.

    Parameters:
        Qp: upper point of the tip arc, on `Kp`.
        Qpp: lower point of the tip arc, on `Kpp`.
        C: junction point in the right lune, on both circles.
        Kp: unit circle through `Qp` and `C`.
        Kpp: unit circle through `Qpp` and `C`.
        eps: radius of the tip arc; both bounds scale with it.
        frame: the lune of radius `eps` the points live in. The lune also
            depends on the crossing angle h, which the other arguments do
            not determine.

    Returns:
        The report.
    """
    precision = frame.precision
    context = precision.context
    tolerance = 16 * precision.tolerance
    eps = precision.scalar(eps)
    assert abs(eps - frame.eps) <= precision.tolerance, f"the lune has tip radius {frame.eps}, not {eps}"
    hypotheses = (
        frame.in_lune0(Qp, tolerance)
        and frame.in_lune0(Qpp, tolerance)
        and frame.tip_arc.contains(Qp, tolerance)
        and frame.tip_arc.contains(Qpp, tolerance)
        and Qp.y >= Qpp.y
        and frame.in_lune1(C, tolerance)
        and C.distance_to(frame.M) <= 2 - 5 * eps
        and abs(Kp.radius - 1) <= tolerance
        and abs(Kpp.radius - 1) <= tolerance
        and Kp.contains(Qp, tolerance)
        and Kp.contains(C, tolerance)
        and Kpp.contains(Qpp, tolerance)
        and Kpp.contains(C, tolerance)
        and Kp.center.distance_to(frame.origin) < eps
        and Kpp.center.distance_to(frame.origin) < eps
    )
    angle = rotation_angle(C, Kpp, Kp)
    image = rotate_point(Qpp, C, angle)
    direction = image - Qp
    if direction.norm() <= precision.tolerance:
        line_angle = context.mpf(0)
    else:
        line_angle = context.atan2(abs(direction.y), abs(direction.x))
    measured = {"alpha": abs(angle), "line_angle": line_angle}
    return LemmaReport("junction_rotation", hypotheses, measured, {"alpha": eps, "line_angle": 6 * eps})


def smallest_angle_bound(a: Any, b: Any, c: Any) -> LemmaReport:
    """Checks that the angle opposite the shortest side a of a triangle with
    sides a ≤ b ≤ c is below 2a/c.

    Parameters:
        a: shortest side.
        b: middle side.
        c: longest side.

    Returns:
        The report.
    """
    if not (a <= b <= c):
        raise UnsortedSidesError(f"sides must be ascending, got {a}, {b}, {c}")
    if a <= 0 or a + b < c:
        raise NotATriangleError(f"{a}, {b}, {c} do not form a triangle")
    context = a.context
    cosine = (b * b + c * c - a * a) / (2 * b * c)
    angle = context.acos(max(min(cosine, context.mpf(1)), context.mpf(-1)))
    return LemmaReport("smallest_angle", True, {"angle": angle}, {"angle": 2 * a / c})


def polynomial_certificate(t_max: Any, grid: int, precision: Optional[Precision] = None) -> LemmaReport:
    """Checks that t⁴ + 4t³ − 4t² − 16t + 15.999 stays non-negative on (0, t_max].

    Parameters:
        t_max: right end of the interval, at most 1.228.
        grid: number of uniformly spaced evaluation points, at least 2.
        precision: profile of the evaluation; defaults to the profile of
            `t_max` when it is a scalar, HARDWARE otherwise.

    Returns:
        A report whose ``min_value`` is the smallest value over the grid and
        the real critical points inside the interval.
    """
    if precision is None:
        precision = Precision.of(t_max) if hasattr(t_max, "context") else Precision.hardware()
    context = precision.context
    t_max = precision.scalar(t_max)
    assert t_max <= precision.scalar(QUARTIC_LIMIT), "the certificate is claimed up to 1.228 only"
    assert grid >= 2
    coefficients = [precision.scalar(value) for value in QUARTIC_COEFFICIENTS]
    derivative = [4 * coefficients[0], 3 * coefficients[1], 2 * coefficients[2], coefficients[3]]
    points = [t_max * j / grid for j in range(1, grid + 1)]
    for root in context.polyroots(derivative, maxsteps=200, extraprec=precision.bits):
        if abs(context.im(root)) <= precision.tolerance and 0 < context.re(root) <= t_max:
            points.append(context.re(root))
    values = [(context.polyval(coefficients, t), t) for t in points]
    minimum, argument = min(values)
    return LemmaReport(
        "quartic_certificate",
        True,
        {"min_value": minimum, "argmin": argument},
        {"min_value": context.mpf(0)},
        f"{len(points)} points",
    )


def sample_lemma1_configuration(
    case: str, rng: np.random.Generator, precision: Precision
) -> Tuple[Circle, Point, Point, str]:
    """Draws a configuration meeting the hypotheses of the rotation lemma.

    Parameters:
        case: ``'interior'`` or ``'exterior'``.
        rng: source of randomness.
        precision: profile of the returned geometry.

    Returns:
        A unit circle, a pivot on it, a target point and the matching sense.
    """
    assert case in ("interior", "exterior")
    margin = 1e-6
    if case == "interior":
        d = rng.uniform(1e-3, 0.49)
        radial = 1 - d
        low, high = 2 * np.sqrt(d), 2 - d
    else:
        d = rng.uniform(1e-3, 0.3)
        radial = 1 + d
        low, high = 3 * np.sqrt(d), 2 - d
    length = rng.uniform(low + margin, high - margin)
    spread = np.arccos(np.clip((1 + radial * radial - length * length) / (2 * radial), -1.0, 1.0))
    phase = rng.uniform(-np.pi, np.pi)
    cx, cy = rng.uniform(-2, 2, size=2)
    context = precision.context
    center = Point.of(precision, cx, cy)
    phase_scalar = precision.scalar(phase)
    spread_scalar = precision.scalar(spread)
    K = Circle(center, 1)
    Q = K.point_at(phase_scalar - spread_scalar)
    P = center + Point(context.cos(phase_scalar), context.sin(phase_scalar)).scaled(precision.scalar(radial))
    return K, Q, P, POSITIVE if case == "interior" else NEGATIVE


def _lemma1_trial(case: str, seed: np.random.SeedSequence, precision: Precision) -> LemmaReport:
    K, Q, P, sense = sample_lemma1_configuration(case, np.random.default_rng(seed), precision)
    return check_lemma1(K, Q, P, sense)


def lemma1_campaign(
    case: str, count: int, seed: int = 42, precision: Optional[Precision] = None, workers: int = 1
) -> List[LemmaReport]:
    """Runs the rotation-lemma check on many sampled configurations.

    Parameters:
        case: ``'interior'`` or ``'exterior'``.
        count: number of configurations.
        seed: root seed; configuration k always uses the k-th spawned stream.
        precision: profile; HARDWARE by default.
        workers: joblib worker threads.

    Returns:
        One report per configuration, in sampling order.
    """
    if precision is None:
        precision = Precision.hardware()
    streams = np.random.SeedSequence(seed).spawn(count)
    logger.info("rotation campaign: %d %s configurations, seed %d", count, case, seed)
    return Parallel(n_jobs=workers, prefer="threads")(
        delayed(_lemma1_trial)(case, stream, precision) for stream in streams
    )


def sample_sprout_configuration(
    sense: str, rng: np.random.Generator, precision: Precision
) -> Tuple[Circle, Point, Point, Any, Any]:
    """Draws a configuration meeting the hypotheses of `sprout_intersection`.

    Parameters:
        sense: ``POSITIVE`` or ``NEGATIVE``; the negative sense needs the
            points closer together.
        rng: source of randomness.
        precision: profile of the returned geometry.

    Returns:
        A unit circle, two of its points A and B with B counter-clockwise
        from A, and the rotation angles α < 3β/4 and β < η.
    """
    limit = 0.2 if _sign(sense) > 0 else 0.1
    eta = rng.uniform(0.01, 0.95 * limit)
    beta = eta * rng.uniform(0.1, 0.9)
    alpha = beta * rng.uniform(0.1, 0.7)
    phase = precision.scalar(rng.uniform(-np.pi, np.pi))
    cx, cy = rng.uniform(-2, 2, size=2)
    K = Circle(Point.of(precision, cx, cy), 1)
    A = K.point_at(phase)
    B = K.point_at(phase + precision.scalar(eta))
    return K, A, B, precision.scalar(alpha), precision.scalar(beta)


def _sprout_trial(sense: str, seed: np.random.SeedSequence, precision: Precision) -> LemmaReport:
    K, A, B, alpha, beta = sample_sprout_configuration(sense, np.random.default_rng(seed), precision)
    try:
        _, report = sprout_intersection(K, A, B, alpha, beta, sense)
    except NoIntersectionError as error:
        logger.warning("sprouting failed: %s", error)
        return LemmaReport(f"sprout_{sense.lower()}", True, {"min_meeting": 0}, {"min_meeting": 1}, str(error))
    return report


def sprout_campaign(
    sense: str, count: int, seed: int = 42, precision: Optional[Precision] = None, workers: int = 1
) -> List[LemmaReport]:
    """Runs `sprout_intersection` on sampled configurations of one sense,
    the k-th configuration drawn from the k-th spawned stream of `seed`."""
    if precision is None:
        precision = Precision.hardware()
    streams = np.random.SeedSequence(seed).spawn(count)
    logger.info("sprouting campaign: %d %s configurations, seed %d", count, sense.lower(), seed)
    return Parallel(n_jobs=workers, prefer="threads")(
        delayed(_sprout_trial)(sense, stream, precision) for stream in streams
    )


def sample_triangle(rng: np.random.Generator, precision: Precision) -> Tuple[Any, Any, Any]:
    """The ascending side lengths of a triangle with uniformly drawn corners."""
    corners = [Point.of(precision, x, y) for x, y in rng.uniform(-1, 1, size=(3, 2))]
    a, b, c = sorted(corners[i].distance_to(corners[(i + 1) % 3]) for i in range(3))
    return a, b, c


def smallest_angle_campaign(
    count: int, seed: int = 42, precision: Optional[Precision] = None
) -> List[LemmaReport]:
    if precision is None:
        precision = Precision.hardware()
    return [
        smallest_angle_bound(*sample_triangle(np.random.default_rng(stream), precision))
        for stream in np.random.SeedSequence(seed).spawn(count)
    ]


def lemma_suite(
    seed: int = 42, count: int = SUITE_SAMPLES, precision: Optional[Precision] = None, workers: int = 1
) -> List[LemmaReport]:
    """The checks that need no scene: the quartic certificate on (0, 1.228],
    and each sampled campaign merged into its worst case.

    Parameters:
        seed: root seed of every campaign.
        count: configurations per campaign.
        precision: profile; HARDWARE by default.
        workers: joblib worker threads.

    Returns:
        The quartic report followed by one merged report each for the interior
        and exterior rotations, the positive and negative sprouting and the
        smallest triangle angle.
    """
    if precision is None:
        precision = Precision.hardware()
    reports = [polynomial_certificate(QUARTIC_LIMIT, SUITE_GRID, precision)]
    for case in ("interior", "exterior"):
        reports.append(merge_reports(f"rotation_{case}", lemma1_campaign(case, count, seed, precision, workers)))
    for sense in (POSITIVE, NEGATIVE):
        campaign = sprout_campaign(sense, count, seed, precision, workers)
        reports.append(merge_reports(f"sprout_{sense.lower()}", campaign))
    reports.append(merge_reports("smallest_angle", smallest_angle_campaign(count, seed, precision)))
    return reports
