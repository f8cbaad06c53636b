# File name: cli_app/commands.py

"""Runs the experiments of the ``kakeya`` tool and maps their failures to exit
statuses."""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from kakeya_utils import atomic_write_text, configure_logging

from geometry.primitives import *
from lemmas.reports import LemmaReport, reports_to_json
from lemmas.oracles import lemma_suite
from lemmas.scene_bounds import scene_lemma_reports
from sprouting.config import DyadicIndex, InvalidConfigError
from sprouting.scene import ConstructionFailedError, SproutScene, build_scene
from motion.plan import *
from motion.refine import RecursionInfeasibleError, refine_plan
from motion.chain import DegenerateChainError, compose_theorem1
from motion.frames import write_frames
from area.convergence import convergence_study, rows_to_csv
from cli_app.arguments import *

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION_FAILED = 3

#: Head angle of the start and end arcs of ``theorem1`` on their circles.
THEOREM1_HEAD_ANGLE = "1.5"


def _write(spec: ExperimentSpec, text: str) -> None:
    if spec.output_path == STDOUT:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        path = atomic_write_text(spec.output_path, text)
        logger.info("wrote %s", path)


def faulty_scene(scene: SproutScene) -> SproutScene:
    """The scene with its middle K₀ circle displaced by 2ε, so that the
    center offset check fails."""
    index = DyadicIndex(1, 1) if scene.level >= 1 else DyadicIndex(0, 0)
    circle = scene.k0(index)
    eps = scene.config.eps
    displaced = Circle(circle.center + Point(2 * eps, 0 * eps), circle.radius)
    return scene.replacing_circle("K0", index, displaced)


def verification_summary(reports: Sequence[LemmaReport]) -> str:
    """One line per report, then the counts."""
    lines = [repr(report) for report in reports]
    failed = sum(report.failed for report in reports)
    skipped = sum(not report.hypotheses_met for report in reports)
    lines.append(f"{len(reports)} checks: {len(reports) - failed - skipped} passed, {failed} failed, {skipped} n/a")
    return "\n".join(lines) + "\n"


def _plan(spec: ExperimentSpec, scene: SproutScene) -> MotionPlan:
    plan = build_motion_plan(scene, spec.arc_len)
    if spec.depth > 0:
        plan = refine_plan(plan, scene, spec.depth)
    return plan


def _theorem1(spec: ExperimentSpec) -> str:
    config = spec.config
    precision = config.precision
    head = precision.scalar(THEOREM1_HEAD_ANGLE)

    def hanging(x) -> ArcPose:
        return ArcPose(DirectedArc(Circle(Point(x, 0 * x), 1), head, -spec.arc_len))

    start = hanging(precision.scalar(0))
    end = hanging(spec.distance)
    chain = compose_theorem1(start, end, spec.budget, config.eps, config.n)
    return chain.dumps()


def run_command(spec: ExperimentSpec) -> int:
    """Runs one experiment and writes its artifact.

    Parameters:
        spec: the experiment.

    Returns:
        0 on success, 1 if a lemma bound is violated while its hypotheses
        hold, 2 for an experiment that cannot be run with these parameters
        and 3 if a construction fails.
    """
    logger.info("running %s", spec)
    try:
        if spec.command == THEOREM1:
            _write(spec, _theorem1(spec) + "\n")
            return EXIT_OK
        if spec.command == AREA:
            rows = convergence_study(spec.config, spec.n_list, spec.samples, spec.seed, timings=spec.timings)
            _write(spec, rows_to_csv(rows))
            return EXIT_OK
        scene = build_scene(spec.config)
        if spec.command == SPROUT:
            _write(spec, scene.dumps() + "\n")
        elif spec.command == VERIFY:
            if spec.inject_fault:
                scene = faulty_scene(scene)
            reports = scene_lemma_reports(scene) + lemma_suite(spec.seed, precision=scene.precision)
            _write(spec, reports_to_json(reports) + "\n")
            sys.stderr.write(verification_summary(reports))
            if any(report.failed for report in reports):
                return EXIT_VERIFICATION_FAILED
        elif spec.command == PLAN:
            _write(spec, _plan(spec, scene).dumps() + "\n")
        elif spec.command == RENDER:
            paths = write_frames(scene, _plan(spec, scene), Path(spec.output_path), spec.frames)
            logger.info("wrote %d frames to %s", len(paths), spec.output_path)
        return EXIT_OK
    except (ConstructionFailedError, RecursionInfeasibleError, DegenerateChainError) as error:
        sys.stderr.write(f"[error] construction failed: {error}\n")
        return EXIT_CONSTRUCTION_FAILED
    except (InvalidConfigError, SceneIncompleteError, ArcTooLongError, GeometryError) as error:
        sys.stderr.write(f"[error] {error}\n")
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        spec = parse_args(argv)
    except UsageError as error:
        sys.stderr.write(error.usage)
        sys.stderr.write(f"[error] {error}\n")
        return EXIT_USAGE
    configure_logging(spec.verbosity)
    return run_command(spec)
