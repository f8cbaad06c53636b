# File name: motion/frames.py

"""SVG snapshots of a motion plan drawn over its sprouting scene."""

from __future__ import annotations

import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple, Union

from kakeya_utils import atomic_write_text

from geometry.scalar import *
from geometry.primitives import *
from sprouting.scene import SproutScene
from motion.plan import *

logger = logging.getLogger(__name__)

#: Side of the square drawing in SVG user units.
CANVAS_SIZE = 640
#: Half-width of the window about M, in multiples of ε for strict scenes.
STRICT_WINDOW = 3
#: Half-width of the window about M for relaxed scenes.
RELAXED_WINDOW = "1.35"
#: Number of segments per drawn circle portion.
ARC_SEGMENTS = 96
DEFAULT_FRAMES = 24


class SvgCanvas:
    """A string-built SVG drawing with the y axis pointing up.

    Shapes are given in window units, where the window spans [−1, 1]² and is
    scaled to the canvas by a single group transform.
    """

    def __init__(self, size: int = CANVAS_SIZE):
        self.size = size
        self._fill = "none"
        self._stroke = "black"
        self._width = 0.004
        self._body: List[str] = []

    def stroke(self, stroke: str, width: Optional[float] = None) -> None:
        self._stroke = stroke
        if width is not None:
            self._width = width

    def fill(self, fill: str) -> None:
        self._fill = fill

    def dot(self, x: float, y: float, r: float = 0.012) -> None:
        self._body.append(f"<circle fill='{self._stroke}' cx='{x:.6g}' cy='{-y:.6g}' r='{r:g}'/>")

    def line(self, x1: float, y1: float, x2: float, y2: float) -> None:
        self._body.append(
            f"<line stroke='{self._stroke}' stroke-width='{self._width:g}'"
            f" x1='{x1:.6g}' y1='{-y1:.6g}' x2='{x2:.6g}' y2='{-y2:.6g}'/>"
        )

    def polyline(self, points: Sequence[Tuple[float, float]]) -> None:
        if len(points) < 2:
            return
        path = " L ".join(f"{x:.6g} {-y:.6g}" for x, y in points)
        self._body.append(
            f"<path fill='{self._fill}' stroke='{self._stroke}' stroke-width='{self._width:g}' d='M {path}'/>"
        )

    def text(self, x: float, y: float, text: str, size: float = 0.05) -> None:
        self._body.append(
            f"<text fill='{self._stroke}' x='{x:.6g}' y='{-y:.6g}' font-size='{size:g}'>{text}</text>"
        )

    def render(self) -> str:
        half = self.size / 2
        header = [
            "<?xml version='1.0'?>",
            f"<svg xmlns='http://www.w3.org/2000/svg' width='{self.size}' height='{self.size}'>",
            "<defs><clipPath id='window'><rect x='-1' y='-1' width='2' height='2'/></clipPath></defs>",
            f"<g transform='translate({half:g},{half:g}) scale({half:g})' clip-path='url(#window)'>",
        ]
        return "\n".join(header + self._body + ["</g>", "</svg>", ""])


def frame_window(scene: SproutScene) -> Any:
    """Half-width of the square about M shown in a frame."""
    if scene.config.strict:
        return STRICT_WINDOW * scene.config.eps
    return scene.precision.scalar(RELAXED_WINDOW)


def _to_window(p: Point, center: Point, window: Any) -> Tuple[float, float]:
    offset = (p - center).scaled(1 / window)
    return float(offset.x), float(offset.y)


def _circle_points(circle: Circle, center: Point, window: Any) -> List[Tuple[float, float]]:
    """The part of a circle near the window, as a polyline."""
    context = center.context
    reach = window * context.sqrt(2) + circle.distance_from(center)
    # stops one segment short of a full turn
    spread = context.pi * (1 - context.mpf(1) / ARC_SEGMENTS)
    if reach < circle.radius:
        spread = min(spread, 2 * context.asin(reach / circle.radius))
    middle = circle.angle_of(center)
    arc = DirectedArc(circle, middle - spread, 2 * spread)
    return _arc_points(arc, center, window)


def _arc_points(arc: DirectedArc, center: Point, window: Any) -> List[Tuple[float, float]]:
    fractions = [Fraction(k, ARC_SEGMENTS) for k in range(ARC_SEGMENTS + 1)]
    return [_to_window(arc_point_at_fraction(arc, x), center, window) for x in fractions]


def render_frame(scene: SproutScene, pose: Optional[ArcPose] = None, label: str = "") -> str:
    """Draws the scene about M, optionally with the moving arc.

    Parameters:
        scene: the scene.
        pose: the arc position to highlight.
        label: caption written in the top left corner.

    Returns:
        The SVG document.
    """
    window = frame_window(scene)
    M = scene.M
    canvas = SvgCanvas()
    canvas.stroke("#bbbbbb", 0.003)
    for circle in scene.circles():
        canvas.polyline(_circle_points(circle, M, window))
    canvas.stroke("#3366cc", 0.003)
    for i in range(1, scene.level + 1):
        canvas.polyline(_arc_points(scene.ring_arc(i), M, window))
    canvas.stroke("#cc3333", 0.004)
    canvas.polyline(_arc_points(scene.tip_arc, M, window))
    canvas.stroke("#333333")
    for point in scene.C.values():
        canvas.dot(*_to_window(point, M, window))
    if pose is not None:
        canvas.stroke("black", 0.01)
        canvas.polyline(_arc_points(pose.arc, M, window))
        canvas.dot(*_to_window(pose.head, M, window), r=0.018)
    # scale bar of half the window width
    canvas.stroke("black", 0.006)
    canvas.line(0.4, -0.9, 0.9, -0.9)
    canvas.text(0.4, -0.85, scene.precision.context.nstr(window / 2, 3))
    if label:
        canvas.text(-0.95, 0.9, label)
    return canvas.render()


def frame_times(frames: int) -> List[Fraction]:
    """k/(frames − 1) for k < frames."""
    assert frames >= 1
    if frames == 1:
        return [Fraction(0)]
    return [Fraction(k, frames - 1) for k in range(frames)]


def write_frames(
    scene: SproutScene, plan: MotionPlan, directory: Union[str, Path], frames: int = DEFAULT_FRAMES
) -> List[Path]:
    """Writes one SVG file per sampling time of the plan.

    Parameters:
        scene: the scene the plan moves through.
        plan: a non-empty plan.
        directory: output directory, created if missing.
        frames: number of frames, at evenly spaced times from 0 to 1.

    Returns:
        The written paths, ``frame_000.svg`` onwards.
    """
    precision = scene.precision
    paths = []
    for k, time in enumerate(frame_times(frames)):
        t = precision.scalar(time)
        svg = render_frame(scene, pose_at(plan, t), f"t = {precision.context.nstr(t, 4)}")
        paths.append(atomic_write_text(Path(directory) / f"frame_{k:03d}.svg", svg))
    logger.info("wrote %d frames of %s to %s", len(paths), plan, directory)
    return paths
