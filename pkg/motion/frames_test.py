# File name: motion/frames_test.py

"""Tests for the motion.frames module."""

import tempfile
from pathlib import Path

from geometry.scalar import *
from sprouting.scene_test import strict_scene, relaxed_scene
from motion.plan import *
from motion.frames import *


def test_canvas(debug=False):
    canvas = SvgCanvas(100)
    canvas.stroke("red", 0.01)
    canvas.line(0, 0, 0.5, 0.5)
    canvas.dot(0.25, -0.5)
    canvas.polyline([(0, 0)])
    canvas.text(0, 0, "label")
    svg = canvas.render()
    if debug:
        print(svg)
    assert svg.startswith("<?xml")
    # the y axis points up
    assert "y2='-0.5'" in svg and "cy='0.5'" in svg
    assert "<path" not in svg
    assert "scale(50)" in svg and svg.rstrip().endswith("</svg>")


def test_render_frame(debug=False):
    scene = relaxed_scene(2)
    plan = build_motion_plan(scene)
    svg = render_frame(scene, plan.start_pose, "t = 0")
    if debug:
        print("Testing a frame of", plan)
    assert svg.count("<path") == len(scene.circles()) + 2 + 1 + 1
    assert "t = 0" in svg
    assert render_frame(scene, plan.start_pose, "t = 0") == svg
    assert render_frame(scene).count("<path") == len(scene.circles()) + 3
    assert frame_window(scene) == scene.precision.scalar("1.35")
    strict = strict_scene(1)
    assert frame_window(strict) == 3 * strict.config.eps
    assert "nan" not in render_frame(strict, build_motion_plan(strict).end_pose)


def test_write_frames(debug=False):
    scene = relaxed_scene(1)
    plan = build_motion_plan(scene)
    with tempfile.TemporaryDirectory() as directory:
        paths = write_frames(scene, plan, Path(directory) / "frames", frames=5)
        if debug:
            print("Testing", paths)
        assert [path.name for path in paths] == [f"frame_{k:03d}.svg" for k in range(5)]
        assert all(path.read_text(encoding="utf-8").startswith("<?xml") for path in paths)
        assert "t = 0.5" in paths[2].read_text(encoding="utf-8")
    assert frame_times(1) == [0] and frame_times(3)[-1] == 1


def test_all(debug=False):
    test_canvas(debug)
    test_render_frame(debug)
    test_write_frames(debug)
