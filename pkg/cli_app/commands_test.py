# File name: cli_app/commands_test.py

"""Tests for the cli_app.commands module."""

import json
import tempfile
from pathlib import Path

from sprouting.scene_test import strict_scene
from sprouting.scene import check_invariants
from cli_app.arguments import *
from cli_app.commands import *


def _run(argv, debug=False):
    status = main(argv)
    if debug:
        print("Testing", " ".join(argv), "->", status)
    return status


def test_sprout_and_plan(debug=False):
    with tempfile.TemporaryDirectory() as directory:
        scene_path = Path(directory) / "scene.json"
        assert _run(["sprout", "--relaxed", "--n", "2", "--out", str(scene_path)], debug) == EXIT_OK
        scene = json.loads(scene_path.read_text(encoding="utf-8"))
        assert scene["config"]["n"] == 2
        plan_path = Path(directory) / "plan.json"
        assert _run(["plan", "--relaxed", "--n", "2", "--out", str(plan_path)], debug) == EXIT_OK
        first = plan_path.read_text(encoding="utf-8")
        assert len(json.loads(first)["steps"]) == 15
        assert _run(["plan", "--relaxed", "--n", "2", "--out", str(plan_path)], debug) == EXIT_OK
        assert plan_path.read_text(encoding="utf-8") == first
        assert _run(["plan", "--relaxed", "--n", "1", "--depth", "1", "--out", str(plan_path)], debug) == EXIT_OK
        assert len(json.loads(plan_path.read_text(encoding="utf-8"))["steps"]) == 13


def test_verify(debug=False):
    with tempfile.TemporaryDirectory() as directory:
        path = Path(directory) / "reports.json"
        assert _run(["verify", "--n", "2", "--out", str(path)], debug) == EXIT_OK
        reports = json.loads(path.read_text(encoding="utf-8"))
        assert reports and not any(report["hypotheses_met"] and not report["pass"] for report in reports)
        names = {report["lemma_id"] for report in reports}
        for name in [
            "quartic_certificate",
            "rotation_interior",
            "rotation_exterior",
            "sprout_positive",
            "sprout_negative",
            "smallest_angle",
            "containing_horn_inner",
            "containing_horn_outer",
            "junction_rotation",
        ]:
            assert name in names, f"{name} is missing from the verification suite"
        suite = [report for report in reports if report["lemma_id"] in ("quartic_certificate", "smallest_angle")]
        assert all(report["pass"] for report in suite)
        assert _run(["verify", "--n", "2", "--inject-fault", "--out", str(path)], debug) == EXIT_VERIFICATION_FAILED
        reports = json.loads(path.read_text(encoding="utf-8"))
        assert any(not report["pass"] and report["hypotheses_met"] for report in reports)
        # hypotheses fail in the relaxed regime, which is not a violation
        assert _run(["verify", "--relaxed", "--n", "2", "--out", str(path)], debug) == EXIT_OK


def test_faulty_scene(debug=False):
    scene = strict_scene(1)
    faulty = faulty_scene(scene)
    if debug:
        print("Testing", faulty)
    assert any(report.failed for report in check_invariants(faulty))
    assert not any(report.failed for report in check_invariants(scene))
    reports = check_invariants(faulty)
    summary = verification_summary(reports).splitlines()
    failed = sum(report.failed for report in reports)
    assert failed >= 1 and summary[:-1] == [repr(report) for report in reports]
    assert f" {failed} failed," in summary[-1] and summary[-1].startswith(f"{len(reports)} checks: ")


def test_area_and_render(debug=False):
    with tempfile.TemporaryDirectory() as directory:
        csv_path = Path(directory) / "area.csv"
        argv = ["area", "--relaxed", "--n", "0,1,2", "--samples", "2000", "--out", str(csv_path)]
        assert _run(argv, debug) == EXIT_OK
        lines = csv_path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "n,area,stderr,samples,analytic_bound,runtime_seconds" and len(lines) == 4
        assert lines[1].startswith("0,0,0,2000,")
        first = csv_path.read_text(encoding="utf-8")
        assert _run(argv, debug) == EXIT_OK
        assert csv_path.read_text(encoding="utf-8") == first
        frames = Path(directory) / "frames"
        assert _run(["render", "--relaxed", "--n", "1", "--frames", "3", "--out", str(frames)], debug) == EXIT_OK
        assert sorted(path.name for path in frames.iterdir()) == ["frame_000.svg", "frame_001.svg", "frame_002.svg"]


def test_theorem1(debug=False):
    with tempfile.TemporaryDirectory() as directory:
        path = Path(directory) / "chain.json"
        argv = ["theorem1", "--relaxed", "--n", "1", "--distance", "3", "--budget", "1", "--out", str(path)]
        assert _run(argv, debug) == EXIT_OK
        chain = json.loads(path.read_text(encoding="utf-8"))
        assert len(chain["circles"]) == 3


def test_exit_codes(debug=False):
    assert _run([], debug) == EXIT_USAGE
    assert _run(["sprout", "--bogus"], debug) == EXIT_USAGE
    assert _run(["sprout", "--strict", "--eps", "1e-5"], debug) == EXIT_USAGE
    with tempfile.TemporaryDirectory() as directory:
        path = Path(directory) / "plan.json"
        assert _run(["plan", "--relaxed", "--arc-len", "1.4", "--out", str(path)], debug) == EXIT_USAGE
        assert _run(["plan", "--n", "1", "--depth", "1", "--out", str(path)], debug) == EXIT_CONSTRUCTION_FAILED
        assert not path.exists()


def test_all(debug=False):
    test_sprout_and_plan(debug)
    test_verify(debug)
    test_faulty_scene(debug)
    test_area_and_render(debug)
    test_theorem1(debug)
    test_exit_codes(debug)
