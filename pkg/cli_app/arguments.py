# File name: cli_app/arguments.py

"""Command-line arguments of the ``kakeya`` tool and the experiment request
they describe."""

from __future__ import annotations

import argparse
from typing import Any, List, Optional, Sequence, Tuple

from kakeya_utils import frozen

from geometry.scalar import Precision
from sprouting.config import DEFAULT_R, InvalidConfigError, SproutConfig
from motion.plan import ARC_LENGTH_DEFAULT
from motion.frames import DEFAULT_FRAMES
from area.estimates import DEFAULT_SAMPLES, DEFAULT_SEED, MIN_SAMPLES

SPROUT, VERIFY, PLAN, AREA, RENDER, THEOREM1 = "SPROUT", "VERIFY", "PLAN", "AREA", "RENDER", "THEOREM1"
COMMANDS = (SPROUT, VERIFY, PLAN, AREA, RENDER, THEOREM1)

JSON, CSV, SVG = "JSON", "CSV", "SVG"

#: The only format each command writes.
COMMAND_FORMATS = {SPROUT: JSON, VERIFY: JSON, PLAN: JSON, AREA: CSV, RENDER: SVG, THEOREM1: JSON}

#: Standard output, for the formats written to a single file.
STDOUT = "-"
DEFAULT_FRAME_DIRECTORY = "frames"

STRICT_DEFAULTS = ("9e-10", "9e-7")
RELAXED_DEFAULTS = ("1e-3", "0.05")
DEFAULT_LEVELS = 4
DEFAULT_DISTANCE = "5"
DEFAULT_BUDGET = "0.1"


class UsageError(ValueError):
    """Raised for command lines that do not describe a valid experiment."""

    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage


@frozen
class ExperimentSpec:
    """One run of the command-line tool.

    Attributes:
        command (`str`): one of `COMMANDS`.
        config (`~sprouting.config.SproutConfig`): the construction; for
            ``AREA`` its level count is the first entry of `n_list`.
        arc_len: length of the moved arc.
        n_list (`~typing.Tuple`\\[`int`, ...]): level counts; a single entry
            except for ``AREA``.
        samples (`int`): Monte Carlo sample count.
        seed (`int`): root seed.
        depth (`int`): refinement depth of motion plans.
        output_path (`str`): output file, or directory of ``RENDER`` frames.
        format (`str`): ``'JSON'``, ``'CSV'`` or ``'SVG'``.
        frames (`int`): number of rendered frames.
        inject_fault (`bool`): whether ``VERIFY`` displaces one circle.
        timings (`bool`): whether ``AREA`` records wall times.
        distance: distance between the start and end centers of ``THEOREM1``.
        budget: per-link area budget of ``THEOREM1``.
        verbosity (`int`): logging verbosity.
    """

    command: str
    config: SproutConfig
    arc_len: Any
    n_list: Tuple[int, ...]
    samples: int
    seed: int
    depth: int
    output_path: str
    format: str
    frames: int
    inject_fault: bool
    timings: bool
    distance: Any
    budget: Any
    verbosity: int

    def __init__(
        self,
        command: str,
        config: SproutConfig,
        arc_len: Any = ARC_LENGTH_DEFAULT,
        n_list: Optional[Sequence[int]] = None,
        samples: int = DEFAULT_SAMPLES,
        seed: int = DEFAULT_SEED,
        depth: int = 0,
        output_path: Optional[str] = None,
        format: Optional[str] = None,
        frames: int = DEFAULT_FRAMES,
        inject_fault: bool = False,
        timings: bool = False,
        distance: Any = DEFAULT_DISTANCE,
        budget: Any = DEFAULT_BUDGET,
        verbosity: int = 0,
    ):
        assert command in COMMANDS, f"unknown command {command}"
        precision = config.precision
        if n_list is None:
            n_list = (config.n,)
        if format is None:
            format = COMMAND_FORMATS[command]
        if output_path is None:
            output_path = DEFAULT_FRAME_DIRECTORY if command == RENDER else STDOUT
        assert len(n_list) > 0 and (command == AREA or len(n_list) == 1)
        assert config.n == n_list[0]
        assert format == COMMAND_FORMATS[command], f"{command} writes {COMMAND_FORMATS[command]}"
        assert samples >= MIN_SAMPLES and depth >= 0 and frames > 0
        assert command != RENDER or output_path != STDOUT
        self.command = command
        self.config = config
        self.arc_len = precision.scalar(arc_len)
        self.n_list = tuple(n_list)
        self.samples = samples
        self.seed = seed
        self.depth = depth
        self.output_path = output_path
        self.format = format
        self.frames = frames
        self.inject_fault = bool(inject_fault)
        self.timings = bool(timings)
        self.distance = precision.scalar(distance)
        self.budget = precision.scalar(budget)
        self.verbosity = verbosity

    def to_argv(self) -> List[str]:
        """An argument list that `parse_args` maps back to this spec."""
        config = self.config
        render = config.precision.render
        argv = [
            self.command.lower(),
            "--strict" if config.strict else "--relaxed",
            "--h",
            render(config.h),
            "--eps",
            render(config.eps),
            "--n",
            ",".join(str(n) for n in self.n_list),
            "--R",
            render(config.R),
            "--precision",
            str(config.precision),
            "--arc-len",
            render(self.arc_len),
            "--samples",
            str(self.samples),
            "--seed",
            str(self.seed),
            "--depth",
            str(self.depth),
            "--out",
            self.output_path,
            "--format",
            self.format.lower(),
            "--frames",
            str(self.frames),
            "--distance",
            render(self.distance),
            "--budget",
            render(self.budget),
        ]
        if self.inject_fault:
            argv.append("--inject-fault")
        if self.timings:
            argv.append("--timings")
        argv += ["-v"] * self.verbosity
        return argv

    def _key(self) -> tuple:
        render = self.config.precision.render
        return (
            self.command,
            self.config,
            render(self.arc_len),
            self.n_list,
            self.samples,
            self.seed,
            self.depth,
            self.output_path,
            self.format,
            self.frames,
            self.inject_fault,
            self.timings,
            render(self.distance),
            render(self.budget),
            self.verbosity,
        )

    def __repr__(self) -> str:
        return f"ExperimentSpec({self.command}, {self.config}, n={list(self.n_list)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExperimentSpec) and self._key() == other._key()

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __hash__(self) -> int:
        return hash(self._key())


class _Parser(argparse.ArgumentParser):
    """An argument parser that raises `UsageError` instead of exiting."""

    def error(self, message: str):
        raise UsageError(message, self.format_usage())


def _levels(text: str) -> List[int]:
    try:
        levels = [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"level counts must be comma-separated integers, got '{text}'")
    if any(n < 0 for n in levels) or levels != sorted(levels):
        raise argparse.ArgumentTypeError(f"level counts must be non-negative and ascending, got '{text}'")
    return levels


def _precision(text: str) -> Precision:
    try:
        return Precision.parse(text)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error))


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    regime = common.add_mutually_exclusive_group()
    regime.add_argument(
        "--strict", dest="strict", action="store_true", default=True, help="Enforce ε < 10⁻⁶ and h ≤ ε/10³."
    )
    regime.add_argument("--relaxed", dest="strict", action="store_false", help="Allow larger parameters.")
    common.add_argument("--h", help="Crossing angle of K₀ and K₁ (default: 9e-10 strict, 1e-3 relaxed).")
    common.add_argument("--eps", help="Tip radius ε (default: 9e-7 strict, 0.05 relaxed).")
    common.add_argument(
        "--n", type=_levels, default=None, help=f"Level count(s), comma separated (default: {DEFAULT_LEVELS})."
    )
    common.add_argument("--R", default=DEFAULT_R, help=f"Depth of the outermost ring (default: {DEFAULT_R}).")
    common.add_argument(
        "--arc-len", default=ARC_LENGTH_DEFAULT, help=f"Length of the moved arc (default: {ARC_LENGTH_DEFAULT})."
    )
    common.add_argument(
        "--precision", type=_precision, default=None, help="'hw' or a bit count (default: hw relaxed, 256 strict)."
    )
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="Monte Carlo samples.")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"Root seed (default: {DEFAULT_SEED}).")
    common.add_argument("--depth", type=int, default=0, help="Refinement depth of motion plans.")
    common.add_argument("--out", default=None, help="Output file ('-' for standard output) or frame directory.")
    common.add_argument("--format", choices=["json", "csv", "svg"], default=None, help="Output format.")
    common.add_argument(
        "--frames", type=int, default=DEFAULT_FRAMES, help=f"Rendered frames (default: {DEFAULT_FRAMES})."
    )
    common.add_argument("--inject-fault", action="store_true", help="Displace one K₀ circle by 2ε before verifying.")
    common.add_argument("--timings", action="store_true", help="Record wall times in the CSV.")
    common.add_argument("--distance", default=DEFAULT_DISTANCE, help="Distance between the start and end centers.")
    common.add_argument("--budget", default=DEFAULT_BUDGET, help="Area budget per chain link.")
    common.add_argument("-v", "--verbose", action="count", default=0, help="More logging; repeatable.")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kakeya", description="Sprouting constructions for the Kakeya problem for circular arcs.")
    commands = parser.add_subparsers(dest="command", metavar="command")
    common = _common_options()
    descriptions = {
        SPROUT: "Build a sprouting scene and write it as JSON.",
        VERIFY: "Check every lemma bound on a scene; exit 1 on a violated bound.",
        PLAN: "Write the motion plan of a scene as JSON.",
        AREA: "Write the convergence study of m(Tₙ ∖ Δ(h)) as CSV.",
        RENDER: "Write SVG frames of the motion.",
        THEOREM1: "Move an arc between two distant congruent positions.",
    }
    for command in COMMANDS:
        commands.add_parser(command.lower(), parents=[common], help=descriptions[command])
    return parser


def parse_args(argv: Sequence[str]) -> ExperimentSpec:
    """Maps a command line to an experiment.

    Parameters:
        argv: the arguments, without the program name.

    Returns:
        The described experiment.

    Raises:
        UsageError: for unknown flags, missing commands and invalid values.
    """
    parser = build_parser()
    if not argv:
        raise UsageError("no command given", parser.format_help())
    arguments = parser.parse_args(list(argv))
    if arguments.command is None:
        raise UsageError("no command given", parser.format_help())
    command = arguments.command.upper()
    h, eps = STRICT_DEFAULTS if arguments.strict else RELAXED_DEFAULTS
    levels = arguments.n or [DEFAULT_LEVELS]
    if command != AREA and len(levels) != 1:
        raise UsageError(f"{command.lower()} takes a single level count, got {levels}", parser.format_usage())
    format = (arguments.format or COMMAND_FORMATS[command].lower()).upper()
    if format != COMMAND_FORMATS[command]:
        raise UsageError(f"{command.lower()} writes {COMMAND_FORMATS[command].lower()}, not {format.lower()}")
    if arguments.samples < MIN_SAMPLES:
        raise UsageError(f"--samples must be at least {MIN_SAMPLES}, got {arguments.samples}")
    if arguments.depth < 0 or arguments.frames <= 0:
        raise UsageError("--depth must be non-negative and --frames positive")
    if command == RENDER and arguments.out == STDOUT:
        raise UsageError("render writes a directory of frames, not standard output")
    try:
        config = SproutConfig(
            arguments.h or h,
            arguments.eps or eps,
            levels[0],
            arguments.R,
            arguments.precision,
            arguments.strict,
        )
        return ExperimentSpec(
            command,
            config,
            arguments.arc_len,
            levels,
            arguments.samples,
            arguments.seed,
            arguments.depth,
            arguments.out,
            format,
            arguments.frames,
            arguments.inject_fault,
            arguments.timings,
            arguments.distance,
            arguments.budget,
            arguments.verbose,
        )
    except (InvalidConfigError, ValueError) as error:
        raise UsageError(str(error)) from error
