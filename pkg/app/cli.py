"""
Command-line entry point: plan, evaluate, simulate, experiment, render and serve.

Results go to stdout and logs to stderr. Exit codes follow sysexits.
"""
import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from app.agents import build_planner, evaluate, format_waypoints, parse_waypoints
from app.agents.runner import PLANNER_NAMES
from app.config import settings
from app.errors import (
    CommandOutOfLimits,
    CoverPathError,
    ExecutionAborted,
    ExhaustedIterations,
    GridError,
    InvalidWorld,
    PatternError,
    ProviderError,
    ResponseParseError,
)
from app.grid import load_map
from app.integrations import build_provider
from app.models.evaluation import Thresholds
from app.models.experiment import EPISODE_STRIDE
from app.models.grid import CellCoord, GridMap
from app.models.llm import ProviderConfig
from app.models.nav import FollowerConfig
from app.models.planning import PlannerConfig
from app.models.sim import Rect
from app.nav import follow, visited_cells
from app.orchestrator import choose_start, load_experiment_config, render_path, render_report, run_experiment
from app.orchestrator.render import write_render
from app.orchestrator.templates import TEMPLATES
from app.patterns import PATTERNS
from app.sim import World, read_trajectory, write_trajectory

logger = logging.getLogger("app.cli")

EX_OK = 0
EX_REJECTED = 1
EX_EXHAUSTED = 2
EX_USAGE = 64
EX_DATAERR = 65
EX_NOINPUT = 66
EX_UNAVAILABLE = 69


class CliParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to EX_USAGE instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def cell_arg(text: str) -> CellCoord:
    parts = text.split(",")
    try:
        if len(parts) != 2:
            raise ValueError
        return CellCoord(int(parts[0]), int(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected col,row, got {text!r}") from None


def rect_arg(text: str) -> Rect:
    try:
        xmin, ymin, xmax, ymax = (float(v) for v in text.split(","))
        return Rect(xmin=xmin, ymin=ymin, xmax=xmax, ymax=ymax)
    except (ValueError, ValidationError):
        raise argparse.ArgumentTypeError(f"expected xmin,ymin,xmax,ymax, got {text!r}") from None


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def episode_count(text: str) -> int:
    value = positive_int(text)
    if value >= EPISODE_STRIDE:
        raise argparse.ArgumentTypeError(f"must be below {EPISODE_STRIDE}, got {value}")
    return value


def _add_threshold_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--min-coverage", type=float, default=None, help="Coverage gate (default from settings)")
    parser.add_argument("--max-turns", type=int, default=None, help="Turn gate (default 2*(width+height))")
    parser.add_argument("--max-length-ratio", type=float, default=None, help="Length gate as a multiple of l")


def build_parser() -> CliParser:
    parser = CliParser(prog="coverpath", description="LLM coverage path planning and simulated execution")
    parser.add_argument("--log-level", default=settings.log_level, help="Logging level for stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="Plan a coverage path and print the accepted waypoints")
    p.add_argument("--map", required=True, help="Map file")
    p.add_argument("--start", type=cell_arg, default=None, help="Start cell col,row (default: seeded free cell)")
    p.add_argument("--planner", choices=PLANNER_NAMES, default="llm")
    p.add_argument("--provider", choices=["openai", "gemini", "anthropic", "scripted"], default="openai")
    p.add_argument("--model", default=None, help="Provider model id")
    p.add_argument("--provider-url", default=None, help="Override the provider base URL")
    p.add_argument("--script", default=None, help="Scripted oracle response file (implies --provider scripted)")
    p.add_argument("--temperature", type=float, default=settings.temperature)
    p.add_argument("--max-iters", type=positive_int, default=settings.max_iterations)
    p.add_argument("--pattern-hint", choices=list(PATTERNS), default=None)
    p.add_argument("--seed", type=int, default=0)
    _add_threshold_flags(p)

    p = sub.add_parser("evaluate", help="Score a waypoint string; exit 1 when the gate rejects it")
    p.add_argument("--map", required=True, help="Map file")
    p.add_argument("waypoints", help='"col,row|col,row|..."')
    p.add_argument("--start", type=cell_arg, default=None, help="Start cell (default: first waypoint)")
    _add_threshold_flags(p)

    p = sub.add_parser("simulate", help="Drive a waypoint string in the simulator")
    p.add_argument("--map", required=True, help="Map file")
    p.add_argument("waypoints", help='"col,row|col,row|..."')
    p.add_argument("--start", type=cell_arg, default=None, help="Start cell (default: first waypoint)")
    p.add_argument("--method", choices=["turn_and_drive", "dog_curve"], default="turn_and_drive")
    p.add_argument("--obstacle", type=rect_arg, action="append", default=[], metavar="XMIN,YMIN,XMAX,YMAX",
                   help="Extra obstacle rectangle in meters; repeatable")
    p.add_argument("--sigma-xy", type=float, default=settings.odometry_sigma_xy)
    p.add_argument("--sigma-heading", type=float, default=settings.odometry_sigma_heading)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trajectory-out", default=None, help="Write the trajectory log here")

    p = sub.add_parser("experiment", help="Run an experiment config and print the summary tables")
    p.add_argument("config", help="Experiment JSON file")
    p.add_argument("--episodes", type=episode_count, default=None, help="Override episodes per (map, model)")
    p.add_argument("--seed", type=int, default=None, help="Override the base seed")
    p.add_argument("--out", default=None, help="Output directory (default: <output_dir>/<name>)")
    p.add_argument("--report", choices=list(TEMPLATES), default="report", help="Layout of the printed summary")

    p = sub.add_parser("render", help="Write an SVG of a map, a path and an optional trajectory")
    p.add_argument("--map", required=True, help="Map file")
    p.add_argument("waypoints", help='"col,row|col,row|..."')
    p.add_argument("--trajectory", default=None, help="Trajectory log from simulate")
    p.add_argument("--out", default=None, help="SVG file (default: stdout)")

    p = sub.add_parser("serve", help="Start the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def thresholds_from(args, grid: GridMap) -> Thresholds:
    return Thresholds.for_map(
        grid,
        min_coverage=settings.min_coverage if args.min_coverage is None else args.min_coverage,
        max_turns=args.max_turns,
        max_length_ratio=settings.max_length_ratio if args.max_length_ratio is None else args.max_length_ratio,
    )


def cmd_plan(args) -> int:
    grid = load_map(args.map)
    start = args.start or choose_start(grid, np.random.default_rng(args.seed))
    cfg = PlannerConfig(
        max_iterations=args.max_iters,
        thresholds=thresholds_from(args, grid),
        temperature=args.temperature,
        model_id=args.model or "",
        feedback_on_reject=settings.feedback_on_reject,
        pattern_hint=args.pattern_hint,
    )
    provider = None
    if args.planner == "llm":
        provider = build_provider(ProviderConfig(
            kind="scripted" if args.script else args.provider,
            model_id=args.model,
            base_url=args.provider_url,
            script_file=args.script,
        ))
    planner = build_planner(args.planner, provider, cfg)

    result = asyncio.run(planner.plan(grid, start))
    print(format_waypoints(result.path))
    print(f"{planner.label}: {result.report.describe()} after {result.attempts} attempt(s)", file=sys.stderr)
    return EX_OK


def cmd_evaluate(args) -> int:
    grid = load_map(args.map)
    path = parse_waypoints(args.waypoints, grid)
    report = evaluate(grid, args.start or path.start, path, thresholds_from(args, grid))
    print(report.describe())
    return EX_OK if report.accepted else EX_REJECTED


def cmd_simulate(args) -> int:
    grid = load_map(args.map)
    path = parse_waypoints(args.waypoints, grid)
    world = World.at_cell(
        grid,
        args.start or path.start,
        extra_obstacles=args.obstacle,
        sigma_xy=args.sigma_xy,
        sigma_heading=args.sigma_heading,
        seed=args.seed,
    )
    cfg = FollowerConfig(method=args.method)
    code = EX_OK
    try:
        trajectory, driving = follow(world, path, cfg)
    except ExecutionAborted as e:
        logger.warning(f"{e.code}: {e}")
        trajectory, driving, code = e.trajectory, e.driving_seconds, EX_REJECTED

    if args.trajectory_out:
        write_trajectory(args.trajectory_out, trajectory)
    reach = cfg.resolved(grid.cell_size).reach_threshold
    coverage = len(visited_cells(trajectory, grid, reach)) / grid.free_count
    print(f"CR={coverage * 100:.1f}% T_d={driving:.2f}s collisions={world.collisions} points={len(trajectory)}")
    return code


def cmd_experiment(args) -> int:
    config = load_experiment_config(args.config)
    overrides = {}
    if args.episodes is not None:
        overrides["episodes"] = args.episodes
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        config = config.model_copy(update=overrides)
    out = Path(args.out) if args.out else Path(settings.output_dir) / config.name

    result = asyncio.run(run_experiment(config, out))
    print(render_report(result.summary, args.report), end="")
    return EX_OK


def cmd_render(args) -> int:
    grid = load_map(args.map)
    path = parse_waypoints(args.waypoints, grid)
    trajectory = read_trajectory(args.trajectory) if args.trajectory else None
    document = render_path(grid, path, trajectory)
    if args.out:
        write_render(args.out, document)
    else:
        sys.stdout.write(document)
    return EX_OK


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("app.main:app", host=args.host, port=args.port, log_level=settings.log_level.lower())
    return EX_OK


COMMANDS = {
    "plan": cmd_plan,
    "evaluate": cmd_evaluate,
    "simulate": cmd_simulate,
    "experiment": cmd_experiment,
    "render": cmd_render,
    "serve": cmd_serve,
}


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, ExhaustedIterations):
        return EX_EXHAUSTED
    if isinstance(error, (FileNotFoundError, IsADirectoryError, PermissionError)):
        return EX_NOINPUT
    if isinstance(error, ProviderError):
        return EX_UNAVAILABLE
    if isinstance(error, (ValidationError, json.JSONDecodeError, GridError, ResponseParseError, PatternError,
                          InvalidWorld, CommandOutOfLimits, CoverPathError, ValueError, KeyError)):
        return EX_DATAERR
    raise error


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        return COMMANDS[args.command](args)
    except Exception as e:
        code = exit_code_for(e)
        label = e.code if isinstance(e, CoverPathError) else type(e).__name__
        print(f"coverpath {args.command}: {label}: {e}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
