"""One seeded episode: random start, plan, evaluate, execute, measure."""
import asyncio
import logging
from typing import Sequence

import numpy as np

from app.agents.base import BasePlanner, Clock, wall_clock
from app.errors import CoverPathError, ExecutionAborted, ExhaustedIterations
from app.metrics import cpl_term, is_success, shortest_coverage_length
from app.models.evaluation import Thresholds
from app.models.experiment import EPISODE_STRIDE, EpisodeRecord, StartPolicy
from app.models.grid import CellCoord, GridMap
from app.models.nav import FollowerConfig
from app.models.sim import MotionLimits, Rect
from app.nav.coverage import visited_cells
from app.nav.follower import follow
from app.sim.world import World, default_limits

logger = logging.getLogger(__name__)


def episode_seed(base_seed: int, map_index: int, episode: int) -> int:
    """Seeds are shared by every model so all of them face the same starts."""
    if not 0 <= episode < EPISODE_STRIDE:
        raise ValueError(f"episode {episode} outside 0..{EPISODE_STRIDE - 1}")
    return base_seed + EPISODE_STRIDE * map_index + episode


def choose_start(grid: GridMap, rng: np.random.Generator, policy: StartPolicy = "free") -> CellCoord:
    if policy == "corners":
        candidates = [c for c in grid.corners() if grid.is_free(c)] or grid.free_cells()
    else:
        candidates = grid.free_cells()
    return candidates[int(rng.integers(len(candidates)))]


async def run_episode(
    grid: GridMap,
    planner: BasePlanner,
    follower_cfg: FollowerConfig,
    seed: int,
    *,
    map_id: str = "map",
    episode: int = 0,
    start_policy: StartPolicy = "free",
    thresholds: Thresholds | None = None,
    extra_obstacles: Sequence[Rect] = (),
    limits: MotionLimits | None = None,
    sigma_xy: float = 0.0,
    sigma_heading: float = 0.0,
    clock: Clock = wall_clock,
) -> EpisodeRecord:
    """
    Run one episode and record its metrics.

    The seed fixes the start cell and the odometry noise. Planning and
    execution failures end up in ``failure_kind``; they are never raised.
    An episode succeeds when it runs to the end and the executed coverage
    meets ``thresholds.min_coverage``.
    """
    began = clock()
    start_stream, noise_stream = np.random.SeedSequence(seed).spawn(2)
    start = choose_start(grid, np.random.default_rng(start_stream), start_policy)
    shortest = shortest_coverage_length(grid, start)
    fields = dict(map_id=map_id, model_id=planner.label, episode=episode, seed=seed, start=start,
                  shortest_length=shortest)
    logger.info(f"[{planner.label}] episode {episode} on {map_id} from {start} (seed {seed})")

    # ─────────────────────────────────────────────────────────
    # Plan and evaluate
    # ─────────────────────────────────────────────────────────

    planning_began = clock()
    try:
        result = await planner.plan(grid, start, clock)
    except CoverPathError as e:
        inference = max(clock() - planning_began, 0.0)
        executed = 1 / grid.free_count
        logger.warning(f"[{planner.label}] planning failed on {map_id}: {e.code}: {e}")
        total = max(clock() - began, 0.0)
        return EpisodeRecord(
            **fields,
            report=e.last_report if isinstance(e, ExhaustedIterations) else None,
            executed_cr=executed,
            planned_length=0.0,
            cpl_term=cpl_term(executed, shortest, 0.0),
            attempts=e.attempts if isinstance(e, ExhaustedIterations) else 0,
            inference_seconds=inference,
            driving_seconds=0.0,
            total_seconds=max(total, inference),
            success=False,
            failure_kind=e.code,
        )

    # ─────────────────────────────────────────────────────────
    # Execute in the simulator
    # ─────────────────────────────────────────────────────────

    world = World.at_cell(
        grid,
        start,
        extra_obstacles=list(extra_obstacles),
        limits=limits or default_limits(),
        sigma_xy=sigma_xy,
        sigma_heading=sigma_heading,
        seed=int(noise_stream.generate_state(1)[0]),
    )
    failure_kind = None
    sim_began = clock()
    try:
        trajectory, driving = await asyncio.to_thread(follow, world, result.path, follower_cfg)
    except ExecutionAborted as e:
        logger.warning(f"[{planner.label}] execution aborted on {map_id}: {e.code}: {e}")
        trajectory, driving, failure_kind = e.trajectory, e.driving_seconds, e.code
    sim_wall = clock() - sim_began

    cfg = follower_cfg.resolved(grid.cell_size)
    executed = len(visited_cells(trajectory, grid, cfg.reach_threshold)) / grid.free_count
    planned = result.report.path_length
    executed_report = result.report.model_copy(update={"coverage_rate": executed})
    total = max(clock() - began - sim_wall, 0.0) + driving

    record = EpisodeRecord(
        **fields,
        path=result.path,
        report=result.report,
        executed_cr=executed,
        planned_length=planned,
        cpl_term=cpl_term(executed, shortest, planned),
        attempts=result.attempts,
        inference_seconds=result.inference_seconds,
        driving_seconds=driving,
        total_seconds=max(total, result.inference_seconds + driving),
        collisions=world.collisions,
        success=failure_kind is None and is_success(executed_report, thresholds or Thresholds.for_map(grid)),
        failure_kind=failure_kind,
        trajectory=trajectory,
    )
    logger.info(
        f"[{planner.label}] episode {episode} on {map_id}: CR={executed * 100:.1f}% "
        f"PL={planned:g} T_i={record.inference_seconds:.3f}s T_d={driving:.2f}s"
        + (f" ({failure_kind})" if failure_kind else "")
    )
    return record
