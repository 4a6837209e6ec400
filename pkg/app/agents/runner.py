import asyncio
import logging

from app.agents.base import BasePlanner, Clock, wall_clock
from app.agents.llm import LLMPlanner
from app.agents.pattern import PatternPlanner
from app.integrations.base import ChatProvider
from app.models.grid import CellCoord, GridMap
from app.models.planning import PlannerConfig, PlanResult
from app.patterns import PATTERNS

logger = logging.getLogger(__name__)

PLANNER_NAMES: tuple[str, ...] = ("llm", *PATTERNS)


def build_planner(
    name: str,
    provider: ChatProvider | None = None,
    cfg: PlannerConfig | None = None,
    label: str | None = None,
) -> BasePlanner:
    """Planner by name: "llm" needs a provider, the rest are coverage patterns."""
    if name == "llm":
        if provider is None:
            raise ValueError("The llm planner needs a chat provider")
        return LLMPlanner(provider, cfg, label=label)
    if name not in PATTERNS:
        raise ValueError(f"Unknown planner: {name}")
    return PatternPlanner(name, thresholds=cfg.thresholds if cfg else None)


async def run_planner(
    planner: BasePlanner,
    grid: GridMap,
    start: CellCoord,
    clock: Clock = wall_clock,
) -> PlanResult:
    logger.info(f"[{planner.label}] planning on {grid.width}x{grid.height} map from {start}")
    result = await planner.plan(grid, start, clock)
    logger.info(
        f"[{planner.label}] accepted {len(result.path)} waypoints after {result.attempts} attempt(s), "
        f"T_i={result.inference_seconds:.3f}s"
    )
    return result


async def run_all_planners(
    planners: list[BasePlanner],
    grid: GridMap,
    start: CellCoord,
    clock: Clock = wall_clock,
) -> dict[str, PlanResult | Exception]:
    """
    Run several planners on the same start in parallel.

    Failures are returned in place of results instead of being raised.
    """
    results = await asyncio.gather(
        *(run_planner(planner, grid, start, clock) for planner in planners),
        return_exceptions=True,
    )
    outcome: dict[str, PlanResult | Exception] = {}
    for planner, result in zip(planners, results):
        if isinstance(result, Exception):
            logger.error(f"Planner {planner.label} failed: {result}")
        outcome[planner.label] = result
    return outcome

