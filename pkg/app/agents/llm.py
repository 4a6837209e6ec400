"""The propose / evaluate / accept loop around a chat provider."""
import logging

from app.agents.base import BasePlanner, Clock, wall_clock
from app.agents.evaluator import evaluate
from app.agents.parser import parse_waypoints
from app.agents.prompts import build_feedback, build_prompt
from app.config import settings
from app.errors import ExhaustedIterations, InvalidPath, ResponseParseError
from app.integrations.base import ChatProvider
from app.models.grid import CellCoord, GridMap
from app.models.llm import ChatRequest
from app.models.planning import PlannerConfig, PlanResult, PromptContext

logger = logging.getLogger(__name__)


def default_planner_config() -> PlannerConfig:
    return PlannerConfig(
        max_iterations=settings.max_iterations,
        temperature=settings.temperature,
        feedback_on_reject=settings.feedback_on_reject,
    )


async def plan(
    grid: GridMap,
    start: CellCoord,
    provider: ChatProvider,
    cfg: PlannerConfig | None = None,
    clock: Clock = wall_clock,
) -> PlanResult:
    """
    Ask the provider for waypoint lists until one passes the evaluator.

    At most ``cfg.max_iterations`` provider calls are made. A response that does
    not parse counts as a rejected attempt. With ``feedback_on_reject`` every
    retry appends a user turn quoting the previous answer and what was wrong
    with it.

    Raises ExhaustedIterations when no attempt is accepted; provider errors
    propagate once the provider's own retries are spent.
    """
    cfg = cfg or default_planner_config()
    start = CellCoord(*start)
    th = cfg.thresholds_for(grid)
    ctx = PromptContext(map=grid, start=start, target=cfg.target, pattern_hint=cfg.pattern_hint)
    system, user = build_prompt(ctx)
    messages = [user]
    inference = 0.0
    last_report = None

    for attempt in range(1, cfg.max_iterations + 1):
        began = clock()
        response = await provider.complete(ChatRequest(
            system_prompt=system,
            user_messages=tuple(messages),
            temperature=cfg.temperature,
            model_id=cfg.model_id,
        ))
        try:
            path = parse_waypoints(response.text, grid)
            report = evaluate(grid, start, path, th)
            reasons = [reason.value for reason in report.reasons]
        except (ResponseParseError, InvalidPath) as e:
            report = None
            reasons = [f"{e.code} ({e})"]
        inference += clock() - began
        last_report = report

        if report is not None and report.accepted:
            logger.info(f"Plan accepted on attempt {attempt}/{cfg.max_iterations}: {report.describe()}")
            return PlanResult(path=path, report=report, attempts=attempt, inference_seconds=max(inference, 0.0))

        logger.warning(f"Attempt {attempt}/{cfg.max_iterations} rejected: {'; '.join(reasons)}")
        if cfg.feedback_on_reject and attempt < cfg.max_iterations:
            messages.append(build_feedback(ctx, response.text, reasons))

    raise ExhaustedIterations(last_report, cfg.max_iterations)


class LLMPlanner(BasePlanner):
    """Planner backed by a chat model."""

    planner_type = "llm"

    def __init__(self, provider: ChatProvider, cfg: PlannerConfig | None = None, label: str | None = None):
        self.provider = provider
        self.cfg = cfg or default_planner_config()
        self._label = label

    @property
    def label(self) -> str:
        return self._label or self.cfg.model_id or self.provider.model_id

    async def plan(self, grid: GridMap, start: CellCoord, clock: Clock = wall_clock) -> PlanResult:
        return await plan(grid, start, self.provider, self.cfg, clock)
