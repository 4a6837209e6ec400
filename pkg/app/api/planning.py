import logging
from typing import Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from app.agents import build_planner, evaluate, format_waypoints, parse_waypoints, run_all_planners
from app.agents.runner import PLANNER_NAMES
from app.grid import parse_map
from app.integrations import build_provider
from app.models.evaluation import EvaluationReport, Thresholds
from app.models.grid import CellCoord
from app.models.llm import ProviderConfig
from app.models.planning import PlannerConfig

logger = logging.getLogger(__name__)
router = APIRouter()


class EvaluateRequest(BaseModel):
    map: str = Field(description="Map in text form, first line northmost")
    waypoints: str = Field(description='Bar-separated "col,row|col,row|..." list')
    start: Optional[CellCoord] = None
    min_coverage: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    max_turns: Optional[int] = Field(default=None, ge=0)
    max_length_ratio: Optional[float] = Field(default=None, ge=1.0)


class PlanRequest(BaseModel):
    map: str
    start: CellCoord
    planners: list[str] = Field(default=["lawnmower"], min_length=1)
    provider: Optional[ProviderConfig] = None
    planner: PlannerConfig = PlannerConfig()


@router.post("/evaluate", response_model=EvaluationReport)
async def evaluate_waypoints(body: EvaluateRequest):
    """Score a waypoint list against a map; the start defaults to the first waypoint."""
    grid = parse_map(body.map)
    path = parse_waypoints(body.waypoints, grid)
    th = Thresholds.for_map(grid, body.min_coverage, body.max_turns, body.max_length_ratio)
    return evaluate(grid, body.start or path.start, path, th)


@router.post("/plan")
async def plan_path(body: PlanRequest):
    """Run one or more planners from the same start and return each accepted path."""
    unknown = [name for name in body.planners if name not in PLANNER_NAMES]
    if unknown:
        raise HTTPException(status_code=422, detail=f"Unknown planners: {unknown}")
    if "llm" in body.planners and body.provider is None:
        raise HTTPException(status_code=422, detail="The llm planner needs a provider")

    grid = parse_map(body.map)
    cfg = body.planner
    if cfg.thresholds is None:
        cfg = cfg.model_copy(update={"thresholds": Thresholds.for_map(grid)})
    planners = [
        build_planner(name, build_provider(body.provider) if name == "llm" else None, cfg)
        for name in body.planners
    ]

    results = await run_all_planners(planners, grid, body.start)
    response = {}
    for label, result in results.items():
        if isinstance(result, Exception):
            response[label] = {"error": getattr(result, "code", type(result).__name__), "detail": str(result)}
        else:
            response[label] = {
                "waypoints": format_waypoints(result.path),
                "report": result.report.model_dump(mode="json"),
                "attempts": result.attempts,
                "inference_seconds": result.inference_seconds,
            }
    return response
