import logging

from app.agents.base import BasePlanner, Clock, wall_clock
from app.agents.evaluator import evaluate
from app.errors import ExhaustedIterations
from app.models.evaluation import Thresholds
from app.models.grid import CellCoord, GridMap, WaypointPath
from app.models.planning import PlanResult
from app.patterns import PATTERNS

logger = logging.getLogger(__name__)


def nearest_corner(grid: GridMap, start: CellCoord) -> CellCoord:
    """Closest map corner by grid distance; ties go to the earlier corner (SW, SE, NW, NE)."""
    return min(grid.corners(), key=lambda c: abs(c.col - start.col) + abs(c.row - start.row))


class PatternPlanner(BasePlanner):
    """
    Classic coverage pattern used as a baseline planner.

    Patterns are defined from a corner; from any other start the walk begins
    at the nearest corner and the start cell is put in front of it.
    """

    def __init__(self, pattern: str, thresholds: Thresholds | None = None):
        if pattern not in PATTERNS:
            raise ValueError(f"Unknown pattern: {pattern}")
        self.pattern = pattern
        self.planner_type = pattern
        self.thresholds = thresholds

    def waypoints(self, grid: GridMap, start: CellCoord) -> WaypointPath:
        start = CellCoord(*start)
        corner = nearest_corner(grid, start)
        path = PATTERNS[self.pattern](grid, corner)
        if corner == start:
            return path
        return WaypointPath(cells=(start, *path.cells))

    async def plan(self, grid: GridMap, start: CellCoord, clock: Clock = wall_clock) -> PlanResult:
        began = clock()
        start = CellCoord(*start)
        path = self.waypoints(grid, start)
        report = evaluate(grid, start, path, self.thresholds or Thresholds.for_map(grid))
        elapsed = max(clock() - began, 0.0)
        if not report.accepted:
            logger.warning(f"[{self.pattern}] pattern from {start} rejected: {report.describe()}")
            raise ExhaustedIterations(report, 1)
        return PlanResult(path=path, report=report, attempts=1, inference_seconds=elapsed)
