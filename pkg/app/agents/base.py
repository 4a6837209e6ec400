import time
from abc import ABC, abstractmethod
from typing import Callable

from app.models.grid import CellCoord, GridMap
from app.models.planning import PlanResult

Clock = Callable[[], float]


def wall_clock() -> float:
    return time.perf_counter()


def frozen_clock() -> float:
    """Clock that never advances; timing fields come out as zero."""
    return 0.0


class BasePlanner(ABC):
    """Base class for all global planners."""

    planner_type: str = "base"

    @property
    def label(self) -> str:
        """Name used for this planner in experiment reports."""
        return self.planner_type

    @abstractmethod
    async def plan(self, grid: GridMap, start: CellCoord, clock: Clock = wall_clock) -> PlanResult:
        """Return an accepted waypoint list starting at ``start``."""
