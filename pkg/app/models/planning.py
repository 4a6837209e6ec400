from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.errors import StartOnObstacle
from app.models.evaluation import EvaluationReport, Thresholds
from app.models.grid import CellCoord, GridMap, WaypointPath

PatternName = Literal["lawnmower", "spiral", "square", "wallmow"]

DEFAULT_TASK = (
    "Plan a coverage path for the robot: visit every free cell of the grid at least once, "
    "starting from the start cell, with as few moves and turns as possible."
)
DEFAULT_FORMAT = (
    'Answer with the waypoint list only, in the format "col,row|col,row|..." '
    "(column first, then row, cells separated by a bar sign). Do not add any other text."
)


class PlannerConfig(BaseModel):
    """Parameters of the propose/evaluate/accept loop."""

    max_iterations: int = Field(default=5, ge=1)
    thresholds: Optional[Thresholds] = None
    temperature: float = Field(default=0.6, ge=0.0, le=2.0)
    model_id: str = ""
    target: Optional[CellCoord] = None
    feedback_on_reject: bool = True
    pattern_hint: Optional[PatternName] = None

    def thresholds_for(self, grid: GridMap) -> Thresholds:
        return self.thresholds or Thresholds.for_map(grid)


class PromptContext(BaseModel):
    model_config = ConfigDict(frozen=True)

    map: GridMap
    start: CellCoord
    task_text: str = DEFAULT_TASK
    format_instruction: str = DEFAULT_FORMAT
    target: Optional[CellCoord] = None
    pattern_hint: Optional[PatternName] = None

    @model_validator(mode="after")
    def _start_is_free(self) -> "PromptContext":
        if not self.map.is_free(self.start):
            raise StartOnObstacle(self.start)
        return self


class PlanResult(BaseModel):
    """Outcome of a successful planning loop."""

    path: WaypointPath
    report: EvaluationReport
    attempts: int = Field(ge=1)
    inference_seconds: float = Field(ge=0.0)
