from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.models.evaluation import EvaluationReport
from app.models.grid import CellCoord, WaypointPath
from app.models.llm import ProviderConfig
from app.models.nav import FollowerConfig
from app.models.planning import PatternName, PlannerConfig
from app.models.sim import Rect, TrajectoryPoint

StartPolicy = Literal["free", "corners"]

# seed offset between maps; episodes per map must stay below it
EPISODE_STRIDE = 1000


class MapEntry(BaseModel):
    """One map of an experiment: a built-in name, a map file or inline map text."""

    model_config = ConfigDict(extra="forbid")

    id: str = Field(min_length=1)
    builtin: Optional[str] = None
    file: Optional[str] = None
    text: Optional[str] = None
    start_policy: StartPolicy = "free"
    extra_obstacles: list[Rect] = []

    @model_validator(mode="after")
    def _one_source(self) -> "MapEntry":
        sources = [s for s in (self.builtin, self.file, self.text) if s is not None]
        if len(sources) != 1:
            raise ValueError(f"map {self.id!r} needs exactly one of builtin, file or text")
        return self


class ExperimentConfig(BaseModel):
    """Experiment definition, normally read from a JSON file."""

    model_config = ConfigDict(extra="forbid")

    name: str = "experiment"
    maps: list[MapEntry] = Field(min_length=1)
    providers: list[ProviderConfig] = []
    baselines: list[PatternName] = []
    episodes: int = Field(default=10, ge=1, lt=EPISODE_STRIDE)
    seed: int = 0
    planner: PlannerConfig = PlannerConfig()
    min_coverage: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    max_turns: Optional[int] = Field(default=None, ge=0)
    max_length_ratio: Optional[float] = Field(default=None, ge=1.0)
    follower: FollowerConfig = FollowerConfig()
    odometry_sigma_xy: float = Field(default=0.0, ge=0.0)
    odometry_sigma_heading: float = Field(default=0.0, ge=0.0)
    workers: Optional[int] = Field(default=None, ge=1)
    wall_clock: bool = True
    render: bool = True

    @field_validator("maps")
    @classmethod
    def _unique_map_ids(cls, maps: list[MapEntry]) -> list[MapEntry]:
        ids = [m.id for m in maps]
        if len(set(ids)) != len(ids):
            raise ValueError("map ids must be unique")
        return maps

    @model_validator(mode="after")
    def _has_contenders(self) -> "ExperimentConfig":
        if not self.providers and not self.baselines:
            raise ValueError("an experiment needs at least one provider or baseline")
        return self


class EpisodeRecord(BaseModel):
    """Outcome of one seeded plan / evaluate / execute run."""

    map_id: str
    model_id: str
    episode: int = Field(ge=0)
    seed: int
    start: CellCoord
    path: Optional[WaypointPath] = None
    report: Optional[EvaluationReport] = None
    executed_cr: float = Field(ge=0.0, le=1.0)
    shortest_length: float = Field(ge=0.0)
    planned_length: float = Field(ge=0.0)
    cpl_term: float = Field(ge=0.0, le=1.0)
    attempts: int = Field(ge=0)
    inference_seconds: float = Field(ge=0.0)
    driving_seconds: float = Field(ge=0.0)
    total_seconds: float = Field(ge=0.0)
    collisions: int = Field(default=0, ge=0)
    success: bool
    failure_kind: Optional[str] = None
    trajectory: list[TrajectoryPoint] = Field(default=[], exclude=True, repr=False)

    @model_validator(mode="after")
    def _total_covers_parts(self) -> "EpisodeRecord":
        if self.total_seconds < self.inference_seconds + self.driving_seconds - 1e-9:
            raise ValueError("total time cannot be shorter than inference plus driving time")
        return self


class SummaryRow(BaseModel):
    """Averages over the episodes of one (map, model) pair; CR in percent."""

    map_id: str
    model_id: str
    episodes: int = Field(ge=1)
    cpl: float = Field(ge=0.0, le=1.0)
    pl: float = Field(ge=0.0)
    cr: float = Field(ge=0.0, le=100.0)
    success_rate: float = Field(ge=0.0, le=1.0)
    t: float = Field(ge=0.0)
    t_i: float = Field(ge=0.0)
    t_d: float = Field(ge=0.0)


class ExperimentSummary(BaseModel):
    name: str
    seed: int
    episodes_run: int = Field(ge=0)
    rows: list[SummaryRow] = []

    def row(self, map_id: str, model_id: str) -> SummaryRow:
        for row in self.rows:
            if row.map_id == map_id and row.model_id == model_id:
                return row
        raise KeyError(f"No summary row for {map_id}/{model_id}")

    @property
    def models(self) -> list[str]:
        return list(dict.fromkeys(row.model_id for row in self.rows))

    @property
    def maps(self) -> list[str]:
        return list(dict.fromkeys(row.map_id for row in self.rows))
