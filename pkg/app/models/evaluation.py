from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.grid import GridMap


class RejectionReason(str, Enum):
    COVERAGE_BELOW_THRESHOLD = "CoverageBelowThreshold"
    TOO_MANY_TURNS = "TooManyTurns"
    PATH_TOO_LONG = "PathTooLong"


class Thresholds(BaseModel):
    """Acceptance gate applied to every proposed waypoint list."""

    model_config = ConfigDict(frozen=True)

    min_coverage: float = Field(default=0.95, ge=0.0, le=1.0)
    max_turns: int = Field(ge=0)
    max_length_ratio: float = Field(default=2.0, ge=1.0, allow_inf_nan=False)

    @classmethod
    def for_map(
        cls,
        grid: GridMap,
        min_coverage: float | None = None,
        max_turns: int | None = None,
        max_length_ratio: float | None = None,
    ) -> "Thresholds":
        """Defaults scaled to the map: up to 2·(width+height) turns."""
        values = {"max_turns": 2 * (grid.width + grid.height) if max_turns is None else max_turns}
        if min_coverage is not None:
            values["min_coverage"] = min_coverage
        if max_length_ratio is not None:
            values["max_length_ratio"] = max_length_ratio
        return cls(**values)


class EvaluationReport(BaseModel):
    """Metrics for one waypoint list and the verdict of the gate."""

    model_config = ConfigDict(frozen=True)

    coverage_rate: float = Field(ge=0.0, le=1.0)
    path_length: float = Field(ge=0.0)
    turn_count: int = Field(ge=0)
    shortest_length: float = Field(ge=0.0)
    cpl_term: float = Field(ge=0.0, le=1.0)
    accepted: bool
    reasons: list[RejectionReason] = []

    @model_validator(mode="after")
    def _accepted_has_no_reasons(self) -> "EvaluationReport":
        if self.accepted and self.reasons:
            raise ValueError("an accepted report cannot carry rejection reasons")
        return self

    def describe(self) -> str:
        verdict = "accepted" if self.accepted else "rejected: " + ", ".join(r.value for r in self.reasons)
        return (
            f"CR={self.coverage_rate * 100:.1f}% PL={self.path_length:g} turns={self.turn_count} "
            f"l={self.shortest_length:g} CPL={self.cpl_term:.4f} ({verdict})"
        )
