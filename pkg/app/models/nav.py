from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

FollowMethod = Literal["turn_and_drive", "dog_curve"]


class FollowerConfig(BaseModel):
    """
    Waypoint follower settings.

    Distances left unset scale with the map: reach threshold 0.1, lookahead 0.6
    and safety distance 0.3 cell sizes. Call ``resolved`` before use.
    """

    model_config = ConfigDict(frozen=True)

    method: FollowMethod = "turn_and_drive"
    reach_threshold: Optional[float] = Field(default=None, gt=0)
    lookahead: Optional[float] = Field(default=None, gt=0)
    safety_distance: Optional[float] = Field(default=None, gt=0)
    heading_gain: float = Field(default=2.0, gt=0)
    max_steps: int = Field(default=10_000, ge=1)

    @model_validator(mode="after")
    def _lookahead_beyond_reach(self) -> "FollowerConfig":
        if self.reach_threshold is not None and self.lookahead is not None:
            if self.lookahead <= self.reach_threshold:
                raise ValueError("lookahead must be larger than reach_threshold")
        return self

    def resolved(self, cell_size: float) -> "FollowerConfig":
        return self.model_copy(update={
            "reach_threshold": self.reach_threshold or 0.1 * cell_size,
            "lookahead": self.lookahead or 0.6 * cell_size,
            "safety_distance": self.safety_distance or 0.3 * cell_size,
        })
