from __future__ import annotations

import math
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field, model_validator


def normalize_angle(angle: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    wrapped = math.atan2(math.sin(angle), math.cos(angle))
    return math.pi if wrapped <= -math.pi else wrapped


@dataclass(frozen=True, slots=True)
class Pose:
    """Robot pose in meters/radians; heading 0 faces east."""

    x: float
    y: float
    heading: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "heading", normalize_angle(self.heading))

    def distance_to(self, x: float, y: float) -> float:
        return math.hypot(x - self.x, y - self.y)


class Rect(BaseModel):
    """Axis-aligned rectangle in world meters."""

    model_config = ConfigDict(frozen=True)

    xmin: float
    ymin: float
    xmax: float
    ymax: float

    @model_validator(mode="after")
    def _ordered(self) -> "Rect":
        if self.xmax <= self.xmin or self.ymax <= self.ymin:
            raise ValueError("rectangle needs xmin < xmax and ymin < ymax")
        return self

    @classmethod
    def around(cls, x: float, y: float, half_width: float, half_height: float | None = None) -> "Rect":
        half_height = half_width if half_height is None else half_height
        return cls(xmin=x - half_width, ymin=y - half_height, xmax=x + half_width, ymax=y + half_height)

    def distance(self, x: float, y: float) -> float:
        dx = max(self.xmin - x, 0.0, x - self.xmax)
        dy = max(self.ymin - y, 0.0, y - self.ymax)
        return math.hypot(dx, dy)

    def contains(self, x: float, y: float) -> bool:
        """Strictly inside; the boundary does not count."""
        return self.xmin < x < self.xmax and self.ymin < y < self.ymax


class MotionLimits(BaseModel):
    model_config = ConfigDict(frozen=True)

    linear_speed: float = Field(default=0.5, gt=0)
    angular_speed: float = Field(default=math.pi / 2, gt=0)
    dt: float = Field(default=0.05, gt=0, le=0.1)


@dataclass(frozen=True, slots=True)
class TrajectoryPoint:
    sim_time: float
    x: float
    y: float
    heading: float
    v: float = 0.0
    w: float = 0.0

    @property
    def pose(self) -> Pose:
        return Pose(self.x, self.y, self.heading)
