from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True, slots=True)
class TurnTo:
    """Rotate in place to an absolute heading."""
    heading: float


@dataclass(frozen=True, slots=True)
class Forward:
    distance: float

    def __post_init__(self):
        if self.distance < 0:
            raise ValueError(f"Forward distance must be >= 0, got {self.distance}")


@dataclass(frozen=True, slots=True)
class Velocity:
    v: float
    w: float


DriveCommand = Union[TurnTo, Forward, Velocity]
