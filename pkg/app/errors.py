"""Exception hierarchy shared by every layer of the planner."""
from __future__ import annotations

from typing import Any


class CoverPathError(Exception):
    """Base class for all coverpath errors."""

    @property
    def code(self) -> str:
        """Stable identifier used in reports and failure records."""
        return type(self).__name__


# Grid

class GridError(CoverPathError):
    pass


class MalformedMap(GridError):
    pass


class EmptyMap(GridError):
    pass


class DisconnectedFreeSpace(GridError):
    pass


class InvalidPath(GridError):
    pass


class OutOfBounds(InvalidPath):
    def __init__(self, cell: Any, message: str | None = None):
        self.cell = cell
        super().__init__(message or f"Cell {tuple(cell)} is outside the map")


class OnObstacle(InvalidPath):
    def __init__(self, cell: Any, message: str | None = None):
        self.cell = cell
        super().__init__(message or f"Cell {tuple(cell)} is an obstacle")


class StartOnObstacle(GridError):
    def __init__(self, cell: Any):
        self.cell = cell
        super().__init__(f"Start cell {tuple(cell)} is not free")


# Metrics

class EmptyEpisodeList(CoverPathError):
    pass


# Patterns

class PatternError(CoverPathError):
    pass


class UnsupportedMap(PatternError):
    pass


class NotACorner(PatternError):
    pass


class MapTooSmall(PatternError):
    pass


# Providers

class ProviderError(CoverPathError):
    retryable: bool = False


class NetworkError(ProviderError):
    retryable = True


class RateLimited(ProviderError):
    retryable = True


class AuthError(ProviderError):
    pass


class MalformedProviderResponse(ProviderError):
    pass


class EmptyScript(ProviderError):
    pass


class ScriptExhausted(ProviderError):
    pass


# Response parsing

class ResponseParseError(CoverPathError):
    pass


class EmptyResponse(ResponseParseError):
    pass


class MalformedToken(ResponseParseError):
    def __init__(self, token: str, index: int):
        self.token = token
        self.index = index
        super().__init__(f"Malformed waypoint token {token!r} at position {index}")


# Planning

class ExhaustedIterations(CoverPathError):
    def __init__(self, last_report: Any, attempts: int):
        self.last_report = last_report
        self.attempts = attempts
        super().__init__(f"No waypoint list accepted after {attempts} attempts")


# Simulation and navigation

class CommandOutOfLimits(CoverPathError):
    pass


class InvalidWorld(CoverPathError):
    pass


class NonAdjacentCells(CoverPathError):
    pass


class ExecutionAborted(CoverPathError):
    """Navigation stopped early; keeps the trajectory driven so far."""

    def __init__(self, message: str, trajectory: list | None = None, driving_seconds: float = 0.0):
        self.trajectory = trajectory or []
        self.driving_seconds = driving_seconds
        super().__init__(message)


class SafetyStop(ExecutionAborted):
    def __init__(self, pose: Any, range_reading: float, trajectory: list | None = None,
                 driving_seconds: float = 0.0):
        self.pose = pose
        self.range_reading = range_reading
        super().__init__(
            f"Safety stop at ({pose.x:.3f}, {pose.y:.3f}): obstacle {range_reading:.3f} m ahead",
            trajectory,
            driving_seconds,
        )


class StalledProgress(ExecutionAborted):
    pass
