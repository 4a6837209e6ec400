"""Odometry and ray-cast range sensing."""
import math
from typing import Sequence

import numpy as np

from app.models.sim import Pose
from app.sim.world import World

# PSD straight ahead plus two LIDAR beams at +-30 degrees
SAFETY_BEAMS: tuple[float, ...] = (-math.pi / 6, 0.0, math.pi / 6)


def read_odometry(world: World) -> Pose:
    """Robot pose with zero-mean Gaussian noise drawn from the world's seeded generator."""
    pose = world.robot
    if world.sigma_xy == 0 and world.sigma_heading == 0:
        return pose
    dx, dy = world.rng.normal(0.0, world.sigma_xy, size=2) if world.sigma_xy else (0.0, 0.0)
    dh = world.rng.normal(0.0, world.sigma_heading) if world.sigma_heading else 0.0
    return Pose(pose.x + float(dx), pose.y + float(dy), pose.heading + float(dh))


def _boundary_distance(x: float, y: float, dx: float, dy: float, width: float, height: float) -> float:
    distance = math.inf
    if dx > 0:
        distance = min(distance, (width - x) / dx)
    elif dx < 0:
        distance = min(distance, -x / dx)
    if dy > 0:
        distance = min(distance, (height - y) / dy)
    elif dy < 0:
        distance = min(distance, -y / dy)
    return max(distance, 0.0)


def _solid_distance(world: World, x: float, y: float, dx: float, dy: float) -> float:
    """Nearest slab-test hit against every solid rectangle."""
    boxes = world.boxes
    if not len(boxes):
        return math.inf
    origin = np.array([x, y])
    direction = np.array([dx, dy])
    direction = np.where(np.abs(direction) < 1e-12, np.copysign(1e-12, direction), direction)

    t1 = (boxes[:, :2] - origin) / direction
    t2 = (boxes[:, 2:] - origin) / direction
    t_enter = np.minimum(t1, t2).max(axis=1)
    t_exit = np.maximum(t1, t2).min(axis=1)
    hit = t_exit >= np.maximum(t_enter, 0.0)
    if not hit.any():
        return math.inf
    return float(np.maximum(t_enter[hit], 0.0).min())


def read_range(world: World, bearings: Sequence[float], pose: Pose | None = None) -> list[float]:
    """
    Distance along each bearing (relative to heading) to the nearest obstacle
    edge or map boundary, capped at ``world.max_range``.
    """
    pose = pose or world.robot
    readings = []
    for bearing in bearings:
        if not math.isfinite(bearing):
            raise ValueError(f"Bearing must be finite, got {bearing}")
        angle = pose.heading + bearing
        dx, dy = math.cos(angle), math.sin(angle)
        distance = min(
            _boundary_distance(pose.x, pose.y, dx, dy, world.width, world.height),
            _solid_distance(world, pose.x, pose.y, dx, dy),
        )
        readings.append(min(distance, world.max_range))
    return readings
