"""Continuous 2D world around a GridMap, stepped in simulated time."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from app.config import settings
from app.errors import CommandOutOfLimits, InvalidWorld
from app.grid import cell_center
from app.models.grid import CellCoord, GridMap
from app.models.sim import MotionLimits, Pose, Rect, TrajectoryPoint
from app.sim.kinematics import integrate

logger = logging.getLogger(__name__)

LIMIT_SLACK = 1e-9


def default_limits() -> MotionLimits:
    return MotionLimits(
        linear_speed=settings.linear_speed,
        angular_speed=settings.angular_speed,
        dt=settings.sim_dt,
    )


def cell_rect(grid: GridMap, cell: CellCoord) -> Rect:
    size = grid.cell_size
    return Rect(xmin=cell.col * size, ymin=cell.row * size, xmax=(cell.col + 1) * size, ymax=(cell.row + 1) * size)


@dataclass
class World:
    """
    Mutable simulation state for one episode.

    ``extra_obstacles`` are hidden from the planner; they model obstacles the
    map does not know about. Every step is appended to ``trajectory``.
    """

    map: GridMap
    robot: Pose
    extra_obstacles: list[Rect] = field(default_factory=list)
    limits: MotionLimits = field(default_factory=default_limits)
    safety_radius: float | None = None
    max_range: float = field(default_factory=lambda: settings.max_range)
    sigma_xy: float = field(default_factory=lambda: settings.odometry_sigma_xy)
    sigma_heading: float = field(default_factory=lambda: settings.odometry_sigma_heading)
    seed: int | None = None
    sim_time: float = 0.0
    collisions: int = 0
    trajectory: list[TrajectoryPoint] = field(default_factory=list)

    def __post_init__(self):
        if self.safety_radius is None:
            self.safety_radius = min(settings.safety_radius, 0.25 * self.map.cell_size)
        if self.safety_radius < 0 or self.max_range <= 0:
            raise InvalidWorld("safety_radius must be >= 0 and max_range > 0")
        if self.safety_radius >= 0.5 * self.map.cell_size:
            raise InvalidWorld(f"safety_radius {self.safety_radius} does not fit in a {self.map.cell_size} m cell")
        if self.sigma_xy < 0 or self.sigma_heading < 0:
            raise InvalidWorld("odometry noise must be >= 0")
        self.rng = np.random.default_rng(self.seed)
        self.solids: list[Rect] = [cell_rect(self.map, c) for c in sorted(self.map.obstacles)]
        self.solids.extend(self.extra_obstacles)
        self.boxes = np.array([(r.xmin, r.ymin, r.xmax, r.ymax) for r in self.solids], dtype=float).reshape(-1, 4)
        if not (0.0 <= self.robot.x <= self.width and 0.0 <= self.robot.y <= self.height):
            raise InvalidWorld(f"Robot at ({self.robot.x}, {self.robot.y}) is outside the map")
        if not self.trajectory:
            self.trajectory.append(TrajectoryPoint(self.sim_time, self.robot.x, self.robot.y, self.robot.heading))

    @classmethod
    def at_cell(cls, grid: GridMap, cell: CellCoord, heading: float = 0.0, **kwargs) -> "World":
        """World with the robot on a cell centre."""
        x, y = cell_center(grid, cell)
        return cls(map=grid, robot=Pose(x, y, heading), **kwargs)

    @property
    def width(self) -> float:
        return self.map.width * self.map.cell_size

    @property
    def height(self) -> float:
        return self.map.height * self.map.cell_size

    @property
    def collided(self) -> bool:
        return self.collisions > 0

    def penetrates(self, x: float, y: float) -> bool:
        """True when the robot disc at (x, y) overlaps a solid or leaves the map."""
        r = self.safety_radius
        if x < r or y < r or x > self.width - r or y > self.height - r:
            return True
        return any(rect.distance(x, y) < r or rect.contains(x, y) for rect in self.solids)


def step(world: World, v: float, w: float, dt: float | None = None) -> World:
    """
    Advance the world by one command held for ``dt`` seconds.

    A motion that would penetrate an obstacle is cancelled: the pose stays,
    the collision is counted and simulated time still advances.
    """
    dt = world.limits.dt if dt is None else dt
    if abs(v) > world.limits.linear_speed + LIMIT_SLACK:
        raise CommandOutOfLimits(f"|v|={abs(v):.3f} exceeds {world.limits.linear_speed} m/s")
    if abs(w) > world.limits.angular_speed + LIMIT_SLACK:
        raise CommandOutOfLimits(f"|w|={abs(w):.3f} exceeds {world.limits.angular_speed} rad/s")
    if dt <= 0:
        raise CommandOutOfLimits(f"dt must be positive, got {dt}")

    moved = integrate(world.robot, v, w, dt)
    if world.penetrates(moved.x, moved.y):
        world.collisions += 1
        logger.warning(f"Collision at ({moved.x:.3f}, {moved.y:.3f}); motion cancelled")
    else:
        world.robot = moved
    world.sim_time += dt
    world.trajectory.append(TrajectoryPoint(world.sim_time, world.robot.x, world.robot.y, world.robot.heading, v, w))
    return world
