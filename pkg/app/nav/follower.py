"""
Waypoint execution: drive the simulated robot through every cell of a path.

Each waypoint is driven to until the odometry pose is within the reach
threshold of the cell centre, then the follower moves on to the next one.
"""
from __future__ import annotations

import logging
import math

import numpy as np

from app.errors import InvalidWorld, SafetyStop, StalledProgress
from app.grid import cell_at, cell_center, expand_path
from app.models.grid import CellCoord, WaypointPath
from app.models.nav import FollowerConfig
from app.models.sim import MotionLimits, TrajectoryPoint, normalize_angle
from app.nav.commands import DriveCommand, Forward, TurnTo, Velocity
from app.nav.transform import status_transform
from app.sim.sensors import SAFETY_BEAMS, read_odometry, read_range
from app.sim.world import World, step

logger = logging.getLogger(__name__)


class _Driver:
    """Executes drive commands on a world and enforces the safety monitor."""

    def __init__(self, world: World, cfg: FollowerConfig):
        self.world = world
        self.cfg = cfg
        self.limits: MotionLimits = world.limits
        self.started = world.sim_time
        self.steps = 0

    @property
    def driving_seconds(self) -> float:
        return self.world.sim_time - self.started

    def _tick(self, target: CellCoord):
        self.steps += 1
        if self.steps > self.cfg.max_steps:
            raise StalledProgress(
                f"No progress to waypoint {target} after {self.cfg.max_steps} steps",
                list(self.world.trajectory),
                self.driving_seconds,
            )

    def _check_clearance(self):
        closest = min(read_range(self.world, SAFETY_BEAMS))
        if closest < self.cfg.safety_distance:
            logger.warning(f"Safety stop: obstacle {closest:.3f} m ahead")
            raise SafetyStop(self.world.robot, closest, list(self.world.trajectory), self.driving_seconds)

    def _move(self, v: float, w: float, dt: float, target: CellCoord):
        self._tick(target)
        if v > 0:
            self._check_clearance()
        step(self.world, v, w, dt)

    def _timed(self, amount: float, rate: float):
        """Split an open-loop motion into full steps and one partial step."""
        full_step = rate * self.limits.dt
        count = int(amount // full_step)
        remainder = amount - count * full_step
        for _ in range(count):
            yield self.limits.dt
        if remainder > 1e-12:
            yield remainder / rate

    def execute(self, command: DriveCommand, target: CellCoord):
        if isinstance(command, TurnTo):
            error = normalize_angle(command.heading - read_odometry(self.world).heading)
            sign = 1.0 if error >= 0 else -1.0
            for dt in self._timed(abs(error), self.limits.angular_speed):
                self._move(0.0, sign * self.limits.angular_speed, dt, target)
        elif isinstance(command, Forward):
            for dt in self._timed(command.distance, self.limits.linear_speed):
                self._move(self.limits.linear_speed, 0.0, dt, target)
        elif isinstance(command, Velocity):
            self._move(command.v, command.w, self.limits.dt, target)
        else:
            raise TypeError(f"Unknown drive command: {command!r}")

    def distance_to(self, cell: CellCoord) -> float:
        x, y = cell_center(self.world.map, cell)
        return read_odometry(self.world).distance_to(x, y)

    def go_to(self, cell: CellCoord):
        """Direct turn-then-drive onto a cell centre from wherever odometry says we are."""
        x, y = cell_center(self.world.map, cell)
        while self.distance_to(cell) >= self.cfg.reach_threshold:
            pose = read_odometry(self.world)
            self.execute(TurnTo(math.atan2(y - pose.y, x - pose.x)), cell)
            self.execute(Forward(pose.distance_to(x, y)), cell)


def _turn_and_drive(driver: _Driver, current: CellCoord, nxt: CellCoord):
    heading = read_odometry(driver.world).heading
    for command in status_transform(heading, current, nxt, driver.world.map.cell_size):
        driver.execute(command, nxt)
    driver.go_to(nxt)


def _lookahead_point(a: np.ndarray, b: np.ndarray, position: np.ndarray, lookahead: float) -> np.ndarray:
    """Point ``lookahead`` ahead of the projection of ``position`` onto segment a-b, clamped to b."""
    segment = b - a
    length = float(np.hypot(*segment))
    if length == 0:
        return b
    along = float(np.dot(position - a, segment)) / length
    along = min(max(along, 0.0) + lookahead, length)
    return a + segment * (along / length)


def _dog_curve(driver: _Driver, current: CellCoord, nxt: CellCoord):
    grid = driver.world.map
    a = np.array(cell_center(grid, current))
    b = np.array(cell_center(grid, nxt))
    limits = driver.limits
    while driver.distance_to(nxt) >= driver.cfg.reach_threshold:
        pose = read_odometry(driver.world)
        tx, ty = _lookahead_point(a, b, np.array([pose.x, pose.y]), driver.cfg.lookahead)
        error = normalize_angle(math.atan2(ty - pose.y, tx - pose.x) - pose.heading)
        w = float(np.clip(driver.cfg.heading_gain * error, -limits.angular_speed, limits.angular_speed))
        v = limits.linear_speed * max(0.0, math.cos(error))
        driver.execute(Velocity(v, w), nxt)


FOLLOWERS = {
    "turn_and_drive": _turn_and_drive,
    "dog_curve": _dog_curve,
}


def follow(
    world: World,
    path: WaypointPath,
    cfg: FollowerConfig | None = None,
    limits: MotionLimits | None = None,
) -> tuple[list[TrajectoryPoint], float]:
    """
    Drive through ``path`` and return the trajectory and the simulated driving time.

    The path is expanded into unit moves first, starting from the cell the robot
    stands in. Raises SafetyStop when a safety beam reads less than the safety
    distance before a forward move, and StalledProgress when one waypoint takes
    more than ``cfg.max_steps`` steps. Both carry the partial trajectory.
    """
    grid = world.map
    cfg = (cfg or FollowerConfig()).resolved(grid.cell_size)
    if cfg.safety_distance <= world.safety_radius:
        raise InvalidWorld(
            f"safety_distance {cfg.safety_distance} must exceed the robot radius {world.safety_radius}"
        )
    if limits is not None:
        world.limits = limits

    here = cell_at(grid, world.robot.x, world.robot.y)
    walk = expand_path(grid, path, here if here is not None and grid.is_free(here) else None)
    driver = _Driver(world, cfg)
    advance = FOLLOWERS[cfg.method]

    driver.go_to(walk[0])
    for current, nxt in zip(walk, walk[1:]):
        driver.steps = 0
        advance(driver, current, nxt)

    logger.debug(
        f"[{cfg.method}] drove {len(walk)} cells in {driver.driving_seconds:.2f}s simulated, "
        f"{world.collisions} collisions"
    )
    return list(world.trajectory), driver.driving_seconds
