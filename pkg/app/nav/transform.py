"""Status transform: (heading, current cell, next cell) -> drive commands."""
import math

from app.errors import NonAdjacentCells
from app.models.grid import CellCoord
from app.models.sim import normalize_angle
from app.nav.commands import DriveCommand, Forward, TurnTo

HEADING_TOLERANCE = 1e-6

CARDINAL_HEADINGS: dict[tuple[int, int], float] = {
    (1, 0): 0.0,
    (0, 1): math.pi / 2,
    (-1, 0): math.pi,
    (0, -1): -math.pi / 2,
}


def status_transform(
    heading: float,
    current: CellCoord,
    next_cell: CellCoord,
    cell_size: float = 1.0,
) -> list[DriveCommand]:
    """Commands moving the robot from ``current`` into the 4-adjacent ``next_cell``."""
    delta = (next_cell[0] - current[0], next_cell[1] - current[1])
    if delta == (0, 0):
        return []
    if delta not in CARDINAL_HEADINGS:
        raise NonAdjacentCells(f"{tuple(current)} -> {tuple(next_cell)} is not a 4-neighbour move")

    target = CARDINAL_HEADINGS[delta]
    commands: list[DriveCommand] = []
    if abs(normalize_angle(target - heading)) > HEADING_TOLERANCE:
        commands.append(TurnTo(target))
    commands.append(Forward(cell_size))
    return commands
