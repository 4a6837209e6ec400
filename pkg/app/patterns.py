"""
Generators for the four classic coverage patterns on obstacle-free rectangles.

All walks move between 4-adjacent cells only. Orientation is derived from the
start corner: the first sweep heads away from the corner along the map.
"""
import logging
from typing import Callable

from app.errors import MapTooSmall, NotACorner, UnsupportedMap
from app.models.grid import CellCoord, GridMap, WaypointPath

logger = logging.getLogger(__name__)

Step = tuple[int, int]


def _check(grid: GridMap, corner: tuple[int, int]) -> tuple[CellCoord, int, int]:
    """Validate the map/corner and return the corner with its inward x/y signs."""
    if grid.obstacles:
        raise UnsupportedMap("Coverage patterns need an obstacle-free rectangle")
    corner = CellCoord(*corner)
    if corner not in grid.corners():
        raise NotACorner(f"{tuple(corner)} is not a corner of the {grid.width}x{grid.height} map")
    sx = 1 if corner.col == 0 else -1
    sy = 1 if corner.row == 0 else -1
    return corner, sx, sy


def _rotate(step: Step, sense: int) -> Step:
    dx, dy = step
    return (-dy, dx) if sense > 0 else (dy, -dx)


def _boustrophedon(x0: int, y0: int, width: int, height: int, sx: int, sy: int) -> list[CellCoord]:
    """North-south runs, one column at a time, from corner (x0, y0)."""
    cells = []
    for i in range(width):
        col = x0 + i * sx
        rows = [y0 + j * sy for j in range(height)]
        if i % 2:
            rows.reverse()
        cells.extend(CellCoord(col, row) for row in rows)
    return cells


def _ring_loop(x0: int, y0: int, width: int, height: int, sx: int, sy: int) -> list[CellCoord]:
    """Closed walk around a block's boundary, returning to (x0, y0)."""
    first = (sx, 0)
    second = (0, sy)
    cells = [CellCoord(x0, y0)]
    for step, count in ((first, width - 1), (second, height - 1),
                        ((-sx, 0), width - 1), ((0, -sy), height - 1)):
        for _ in range(count):
            last = cells[-1]
            cells.append(CellCoord(last.col + step[0], last.row + step[1]))
    return cells


def lawnmower(grid: GridMap, start_corner: tuple[int, int]) -> WaypointPath:
    corner, sx, sy = _check(grid, start_corner)
    cells = _boustrophedon(corner.col, corner.row, grid.width, grid.height, sx, sy)
    return WaypointPath(cells=tuple(cells))


def square_spiral(grid: GridMap, start_corner: tuple[int, int]) -> WaypointPath:
    corner, sx, sy = _check(grid, start_corner)
    sense = sx * sy
    step: Step = (sx, 0)
    cells = [corner]
    visited = {corner}
    total = grid.width * grid.height
    while len(cells) < total:
        for _ in range(4):
            nxt = CellCoord(cells[-1].col + step[0], cells[-1].row + step[1])
            if grid.in_bounds(nxt) and nxt not in visited:
                break
            step = _rotate(step, sense)
        else:
            break
        cells.append(nxt)
        visited.add(nxt)
    return WaypointPath(cells=tuple(cells))


def square_move(grid: GridMap, start_corner: tuple[int, int]) -> WaypointPath:
    """Closed loop around each concentric ring, then one diagonal hop inward."""
    corner, sx, sy = _check(grid, start_corner)
    cells: list[CellCoord] = []
    width, height = grid.width, grid.height
    x, y = corner
    while width > 0 and height > 0:
        if cells:
            # hop to the next ring's entry through the cell beside it
            cells.append(CellCoord(x, cells[-1].row))
            cells.append(CellCoord(x, y))
            cells.extend(_ring_loop(x, y, width, height, sx, sy)[1:])
        else:
            cells.extend(_ring_loop(x, y, width, height, sx, sy))
        x, y = x + sx, y + sy
        width, height = width - 2, height - 2
    return WaypointPath(cells=tuple(cells))


def wallfollow_then_lawnmower(grid: GridMap, start_corner: tuple[int, int]) -> WaypointPath:
    """Perimeter loop back to the corner, a two-cell hop inside, then a lawnmower."""
    corner, sx, sy = _check(grid, start_corner)
    if grid.width < 3 or grid.height < 3:
        raise MapTooSmall("Wall following needs at least a 3x3 map")
    cells = _ring_loop(corner.col, corner.row, grid.width, grid.height, sx, sy)
    cells.append(CellCoord(corner.col + sx, corner.row))
    inner = _boustrophedon(corner.col + sx, corner.row + sy, grid.width - 2, grid.height - 2, sx, sy)
    cells.extend(inner)
    return WaypointPath(cells=tuple(cells))


PATTERNS: dict[str, Callable[[GridMap, tuple[int, int]], WaypointPath]] = {
    "lawnmower": lawnmower,
    "spiral": square_spiral,
    "square": square_move,
    "wallmow": wallfollow_then_lawnmower,
}
