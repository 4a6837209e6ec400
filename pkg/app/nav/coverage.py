from typing import Iterable

from app.grid import cell_at, cell_center
from app.models.grid import CellCoord, GridMap
from app.models.sim import TrajectoryPoint


def visited_cells(
    trajectory: Iterable[TrajectoryPoint],
    grid: GridMap,
    reach_threshold: float | None = None,
) -> set[CellCoord]:
    """Free cells whose centre some trajectory pose came within ``reach_threshold`` of."""
    reach = 0.1 * grid.cell_size if reach_threshold is None else reach_threshold
    visited: set[CellCoord] = set()
    for point in trajectory:
        cell = cell_at(grid, point.x, point.y)
        if cell is None or cell in visited or not grid.is_free(cell):
            continue
        cx, cy = cell_center(grid, cell)
        if (point.x - cx) ** 2 + (point.y - cy) ** 2 < reach * reach:
            visited.add(cell)
    return visited


def executed_coverage(trajectory: Iterable[TrajectoryPoint], grid: GridMap, reach_threshold: float | None = None) -> float:
    return len(visited_cells(trajectory, grid, reach_threshold)) / grid.free_count
