"""Map file parsing, neighbourhoods and BFS routing on a GridMap."""
from __future__ import annotations

import logging
import math
from collections import deque
from pathlib import Path

from app.errors import EmptyMap, InvalidPath, MalformedMap, OnObstacle, OutOfBounds
from app.models.grid import DIRECTIONS, CellCoord, GridMap, WaypointPath

logger = logging.getLogger(__name__)

FREE = "."
BLOCKED = "#"
HEADER = "cellsize"


def parse_map(text: str, cell_size: float | None = None) -> GridMap:
    """
    Parse the text map format.

    The first grid line is the northmost row, so row 0 is the last line.
    An optional first line "cellsize <float>" overrides ``cell_size``.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()

    size = 1.0 if cell_size is None else cell_size
    if lines and lines[0].strip().lower().startswith(HEADER):
        parts = lines[0].split()
        if len(parts) != 2:
            raise MalformedMap(f"Bad header line: {lines[0]!r}")
        try:
            size = float(parts[1])
        except ValueError:
            raise MalformedMap(f"Bad cell size: {parts[1]!r}") from None
        if not math.isfinite(size) or size <= 0:
            raise MalformedMap(f"Cell size must be positive, got {parts[1]}")
        lines = lines[1:]

    if not lines:
        raise EmptyMap("Map file has no grid rows")

    width = len(lines[0])
    if width == 0:
        raise EmptyMap("Map rows are empty")

    obstacles = set()
    height = len(lines)
    for index, line in enumerate(lines):
        if len(line) != width:
            raise MalformedMap(f"Row {index + 1} has {len(line)} cells, expected {width}")
        row = height - 1 - index
        for col, char in enumerate(line):
            if char == BLOCKED:
                obstacles.add(CellCoord(col, row))
            elif char != FREE:
                raise MalformedMap(f"Illegal character {char!r} in row {index + 1}")

    grid = GridMap(width=width, height=height, obstacles=frozenset(obstacles), cell_size=size)
    logger.debug(f"Parsed {width}x{height} map with {len(obstacles)} obstacles")
    return grid


def load_map(path: str | Path) -> GridMap:
    return parse_map(Path(path).read_text(encoding="utf-8"))


def serialize_map(grid: GridMap) -> str:
    """Canonical text form; the header is written only for non-unit cells."""
    lines = []
    if grid.cell_size != 1.0:
        lines.append(f"{HEADER} {grid.cell_size!r}")
    for row in range(grid.height - 1, -1, -1):
        lines.append("".join(
            BLOCKED if CellCoord(col, row) in grid.obstacles else FREE
            for col in range(grid.width)
        ))
    return "\n".join(lines) + "\n"


def require_in_bounds(grid: GridMap, cell: tuple[int, int]) -> CellCoord:
    if not grid.in_bounds(cell):
        raise OutOfBounds(cell)
    return CellCoord(*cell)


def neighbors4(grid: GridMap, cell: tuple[int, int]) -> list[CellCoord]:
    """Free 4-neighbours in E, N, W, S order."""
    col, row = require_in_bounds(grid, cell)
    result = []
    for dc, dr in DIRECTIONS:
        nxt = CellCoord(col + dc, row + dr)
        if grid.is_free(nxt):
            result.append(nxt)
    return result


def cell_center(grid: GridMap, cell: tuple[int, int]) -> tuple[float, float]:
    col, row = require_in_bounds(grid, cell)
    return ((col + 0.5) * grid.cell_size, (row + 0.5) * grid.cell_size)


def cell_at(grid: GridMap, x: float, y: float) -> CellCoord | None:
    """Cell containing a world point, or None outside the map."""
    col = math.floor(x / grid.cell_size)
    row = math.floor(y / grid.cell_size)
    if not grid.in_bounds((col, row)):
        return None
    return CellCoord(col, row)


def is_adjacent(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1


def shortest_path(grid: GridMap, source: CellCoord, target: CellCoord) -> list[CellCoord]:
    """First-found BFS route, both endpoints included."""
    if source == target:
        return [source]
    parents: dict[CellCoord, CellCoord | None] = {source: None}
    queue = deque([source])
    while queue:
        current = queue.popleft()
        for nxt in neighbors4(grid, current):
            if nxt in parents:
                continue
            parents[nxt] = current
            if nxt == target:
                route = [nxt]
                while parents[route[-1]] is not None:
                    route.append(parents[route[-1]])
                return route[::-1]
            queue.append(nxt)
    # unreachable on a validated map
    raise InvalidPath(f"No route from {tuple(source)} to {tuple(target)}")


def validate_path(grid: GridMap, path: WaypointPath) -> None:
    for cell in path.cells:
        if not grid.in_bounds(cell):
            raise OutOfBounds(cell)
        if cell in grid.obstacles:
            raise OnObstacle(cell)


def expand_path(grid: GridMap, path: WaypointPath, start: CellCoord | None = None) -> list[CellCoord]:
    """
    Unit-step walk through every waypoint.

    Non-adjacent consecutive waypoints are bridged with BFS routes. When ``start`` is
    given and differs from the first waypoint, the walk begins at ``start``.
    """
    validate_path(grid, path)
    cells = list(path.cells)
    if start is not None and cells[0] != start:
        if not grid.is_free(start):
            raise OnObstacle(start) if grid.in_bounds(start) else OutOfBounds(start)
        cells.insert(0, CellCoord(*start))

    walk = [cells[0]]
    for nxt in cells[1:]:
        if is_adjacent(walk[-1], nxt):
            walk.append(nxt)
        else:
            walk.extend(shortest_path(grid, walk[-1], nxt)[1:])
    return walk
