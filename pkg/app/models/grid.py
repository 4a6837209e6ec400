from __future__ import annotations

from collections import deque
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from app.errors import DisconnectedFreeSpace, EmptyMap, InvalidPath, MalformedMap


class CellCoord(NamedTuple):
    """Grid cell index: col grows east, row grows north."""
    col: int
    row: int

    def __str__(self) -> str:
        return f"{self.col},{self.row}"


# E, N, W, S
DIRECTIONS: tuple[tuple[int, int], ...] = ((1, 0), (0, 1), (-1, 0), (0, -1))


class GridMap(BaseModel):
    """Immutable planning arena: a rectangle of cells, some blocked."""

    model_config = ConfigDict(frozen=True)

    width: int = Field(ge=1)
    height: int = Field(ge=1)
    obstacles: frozenset[CellCoord] = frozenset()
    cell_size: float = Field(default=1.0, gt=0)

    @field_validator("cell_size")
    @classmethod
    def _finite_cell_size(cls, value: float) -> float:
        if value != value or value == float("inf"):
            raise ValueError("cell_size must be finite")
        return value

    @model_validator(mode="after")
    def _check_layout(self) -> "GridMap":
        for cell in self.obstacles:
            if not (0 <= cell.col < self.width and 0 <= cell.row < self.height):
                raise MalformedMap(f"Obstacle {tuple(cell)} outside {self.width}x{self.height} map")
        free = self.width * self.height - len(self.obstacles)
        if free < 1:
            raise EmptyMap("Map has no free cells")
        if len(self._reachable(self.free_cells()[0])) != free:
            raise DisconnectedFreeSpace("Free cells do not form a single 4-connected region")
        return self

    @field_serializer("obstacles")
    def _sorted_obstacles(self, obstacles: frozenset[CellCoord]) -> list[list[int]]:
        return [[c.col, c.row] for c in sorted(obstacles)]

    def in_bounds(self, cell: tuple[int, int]) -> bool:
        return 0 <= cell[0] < self.width and 0 <= cell[1] < self.height

    def is_free(self, cell: tuple[int, int]) -> bool:
        return self.in_bounds(cell) and CellCoord(*cell) not in self.obstacles

    def free_cells(self) -> list[CellCoord]:
        """Free cells in row-major order starting from the south-west corner."""
        return [
            CellCoord(col, row)
            for row in range(self.height)
            for col in range(self.width)
            if CellCoord(col, row) not in self.obstacles
        ]

    @property
    def free_count(self) -> int:
        return self.width * self.height - len(self.obstacles)

    @property
    def is_open_rectangle(self) -> bool:
        return not self.obstacles

    def corners(self) -> list[CellCoord]:
        """Distinct corner cells in the order SW, SE, NW, NE."""
        seen: list[CellCoord] = []
        for cell in (
            CellCoord(0, 0),
            CellCoord(self.width - 1, 0),
            CellCoord(0, self.height - 1),
            CellCoord(self.width - 1, self.height - 1),
        ):
            if cell not in seen:
                seen.append(cell)
        return seen

    def _reachable(self, origin: CellCoord) -> set[CellCoord]:
        seen = {origin}
        queue = deque([origin])
        while queue:
            col, row = queue.popleft()
            for dc, dr in DIRECTIONS:
                nxt = CellCoord(col + dc, row + dr)
                if nxt not in seen and self.is_free(nxt):
                    seen.add(nxt)
                    queue.append(nxt)
        return seen


class WaypointPath(BaseModel):
    """Ordered waypoint cells proposed by a planner."""

    model_config = ConfigDict(frozen=True)

    cells: tuple[CellCoord, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def _no_repeats_in_a_row(self) -> "WaypointPath":
        for i in range(1, len(self.cells)):
            if self.cells[i] == self.cells[i - 1]:
                raise InvalidPath(f"Waypoint {i} repeats cell {tuple(self.cells[i])}")
        return self

    @classmethod
    def of(cls, cells) -> "WaypointPath":
        return cls(cells=tuple(CellCoord(*c) for c in cells))

    @property
    def start(self) -> CellCoord:
        return self.cells[0]

    def __len__(self) -> int:
        return len(self.cells)
