import logging
import re

from app.errors import EmptyResponse, MalformedToken, OnObstacle, OutOfBounds
from app.models.grid import CellCoord, GridMap, WaypointPath

logger = logging.getLogger(__name__)

TOKEN = re.compile(r"^(-?\d+)\s*,\s*(-?\d+)$")


def strip_code_fence(text: str) -> str:
    """Remove a markdown code fence wrapped around the answer."""
    text = text.strip()
    if text.startswith("```"):
        text = text.split("\n", 1)[1] if "\n" in text else text[3:]
    if text.endswith("```"):
        text = text[:-3]
    return text.strip()


def parse_waypoints(text: str, grid: GridMap) -> WaypointPath:
    """
    Parse a bar-separated "col,row|col,row|..." answer into a path on ``grid``.

    Whitespace and line breaks around tokens are ignored and repeated
    consecutive cells are collapsed.
    """
    body = strip_code_fence(text or "")
    if not body:
        raise EmptyResponse("Response contains no waypoints")

    cells: list[CellCoord] = []
    for index, raw in enumerate(body.split("|")):
        token = raw.strip()
        if not token:
            continue
        match = TOKEN.match(token)
        if not match:
            raise MalformedToken(token, index)
        cell = CellCoord(int(match.group(1)), int(match.group(2)))
        if not grid.in_bounds(cell):
            raise OutOfBounds(cell)
        if cell in grid.obstacles:
            raise OnObstacle(cell)
        if cells and cells[-1] == cell:
            continue
        cells.append(cell)

    if not cells:
        raise EmptyResponse("Response contains no waypoints")
    return WaypointPath(cells=tuple(cells))


def format_waypoints(path: WaypointPath) -> str:
    return "|".join(str(cell) for cell in path.cells)
