"""Deterministic SVG drawing of a map, a waypoint path and an executed trajectory."""
from pathlib import Path
from typing import Sequence

from app.grid import cell_center
from app.models.grid import CellCoord, GridMap, WaypointPath
from app.models.sim import TrajectoryPoint

PIXELS_PER_CELL = 40.0
MARGIN = 10.0

PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">
<rect x="0" y="0" width="{width:.0f}" height="{height:.0f}" style="fill:#ffffff"/>
"""

POSTAMBLE = "</svg>\n"


class _Canvas:
    """Maps world meters to SVG pixels with the y axis pointing up."""

    def __init__(self, grid: GridMap):
        self.grid = grid
        self.scale = PIXELS_PER_CELL / grid.cell_size
        self.width = grid.width * grid.cell_size * self.scale + 2 * MARGIN
        self.height = grid.height * grid.cell_size * self.scale + 2 * MARGIN
        self.commands: list[str] = []

    def point(self, x: float, y: float) -> str:
        px = MARGIN + x * self.scale
        py = self.height - MARGIN - y * self.scale
        return f"{px:.2f},{py:.2f}"

    def cell(self, cell: CellCoord, blocked: bool):
        size = self.grid.cell_size * self.scale
        x = MARGIN + cell.col * size
        y = self.height - MARGIN - (cell.row + 1) * size
        css = "cell blocked" if blocked else "cell"
        fill = "#404040" if blocked else "#ffffff"
        self.commands.append(
            f'<rect class="{css}" x="{x:.2f}" y="{y:.2f}" width="{size:.2f}" height="{size:.2f}" '
            f'style="fill:{fill};stroke:#b0b0b0;stroke-width:1"/>'
        )

    def polyline(self, css: str, points: Sequence[tuple[float, float]], color: str, width: float):
        self.commands.append(
            f'<polyline class="{css}" points="{" ".join(self.point(x, y) for x, y in points)}" '
            f'style="fill:none;stroke:{color};stroke-width:{width:g}"/>'
        )

    def circle(self, css: str, x: float, y: float, radius: float, color: str):
        px, py = self.point(x, y).split(",")
        self.commands.append(f'<circle class="{css}" cx="{px}" cy="{py}" r="{radius:g}" style="fill:{color}"/>')

    def document(self) -> str:
        return PREAMBLE.format(width=self.width, height=self.height) + "".join(
            command + "\n" for command in self.commands
        ) + POSTAMBLE


def render_path(
    grid: GridMap,
    path: WaypointPath,
    trajectory: Sequence[TrajectoryPoint] | None = None,
) -> str:
    """
    SVG document with grid cells, obstacles, the waypoint polyline and a start
    marker. The executed trajectory is overlaid only when it is non-empty.
    """
    canvas = _Canvas(grid)
    for row in range(grid.height):
        for col in range(grid.width):
            cell = CellCoord(col, row)
            canvas.cell(cell, cell in grid.obstacles)

    centers = [cell_center(grid, cell) for cell in path.cells]
    canvas.polyline("path", centers, "#1f77b4", 3)
    canvas.circle("start", *centers[0], 6, "#2ca02c")

    if trajectory:
        canvas.commands.append('<g class="trajectory">')
        canvas.polyline("executed", [(p.x, p.y) for p in trajectory], "#d62728", 1.5)
        canvas.commands.append("</g>")
    return canvas.document()


def write_render(path: str | Path, document: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(document, encoding="utf-8")
    return path
