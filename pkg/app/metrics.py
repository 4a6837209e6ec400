"""Path quality measures: coverage, length, turns, shortest coverage length and CPL."""
import logging
from typing import Iterable, Sequence

from app.errors import EmptyEpisodeList, InvalidPath, StartOnObstacle
from app.grid import expand_path, require_in_bounds
from app.models.evaluation import EvaluationReport, RejectionReason, Thresholds
from app.models.grid import CellCoord, GridMap, WaypointPath

logger = logging.getLogger(__name__)


def coverage_rate(grid: GridMap, path: WaypointPath, start: CellCoord | None = None) -> float:
    """Distinct cells visited by the BFS-expanded walk over the free cell count."""
    walk = expand_path(grid, path, start)
    return len(set(walk)) / grid.free_count


def path_length(grid: GridMap, path: WaypointPath, start: CellCoord | None = None) -> float:
    """Length of the BFS-expanded walk in meters."""
    walk = expand_path(grid, path, start)
    return (len(walk) - 1) * grid.cell_size


def turn_count(path: WaypointPath | Sequence[tuple[int, int]]) -> int:
    """
    Number of heading changes along a unit-step walk.

    A reversal counts as a single turn.
    """
    cells = path.cells if isinstance(path, WaypointPath) else list(path)
    turns = 0
    previous = None
    for a, b in zip(cells, cells[1:]):
        step = (b[0] - a[0], b[1] - a[1])
        if abs(step[0]) + abs(step[1]) != 1:
            raise InvalidPath(f"Step {tuple(a)} -> {tuple(b)} is not a unit move; expand the path first")
        if previous is not None and step != previous:
            turns += 1
        previous = step
    return turns


def shortest_coverage_length(grid: GridMap, start: tuple[int, int]) -> float:
    """
    Lower bound on any walk from ``start`` that visits every free cell.

    Exact whenever a Hamiltonian path from ``start`` exists.
    """
    cell = require_in_bounds(grid, start)
    if cell in grid.obstacles:
        raise StartOnObstacle(cell)
    return (grid.free_count - 1) * grid.cell_size


def cpl_term(coverage: float, shortest: float, length: float) -> float:
    """One episode's contribution: coverage scaled by shortest/actual length."""
    longest = max(length, shortest)
    if longest == 0:
        return coverage
    return min(1.0, coverage * shortest / longest)


def cpl(episodes: Iterable[tuple[float, float, float]]) -> float:
    """Mean of per-episode terms over (coverage_rate, shortest_length, path_length) tuples."""
    terms = [cpl_term(cr, shortest, length) for cr, shortest, length in episodes]
    if not terms:
        raise EmptyEpisodeList("CPL needs at least one episode")
    return sum(terms) / len(terms)


def is_success(report: EvaluationReport, th: Thresholds) -> bool:
    return report.coverage_rate >= th.min_coverage


def rejection_reasons(
    coverage: float, turns: int, length: float, shortest: float, th: Thresholds
) -> list[RejectionReason]:
    """All gate conditions the metrics violate, in a fixed order."""
    reasons = []
    if coverage < th.min_coverage:
        reasons.append(RejectionReason.COVERAGE_BELOW_THRESHOLD)
    if turns > th.max_turns:
        reasons.append(RejectionReason.TOO_MANY_TURNS)
    if length > th.max_length_ratio * shortest + 1e-9:
        reasons.append(RejectionReason.PATH_TOO_LONG)
    return reasons
