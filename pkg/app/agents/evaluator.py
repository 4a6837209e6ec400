import logging

from app.grid import expand_path
from app.metrics import cpl_term, rejection_reasons, shortest_coverage_length, turn_count
from app.models.evaluation import EvaluationReport, Thresholds
from app.models.grid import CellCoord, GridMap, WaypointPath

logger = logging.getLogger(__name__)


def evaluate(grid: GridMap, start: CellCoord, path: WaypointPath, th: Thresholds) -> EvaluationReport:
    """
    Score a waypoint list and apply the acceptance gate.

    The walk starts at ``start`` (prepended when the path begins elsewhere) and
    non-adjacent waypoints are bridged with BFS routes before measuring.
    """
    start = CellCoord(*start)
    shortest = shortest_coverage_length(grid, start)
    walk = expand_path(grid, path, start)

    coverage = len(set(walk)) / grid.free_count
    length = (len(walk) - 1) * grid.cell_size
    turns = turn_count(walk)
    reasons = rejection_reasons(coverage, turns, length, shortest, th)

    report = EvaluationReport(
        coverage_rate=coverage,
        path_length=length,
        turn_count=turns,
        shortest_length=shortest,
        cpl_term=cpl_term(coverage, shortest, length),
        accepted=not reasons,
        reasons=reasons,
    )
    logger.debug(f"Evaluated {len(path)} waypoints from {start}: {report.describe()}")
    return report
