from app.nav.commands import DriveCommand, Forward, TurnTo, Velocity
from app.nav.coverage import executed_coverage, visited_cells
from app.nav.follower import FOLLOWERS, follow
from app.nav.transform import status_transform

__all__ = [
    "DriveCommand",
    "FOLLOWERS",
    "Forward",
    "TurnTo",
    "Velocity",
    "executed_coverage",
    "follow",
    "status_transform",
    "visited_cells",
]
