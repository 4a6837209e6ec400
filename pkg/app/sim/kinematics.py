"""Unicycle model for a differential-drive base."""
import math

from app.models.sim import Pose

STRAIGHT_EPS = 1e-9


def integrate(pose: Pose, v: float, w: float, dt: float) -> Pose:
    """
    Exact pose after holding (v, w) for dt seconds.

    With w = 0 the robot drives a straight line, otherwise an arc of radius v / w.
    """
    heading = pose.heading + w * dt
    if abs(w) < STRAIGHT_EPS:
        return Pose(
            pose.x + v * dt * math.cos(pose.heading),
            pose.y + v * dt * math.sin(pose.heading),
            heading,
        )
    radius = v / w
    return Pose(
        pose.x + radius * (math.sin(heading) - math.sin(pose.heading)),
        pose.y - radius * (math.cos(heading) - math.cos(pose.heading)),
        heading,
    )

