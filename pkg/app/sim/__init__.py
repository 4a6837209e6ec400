from app.sim.kinematics import integrate
from app.sim.sensors import SAFETY_BEAMS, read_odometry, read_range
from app.sim.trajectory import read_trajectory, write_trajectory
from app.sim.world import World, step

__all__ = [
    "SAFETY_BEAMS",
    "World",
    "integrate",
    "read_odometry",
    "read_range",
    "read_trajectory",
    "step",
    "write_trajectory",
]
