import json
from dataclasses import asdict
from pathlib import Path
from typing import Iterable

from app.models.sim import TrajectoryPoint

FIELDS = ("sim_time", "x", "y", "heading", "v", "w")


def dump_trajectory(points: Iterable[TrajectoryPoint]) -> str:
    """One JSON object per line, keys in a fixed order."""
    return "".join(json.dumps(asdict(point)) + "\n" for point in points)


def write_trajectory(path: str | Path, points: Iterable[TrajectoryPoint]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_trajectory(points), encoding="utf-8")
    return path


def read_trajectory(path: str | Path) -> list[TrajectoryPoint]:
    points = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            record = json.loads(line)
            points.append(TrajectoryPoint(**{key: float(record.get(key, 0.0)) for key in FIELDS}))
    return points
