import pytest

from app.grid import parse_map
from app.integrations.scripted import ScriptedOracle
from app.models.grid import GridMap
from app.patterns import lawnmower


def open_map(width: int, height: int | None = None, cell_size: float = 1.0) -> GridMap:
    return parse_map("\n".join(["." * width] * (height or width)), cell_size)


def lawnmower_text(grid: GridMap, corner=(0, 0)) -> str:
    return "|".join(str(cell) for cell in lawnmower(grid, corner).cells)


class RecordingOracle(ScriptedOracle):
    """Scripted oracle that keeps every request it was sent."""

    def __init__(self, config, transport=None):
        super().__init__(config, transport)
        self.requests = []

    async def complete(self, req):
        self.requests.append(req)
        return await super().complete(req)


@pytest.fixture
def open3() -> GridMap:
    return open_map(3)


@pytest.fixture
def open5() -> GridMap:
    return open_map(5)
