import pytest

from app.agents import evaluate
from app.errors import MapTooSmall, NotACorner, UnsupportedMap
from app.grid import is_adjacent, parse_map
from app.models.evaluation import Thresholds
from app.patterns import PATTERNS, lawnmower, square_move, square_spiral, wallfollow_then_lawnmower
from tests.conftest import open_map


def cells(path):
    return [tuple(c) for c in path.cells]


class TestExamples:
    def test_lawnmower_2x2(self):
        assert cells(lawnmower(open_map(2), (0, 0))) == [(0, 0), (0, 1), (1, 1), (1, 0)]

    def test_lawnmower_3x3(self, open3):
        assert cells(lawnmower(open3, (0, 0))) == [
            (0, 0), (0, 1), (0, 2), (1, 2), (1, 1), (1, 0), (2, 0), (2, 1), (2, 2)]

    def test_spiral_3x3(self, open3):
        assert cells(square_spiral(open3, (0, 0))) == [
            (0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1), (1, 1)]

    def test_spiral_2x2(self):
        assert cells(square_spiral(open_map(2), (0, 0))) == [(0, 0), (1, 0), (1, 1), (0, 1)]

    def test_square_move_3x3(self, open3):
        path = square_move(open3, (0, 0))
        assert cells(path)[:9] == [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1), (0, 0)]
        assert cells(path)[-1] == (1, 1)
        report = evaluate(open3, (0, 0), path, Thresholds.for_map(open3))
        assert report.coverage_rate == 1.0
        assert report.path_length == 10.0

    def test_square_move_2x2(self):
        grid = open_map(2)
        path = square_move(grid, (0, 0))
        assert cells(path) == [(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]
        assert evaluate(grid, (0, 0), path, Thresholds.for_map(grid)).path_length == 4.0

    def test_wallmow_3x3(self, open3):
        path = wallfollow_then_lawnmower(open3, (0, 0))
        assert cells(path)[:9] == [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1), (0, 0)]
        assert cells(path)[-1] == (1, 1)
        assert evaluate(open3, (0, 0), path, Thresholds.for_map(open3)).coverage_rate == 1.0

    def test_wallmow_4x4(self):
        grid = open_map(4)
        path = wallfollow_then_lawnmower(grid, (0, 0))
        assert len(set(cells(path)[:13])) == 12
        assert cells(path)[-4:] == [(1, 1), (1, 2), (2, 2), (2, 1)]

    @pytest.mark.parametrize("pattern", ["lawnmower", "spiral", "square"])
    def test_single_cell(self, pattern):
        assert cells(PATTERNS[pattern](open_map(1), (0, 0))) == [(0, 0)]


class TestBaselineOptimality:
    @pytest.mark.parametrize("size,length", [(5, 24), (7, 48), (11, 120)])
    @pytest.mark.parametrize("pattern", ["lawnmower", "spiral"])
    def test_hamiltonian_from_every_corner(self, pattern, size, length):
        grid = open_map(size)
        for corner in grid.corners():
            path = PATTERNS[pattern](grid, corner)
            report = evaluate(grid, corner, path, Thresholds.for_map(grid, max_length_ratio=1.0))
            assert report.coverage_rate == 1.0
            assert report.path_length == length
            assert report.cpl_term == 1.0
            assert report.accepted

    @pytest.mark.parametrize("size,length", [(5, 24), (7, 48), (11, 120)])
    @pytest.mark.parametrize("pattern", ["square", "wallmow"])
    def test_full_coverage_at_least_optimal_length(self, pattern, size, length):
        grid = open_map(size)
        for corner in grid.corners():
            report = evaluate(grid, corner, PATTERNS[pattern](grid, corner), Thresholds.for_map(grid))
            assert report.coverage_rate == 1.0
            assert report.path_length >= length

    @pytest.mark.parametrize("pattern", list(PATTERNS))
    def test_rectangles_move_between_neighbours(self, pattern):
        grid = open_map(6, 4)
        for corner in grid.corners():
            walk = cells(PATTERNS[pattern](grid, corner))
            assert all(is_adjacent(a, b) for a, b in zip(walk, walk[1:]))
            assert set(walk) == set(grid.free_cells())


class TestErrors:
    def test_obstacles_unsupported(self):
        with pytest.raises(UnsupportedMap):
            lawnmower(parse_map("...\n.#.\n..."), (0, 0))

    def test_not_a_corner(self, open3):
        with pytest.raises(NotACorner):
            square_spiral(open3, (1, 0))

    def test_wall_following_needs_room(self):
        with pytest.raises(MapTooSmall):
            wallfollow_then_lawnmower(open_map(2), (0, 0))
