import pytest

from app.agents import LLMPlanner, PatternPlanner, build_planner, evaluate, parse_waypoints, plan, run_all_planners
from app.agents.base import frozen_clock
from app.agents.pattern import nearest_corner
from app.errors import ExhaustedIterations, ScriptExhausted
from app.integrations import scripted_oracle
from app.models.evaluation import RejectionReason, Thresholds
from app.models.grid import CellCoord, WaypointPath
from app.models.llm import ProviderConfig
from app.models.planning import PlannerConfig, PlanResult
from tests.conftest import RecordingOracle, lawnmower_text

BAD = "0,0|0,1"
MALFORMED = "I would start in the corner"
LONG_3X3 = "0,0|0,1|0,2|1,2|1,1|1,0|2,0|2,1|2,2|2,0|0,0|0,2|2,2|2,0|0,0"


class TestEvaluate:
    def test_lawnmower_3x3(self, open3):
        path = parse_waypoints(lawnmower_text(open3), open3)
        report = evaluate(open3, CellCoord(0, 0), path, Thresholds.for_map(open3))
        assert report.accepted
        assert report.coverage_rate == 1.0
        assert report.path_length == 8.0
        assert report.turn_count == 4
        assert report.shortest_length == 8.0
        assert report.cpl_term == 1.0
        assert report.reasons == []

    def test_low_coverage(self, open3):
        path = parse_waypoints("0,0|0,1|1,1|1,0", open3)
        report = evaluate(open3, CellCoord(0, 0), path, Thresholds.for_map(open3, min_coverage=0.95))
        assert not report.accepted
        assert report.coverage_rate == pytest.approx(4 / 9)
        assert report.reasons == [RejectionReason.COVERAGE_BELOW_THRESHOLD]

    def test_too_long(self, open3):
        path = parse_waypoints(LONG_3X3, open3)
        report = evaluate(open3, CellCoord(0, 0), path, Thresholds.for_map(open3, max_length_ratio=2.0))
        assert report.coverage_rate == 1.0
        assert report.path_length == 20.0
        assert report.reasons == [RejectionReason.PATH_TOO_LONG]

    def test_too_many_turns(self, open3):
        path = parse_waypoints(lawnmower_text(open3), open3)
        report = evaluate(open3, CellCoord(0, 0), path, Thresholds.for_map(open3, max_turns=3))
        assert report.reasons == [RejectionReason.TOO_MANY_TURNS]

    def test_start_elsewhere_is_prepended(self, open3):
        path = parse_waypoints(lawnmower_text(open3), open3)
        report = evaluate(open3, CellCoord(2, 0), path, Thresholds.for_map(open3))
        assert report.path_length == 10.0


class TestPlanLoop:
    @pytest.mark.parametrize("k", [1, 2, 5])
    async def test_accepts_on_attempt_k(self, open5, k):
        oracle = scripted_oracle([BAD] * (k - 1) + [lawnmower_text(open5)])
        result = await plan(open5, CellCoord(0, 0), oracle, PlannerConfig(max_iterations=5))
        assert result.attempts == k
        assert oracle.calls == k
        assert result.report.accepted
        assert result.path == WaypointPath.of([(0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (1, 4), (1, 3), (1, 2),
                                               (1, 1), (1, 0), (2, 0), (2, 1), (2, 2), (2, 3), (2, 4), (3, 4),
                                               (3, 3), (3, 2), (3, 1), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3),
                                               (4, 4)])

    async def test_defaults_from_settings(self, open5):
        oracle = scripted_oracle([BAD, lawnmower_text(open5)])
        result = await plan(open5, CellCoord(0, 0), oracle)
        assert result.attempts == 2

    @pytest.mark.parametrize("n", [1, 3, 5])
    async def test_exhausts_after_exactly_n_calls(self, open5, n):
        oracle = scripted_oracle([BAD] * (n + 2))
        with pytest.raises(ExhaustedIterations) as info:
            await plan(open5, CellCoord(0, 0), oracle, PlannerConfig(max_iterations=n))
        assert oracle.calls == n
        assert info.value.attempts == n
        assert info.value.last_report.reasons == [RejectionReason.COVERAGE_BELOW_THRESHOLD]

    async def test_unparseable_last_attempt_leaves_no_report(self, open5):
        oracle = scripted_oracle([BAD, MALFORMED])
        with pytest.raises(ExhaustedIterations) as info:
            await plan(open5, CellCoord(0, 0), oracle, PlannerConfig(max_iterations=2))
        assert info.value.last_report is None

    async def test_feedback_turns_accumulate(self, open5):
        oracle = RecordingOracle(ProviderConfig(kind="scripted", script=[BAD, MALFORMED, lawnmower_text(open5)]))
        await plan(open5, CellCoord(0, 0), oracle, PlannerConfig(max_iterations=3, temperature=0.3))
        assert [len(req.user_messages) for req in oracle.requests] == [1, 2, 3]
        assert "Previous answer: 0,0|0,1" in oracle.requests[1].user_messages[1]
        assert "CoverageBelowThreshold" in oracle.requests[1].user_messages[1]
        assert "MalformedToken" in oracle.requests[2].user_messages[2]
        assert all(req.temperature == 0.3 for req in oracle.requests)

    async def test_without_feedback_the_prompt_is_repeated(self, open5):
        oracle = RecordingOracle(ProviderConfig(kind="scripted", script=[BAD, lawnmower_text(open5)]))
        await plan(open5, CellCoord(0, 0), oracle, PlannerConfig(feedback_on_reject=False))
        assert oracle.requests[0] == oracle.requests[1]

    async def test_provider_errors_propagate(self, open5):
        with pytest.raises(ScriptExhausted):
            await plan(open5, CellCoord(0, 0), scripted_oracle([BAD]), PlannerConfig(max_iterations=2))

    async def test_frozen_clock_records_no_inference_time(self, open5):
        oracle = scripted_oracle([lawnmower_text(open5)])
        result = await plan(open5, CellCoord(0, 0), oracle, clock=frozen_clock)
        assert result.inference_seconds == 0.0


class TestPlanners:
    def test_llm_label(self):
        oracle = scripted_oracle(["x"])
        assert LLMPlanner(oracle).label == "scripted"
        assert LLMPlanner(oracle, label="demo").label == "demo"
        assert LLMPlanner(oracle, PlannerConfig(model_id="m-1")).label == "m-1"

    def test_build_planner(self):
        assert isinstance(build_planner("spiral"), PatternPlanner)
        with pytest.raises(ValueError):
            build_planner("llm")
        with pytest.raises(ValueError):
            build_planner("zigzag")

    def test_nearest_corner(self, open5):
        assert nearest_corner(open5, CellCoord(1, 1)) == (0, 0)
        assert nearest_corner(open5, CellCoord(3, 4)) == (4, 4)
        assert nearest_corner(open5, CellCoord(2, 2)) == (0, 0)

    async def test_pattern_from_a_corner_is_optimal(self, open5):
        result = await PatternPlanner("lawnmower").plan(open5, CellCoord(4, 4))
        assert result.attempts == 1
        assert result.report.cpl_term == 1.0

    async def test_pattern_from_inside_prepends_start(self, open5):
        result = await PatternPlanner("spiral").plan(open5, CellCoord(1, 1))
        assert result.path.start == (1, 1)
        assert result.path.cells[1] == (0, 0)
        assert result.report.coverage_rate == 1.0

    async def test_pattern_rejected_by_gate(self, open5):
        strict = Thresholds.for_map(open5, max_length_ratio=1.0)
        with pytest.raises(ExhaustedIterations) as info:
            await PatternPlanner("wallmow", strict).plan(open5, CellCoord(0, 0))
        assert RejectionReason.PATH_TOO_LONG in info.value.last_report.reasons

    async def test_run_all_planners_collects_failures(self, open5):
        strict = PlannerConfig(thresholds=Thresholds.for_map(open5, max_length_ratio=1.0))
        planners = [build_planner("lawnmower", cfg=strict), build_planner("wallmow", cfg=strict)]
        results = await run_all_planners(planners, open5, CellCoord(0, 0))
        assert isinstance(results["lawnmower"], PlanResult)
        assert isinstance(results["wallmow"], ExhaustedIterations)
