import json
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from app.agents import build_planner
from app.agents.base import frozen_clock
from app.grid import parse_map
from app.integrations import scripted_oracle
from app.models.evaluation import Thresholds
from app.models.experiment import EpisodeRecord, ExperimentConfig, MapEntry
from app.models.grid import CellCoord
from app.models.llm import ProviderConfig
from app.models.nav import FollowerConfig
from app.models.planning import PlannerConfig
from app.models.sim import Rect
from app.orchestrator import (
    BUILTIN_MAPS,
    builtin_map,
    choose_start,
    episode_seed,
    load_experiment_config,
    render_report,
    run_episode,
    run_experiment,
    summarize,
)
from app.orchestrator.experiment import CSV_COLUMNS
from tests.conftest import lawnmower_text, open_map

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def corner_oracle(grid):
    return scripted_oracle([lawnmower_text(grid, corner) for corner in grid.corners()])


def corner_planner(grid):
    cfg = PlannerConfig(max_iterations=4, thresholds=Thresholds.for_map(grid, max_length_ratio=1.0))
    return build_planner("llm", corner_oracle(grid), cfg, label="scripted")


def record(map_id, model_id, cr, shortest, planned, episode=0) -> EpisodeRecord:
    return EpisodeRecord(
        map_id=map_id, model_id=model_id, episode=episode, seed=episode, start=CellCoord(0, 0),
        executed_cr=cr, shortest_length=shortest, planned_length=planned, cpl_term=0.0, attempts=1,
        inference_seconds=1.0, driving_seconds=2.0, total_seconds=4.0, success=cr == 1.0,
    )


class TestSeedsAndStarts:
    def test_episode_seed(self):
        assert episode_seed(100, 2, 7) == 2107

    def test_episode_seeds_never_collide_across_maps(self):
        seeds = [episode_seed(5, m, k) for m in range(3) for k in (0, 1, 998, 999)]
        assert len(set(seeds)) == len(seeds)
        with pytest.raises(ValueError):
            episode_seed(5, 0, 1000)

    def test_corner_starts(self, open5):
        rng = np.random.default_rng(0)
        assert {choose_start(open5, rng, "corners") for _ in range(50)} == set(open5.corners())

    def test_free_starts_stay_free(self):
        grid = builtin_map("pillars7")
        rng = np.random.default_rng(1)
        assert all(grid.is_free(choose_start(grid, rng)) for _ in range(100))

    def test_builtin_maps_parse(self):
        for name in BUILTIN_MAPS:
            assert builtin_map(name).free_count > 0
        with pytest.raises(KeyError):
            builtin_map("nowhere")


class TestRunEpisode:
    async def test_perfect_scripted_episode(self, open5):
        rec = await run_episode(open5, corner_planner(open5), FollowerConfig(), 7,
                                start_policy="corners", clock=frozen_clock)
        assert rec.success
        assert rec.report.coverage_rate == 1.0
        assert rec.cpl_term == 1.0
        assert rec.executed_cr == 1.0
        assert rec.planned_length == rec.shortest_length == 24.0
        assert rec.failure_kind is None
        assert rec.inference_seconds == 0.0
        assert rec.total_seconds == rec.driving_seconds > 0

    async def test_all_bad_oracle(self, open5):
        planner = build_planner("llm", scripted_oracle(["0,0|0,1"] * 3), PlannerConfig(max_iterations=3))
        rec = await run_episode(open5, planner, FollowerConfig(), 7, clock=frozen_clock)
        assert rec.failure_kind == "ExhaustedIterations"
        assert not rec.success
        assert rec.attempts == 3
        assert rec.executed_cr == pytest.approx(1 / 25)
        assert rec.planned_length == 0.0
        assert rec.path is None

    async def test_same_seed_same_record(self, open5):
        first = await run_episode(open5, corner_planner(open5), FollowerConfig(), 7,
                                  start_policy="corners", clock=frozen_clock)
        second = await run_episode(open5, corner_planner(open5), FollowerConfig(), 7,
                                   start_policy="corners", clock=frozen_clock)
        assert first.model_dump() == second.model_dump()
        assert first.trajectory == second.trajectory

    async def test_safety_stop_is_recorded(self, open5):
        planner = build_planner("lawnmower")
        rec = await run_episode(open5, planner, FollowerConfig(), 3, start_policy="corners",
                                extra_obstacles=[Rect(xmin=2.2, ymin=2.2, xmax=2.8, ymax=2.8)],
                                clock=frozen_clock)
        assert rec.failure_kind == "SafetyStop"
        assert not rec.success
        assert 0 < rec.executed_cr < 1
        assert rec.collisions == 0

    @pytest.mark.parametrize("min_coverage,expected", [(0.6, True), (0.9, False)])
    async def test_success_follows_min_coverage(self, min_coverage, expected):
        grid = parse_map("#.#\n...\n..#")
        cfg = PlannerConfig(max_iterations=1, thresholds=Thresholds.for_map(grid, min_coverage=0.6))
        planner = build_planner("llm", scripted_oracle(["0,0|1,0|1,1|0,1"]), cfg)
        rec = await run_episode(grid, planner, FollowerConfig(), 0, start_policy="corners",
                                thresholds=Thresholds.for_map(grid, min_coverage=min_coverage), clock=frozen_clock)
        assert rec.start == (0, 0)
        assert rec.failure_kind is None
        assert rec.executed_cr == pytest.approx(4 / 6)
        assert rec.success is expected

    async def test_noisy_partial_coverage_can_still_succeed(self, open5):
        th = Thresholds.for_map(open5)
        records = [
            await run_episode(open5, build_planner("lawnmower"), FollowerConfig(), seed,
                              thresholds=th, sigma_xy=0.05, sigma_heading=0.05, clock=frozen_clock)
            for seed in (0, 7, 9)
        ]
        for rec in records:
            assert rec.success is (rec.failure_kind is None and rec.executed_cr >= th.min_coverage)
        assert any(rec.success and rec.executed_cr < 1.0 for rec in records)


class TestSummaries:
    def test_cpl_matches_metric(self):
        summary = summarize([record("m", "a", 1.0, 24, 24), record("m", "a", 0.5, 10, 20, episode=1)])
        row = summary.row("m", "a")
        assert abs(row.cpl - 0.625) <= 1e-12
        assert row.cr == pytest.approx(75.0)
        assert row.pl == pytest.approx(22.0)
        assert row.success_rate == 0.5
        assert (row.t, row.t_i, row.t_d) == (4.0, 1.0, 2.0)

    def test_groups_keep_order(self):
        records = [record("m2", "b", 1, 1, 1), record("m1", "a", 1, 1, 1), record("m2", "a", 1, 1, 1)]
        summary = summarize(records)
        assert [(r.map_id, r.model_id) for r in summary.rows] == [("m2", "b"), ("m1", "a"), ("m2", "a")]
        assert summary.models == ["b", "a"]
        with pytest.raises(KeyError):
            summary.row("m1", "b")

    def test_report_tables(self):
        summary = summarize([record("open5", "gpt", 1.0, 24, 24), record("open5", "lawnmower", 1.0, 24, 24)],
                            name="demo", seed=3)
        text = render_report(summary)
        assert text.startswith("Experiment: demo (seed 3, 2 episodes)")
        assert "gpt" in text and "lawnmower" in text
        assert "1.000" in text and "T_d" in text
        # a table row with one map and two column groups
        assert any(line.startswith("open5") and line.count("1.000") == 2 for line in text.splitlines())
        with pytest.raises(ValueError):
            render_report(summary, "fancy")

    def test_minimal_report(self):
        summary = summarize([record("open5", "gpt", 1.0, 24, 24)], name="demo", seed=3)
        text = render_report(summary, "minimal")
        assert text.startswith("demo: 1 episodes")
        assert "CPL" in text and "T_d" not in text


class TestExperimentConfig:
    def test_needs_a_contender(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(maps=[MapEntry(id="a", builtin="open5")])

    def test_one_map_source(self):
        with pytest.raises(ValidationError):
            MapEntry(id="a", builtin="open5", text="..")

    def test_unique_ids(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(maps=[MapEntry(id="a", builtin="open5"), MapEntry(id="a", builtin="open7")],
                             baselines=["lawnmower"])

    def test_episodes_positive(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(maps=[MapEntry(id="a", builtin="open5")], baselines=["lawnmower"], episodes=0)

    def test_episodes_stay_below_seed_stride(self):
        ExperimentConfig(maps=[MapEntry(id="a", builtin="open5")], baselines=["lawnmower"], episodes=999)
        with pytest.raises(ValidationError):
            ExperimentConfig(maps=[MapEntry(id="a", builtin="open5")], baselines=["lawnmower"], episodes=1000)

    def test_relative_paths_resolved(self, tmp_path):
        (tmp_path / "maps").mkdir()
        (tmp_path / "maps" / "room.txt").write_text("...\n...\n")
        (tmp_path / "script.txt").write_text("0,0|0,1\n")
        (tmp_path / "exp.json").write_text(json.dumps({
            "maps": [{"id": "room", "file": "maps/room.txt"}],
            "providers": [{"kind": "scripted", "script_file": "script.txt"}],
        }))
        config = load_experiment_config(tmp_path / "exp.json")
        assert Path(config.maps[0].file) == tmp_path / "maps" / "room.txt"
        assert Path(config.providers[0].script_file) == tmp_path / "script.txt"


class TestRunExperiment:
    async def test_perfect_scripted_provider(self, tmp_path):
        script = [lawnmower_text(open_map(5), corner) for corner in open_map(5).corners()]
        config = ExperimentConfig(
            maps=[MapEntry(id="open5", builtin="open5", start_policy="corners")],
            providers=[ProviderConfig(kind="scripted", script=script, label="oracle")],
            episodes=3,
            max_length_ratio=1.0,
            planner=PlannerConfig(max_iterations=4),
            wall_clock=False,
        )
        result = await run_experiment(config, tmp_path / "out")
        row = result.summary.row("open5", "oracle")
        assert row.cpl == 1.0
        assert row.success_rate == 1.0
        assert row.episodes == 3
        assert [r.episode for r in result.records] == [0, 1, 2]

        out = result.output_dir
        assert (out / "records.jsonl").read_text().count("\n") == 3
        assert (out / "summary.csv").read_text().splitlines()[0] == ",".join(CSV_COLUMNS)
        assert (out / "summary.txt").read_text() == render_report(result.summary)
        assert len(list((out / "renders").glob("open5_oracle_*.svg"))) == 3

    async def test_single_cell_map(self):
        config = ExperimentConfig(
            maps=[MapEntry(id="dot", text=".")],
            providers=[ProviderConfig(kind="scripted", script=["0,0"], label="oracle")],
            episodes=2,
            wall_clock=False,
            render=False,
        )
        result = await run_experiment(config)
        row = result.summary.row("dot", "oracle")
        assert row.pl == 0.0
        assert row.cpl == 1.0
        assert result.output_dir is None

    async def test_failures_are_averaged_not_raised(self):
        config = ExperimentConfig(
            maps=[MapEntry(id="open5", builtin="open5")],
            providers=[ProviderConfig(kind="scripted", script=["0,0|0,1"], label="bad")],
            baselines=["lawnmower"],
            episodes=2,
            planner=PlannerConfig(max_iterations=1),
            wall_clock=False,
        )
        result = await run_experiment(config)
        bad = result.summary.row("open5", "bad")
        assert bad.success_rate == 0.0
        assert bad.cpl == pytest.approx(0.04)
        assert bad.cr == pytest.approx(4.0)
        assert result.summary.row("open5", "lawnmower").cr == 100.0
        assert {r.failure_kind for r in result.records if r.model_id == "bad"} == {"ExhaustedIterations"}

    async def test_bundled_demo_is_perfect_and_reproducible(self, tmp_path):
        config = load_experiment_config(CONFIGS / "demo.json").model_copy(update={"episodes": 2})
        first = await run_experiment(config, tmp_path / "first")
        second = await run_experiment(config, tmp_path / "second")

        assert all(row.cpl == 1.0 for row in first.summary.rows)
        assert len(first.summary.rows) == 9
        csv = (first.output_dir / "summary.csv").read_bytes()
        assert csv == (second.output_dir / "summary.csv").read_bytes()
        assert (first.output_dir / "records.jsonl").read_bytes() == (second.output_dir / "records.jsonl").read_bytes()

    async def test_bundled_demo_at_full_size(self):
        config = load_experiment_config(CONFIGS / "demo.json")
        result = await run_experiment(config)
        assert config.episodes == 10
        assert result.summary.episodes_run == 90
        assert {row.map_id for row in result.summary.rows} == {"open5", "open7", "open11"}
        assert all(row.episodes == 10 for row in result.summary.rows)
        assert all(row.cpl == 1.0 and row.success_rate == 1.0 for row in result.summary.rows)
