"""Run the (map x model x episode) cross product and persist its results."""
import asyncio
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import httpx
import pandas as pd

from app.agents.base import BasePlanner, frozen_clock, wall_clock
from app.agents.runner import build_planner
from app.config import settings
from app.grid import load_map, parse_map
from app.integrations import build_provider
from app.models.evaluation import Thresholds
from app.models.experiment import EpisodeRecord, ExperimentConfig, ExperimentSummary, MapEntry
from app.models.grid import GridMap
from app.models.llm import ProviderConfig
from app.orchestrator.convergence import summarize
from app.orchestrator.episode import episode_seed, run_episode
from app.orchestrator.maps import builtin_map
from app.orchestrator.render import render_path, write_render
from app.orchestrator.templates import render_report

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["map", "model", "N", "CPL", "PL", "CR", "success_rate", "T", "Ti", "Td"]


@dataclass
class ExperimentResult:
    summary: ExperimentSummary
    records: list[EpisodeRecord]
    output_dir: Path | None = None


def load_experiment_config(path: str | Path) -> ExperimentConfig:
    """
    Read a JSON experiment file.

    Relative map files and script files are resolved against the file's directory.
    """
    path = Path(path)
    config = ExperimentConfig.model_validate(json.loads(path.read_text(encoding="utf-8")))
    base = path.parent
    maps = [
        m.model_copy(update={"file": str(base / m.file)}) if m.file and not Path(m.file).is_absolute() else m
        for m in config.maps
    ]
    providers = [
        p.model_copy(update={"script_file": str(base / p.script_file)})
        if p.script_file and not Path(p.script_file).is_absolute() else p
        for p in config.providers
    ]
    return config.model_copy(update={"maps": maps, "providers": providers})


def load_entry_map(entry: MapEntry) -> GridMap:
    if entry.builtin is not None:
        return builtin_map(entry.builtin)
    if entry.file is not None:
        return load_map(entry.file)
    return parse_map(entry.text)


def thresholds_for(config: ExperimentConfig, grid: GridMap) -> Thresholds:
    return Thresholds.for_map(
        grid,
        min_coverage=settings.min_coverage if config.min_coverage is None else config.min_coverage,
        max_turns=config.max_turns,
        max_length_ratio=settings.max_length_ratio if config.max_length_ratio is None else config.max_length_ratio,
    )


def contenders(
    config: ExperimentConfig,
    grid: GridMap,
    transport: httpx.AsyncBaseTransport | None = None,
) -> list[Callable[[], BasePlanner]]:
    """
    Planner factory for every provider and baseline.

    A factory builds a fresh planner, and so a fresh provider, for each
    episode; scripted oracles then replay from their first response every time.
    """
    planner_cfg = config.planner.model_copy(update={"thresholds": thresholds_for(config, grid)})
    entries: list[Callable[[], BasePlanner]] = []

    for provider_config in config.providers:
        # fail fast on unusable provider settings such as an empty script
        build_provider(provider_config, transport)

        def make(pc: ProviderConfig = provider_config) -> BasePlanner:
            return build_planner("llm", build_provider(pc, transport), planner_cfg, label=pc.display_name)
        entries.append(make)

    for name in config.baselines:
        entries.append(lambda n=name: build_planner(n, cfg=planner_cfg))
    return entries


async def run_experiment(
    config: ExperimentConfig,
    output_dir: str | Path | None = None,
    transport: httpx.AsyncBaseTransport | None = None,
) -> ExperimentResult:
    """
    Execute every (map, model, episode) combination and aggregate the results.

    Episodes run concurrently up to the configured worker count; records keep
    the order map, model, episode regardless of completion order.
    """
    clock = wall_clock if config.wall_clock else frozen_clock
    semaphore = asyncio.Semaphore(config.workers or settings.workers)

    # ─────────────────────────────────────────────────────────
    # STEP 1: Resolve maps and contenders
    # ─────────────────────────────────────────────────────────

    jobs = []
    grids: dict[str, GridMap] = {}
    for map_index, entry in enumerate(config.maps):
        grid = grids[entry.id] = load_entry_map(entry)
        for make_planner in contenders(config, grid, transport):
            for episode in range(config.episodes):
                jobs.append((map_index, entry, grid, make_planner, episode))

    logger.info(
        f"Experiment {config.name}: {len(config.maps)} maps x "
        f"{len(config.providers) + len(config.baselines)} models x {config.episodes} episodes"
    )

    # ─────────────────────────────────────────────────────────
    # STEP 2: Run all episodes
    # ─────────────────────────────────────────────────────────

    async def run_job(map_index: int, entry: MapEntry, grid: GridMap, make_planner, episode: int) -> EpisodeRecord:
        async with semaphore:
            return await run_episode(
                grid,
                make_planner(),
                config.follower,
                episode_seed(config.seed, map_index, episode),
                map_id=entry.id,
                episode=episode,
                start_policy=entry.start_policy,
                thresholds=thresholds_for(config, grid),
                extra_obstacles=entry.extra_obstacles,
                sigma_xy=config.odometry_sigma_xy,
                sigma_heading=config.odometry_sigma_heading,
                clock=clock,
            )

    records = list(await asyncio.gather(*(run_job(*job) for job in jobs)))

    # ─────────────────────────────────────────────────────────
    # STEP 3: Aggregate and persist
    # ─────────────────────────────────────────────────────────

    summary = summarize(records, name=config.name, seed=config.seed)
    result = ExperimentResult(summary=summary, records=records)
    if output_dir is not None:
        result.output_dir = write_outputs(result, output_dir, grids if config.render else None)
    return result


def summary_frame(summary: ExperimentSummary) -> pd.DataFrame:
    """Summary rows with fixed decimal formatting so reruns give identical bytes."""
    return pd.DataFrame(
        [
            [row.map_id, row.model_id, row.episodes, f"{row.cpl:.6f}", f"{row.pl:.4f}", f"{row.cr:.4f}",
             f"{row.success_rate:.4f}", f"{row.t:.6f}", f"{row.t_i:.6f}", f"{row.t_d:.6f}"]
            for row in summary.rows
        ],
        columns=CSV_COLUMNS,
    )


def write_outputs(result: ExperimentResult, output_dir: str | Path, grids: dict[str, GridMap] | None = None) -> Path:
    """Write records.jsonl, summary.csv, summary.txt and, given the maps, one SVG per episode."""
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)

    with open(out / "records.jsonl", "w", encoding="utf-8") as f:
        for record in result.records:
            f.write(record.model_dump_json() + "\n")

    summary_frame(result.summary).to_csv(out / "summary.csv", index=False, lineterminator="\n")
    (out / "summary.txt").write_text(render_report(result.summary), encoding="utf-8")

    if grids:
        for record in result.records:
            if record.path is None:
                continue
            name = f"{record.map_id}_{_slug(record.model_id)}_{record.episode:02d}.svg"
            write_render(out / "renders" / name, render_path(grids[record.map_id], record.path, record.trajectory))

    logger.info(f"Wrote {len(result.records)} records and {len(result.summary.rows)} summary rows to {out}")
    return out


def _slug(text: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-." else "_" for ch in text)
