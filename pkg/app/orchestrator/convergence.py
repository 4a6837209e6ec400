"""Reduce per-episode records to per (map, model) averages."""
import logging
from collections import defaultdict

import numpy as np

from app.metrics import cpl
from app.models.experiment import EpisodeRecord, ExperimentSummary, SummaryRow

logger = logging.getLogger(__name__)


def group_records(records: list[EpisodeRecord]) -> dict[tuple[str, str], list[EpisodeRecord]]:
    """Group by (map, model), keeping first-seen order."""
    grouped: dict[tuple[str, str], list[EpisodeRecord]] = defaultdict(list)
    for record in records:
        grouped[(record.map_id, record.model_id)].append(record)
    return grouped


def summarize_group(records: list[EpisodeRecord]) -> SummaryRow:
    """
    Average one group.

    CPL goes through metrics.cpl over (executed CR, shortest length, planned
    length); failed episodes count with whatever they achieved.
    """
    first = records[0]
    return SummaryRow(
        map_id=first.map_id,
        model_id=first.model_id,
        episodes=len(records),
        cpl=cpl((r.executed_cr, r.shortest_length, r.planned_length) for r in records),
        pl=float(np.mean([r.planned_length for r in records])),
        cr=min(float(np.mean([r.executed_cr for r in records])) * 100, 100.0),
        success_rate=sum(r.success for r in records) / len(records),
        t=float(np.mean([r.total_seconds for r in records])),
        t_i=float(np.mean([r.inference_seconds for r in records])),
        t_d=float(np.mean([r.driving_seconds for r in records])),
    )


def summarize(records: list[EpisodeRecord], name: str = "experiment", seed: int = 0) -> ExperimentSummary:
    rows = [summarize_group(group) for group in group_records(records).values()]
    logger.info(f"Summarized {len(records)} episodes into {len(rows)} rows")
    return ExperimentSummary(name=name, seed=seed, episodes_run=len(records), rows=rows)
