import logging
import uuid
from datetime import datetime, timezone
from pathlib import Path

from fastapi import APIRouter, BackgroundTasks, HTTPException

from app.config import settings
from app.models.experiment import ExperimentConfig
from app.orchestrator import run_experiment

logger = logging.getLogger(__name__)
router = APIRouter()

# experiment id -> status document, oldest first; finished entries are evicted past max_experiments
EXPERIMENTS: dict[str, dict] = {}


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _evict_finished():
    finished = [key for key, state in EXPERIMENTS.items() if state["status"] in ("complete", "failed")]
    while len(EXPERIMENTS) >= settings.max_experiments and finished:
        evicted = finished.pop(0)
        del EXPERIMENTS[evicted]
        logger.debug(f"Evicted finished experiment {evicted}")


async def _run(experiment_id: str, config: ExperimentConfig, output_dir: Path):
    state = EXPERIMENTS[experiment_id]
    state.update(status="running", updated_at=_now())
    try:
        result = await run_experiment(config, output_dir)
    except Exception as e:
        logger.error(f"Experiment {experiment_id} failed: {e}")
        state.update(status="failed", error=str(e), updated_at=_now())
        return
    state.update(
        status="complete",
        episodes_run=result.summary.episodes_run,
        rows=[row.model_dump() for row in result.summary.rows],
        updated_at=_now(),
    )
    logger.info(f"Experiment {experiment_id} complete: {result.summary.episodes_run} episodes")


@router.post("/experiments", status_code=202)
async def start_experiment(config: ExperimentConfig, background_tasks: BackgroundTasks):
    """Queue an experiment; poll GET /experiments/{id} for the summary."""
    experiment_id = uuid.uuid4().hex[:12]
    _evict_finished()
    output_dir = Path(settings.output_dir) / experiment_id
    EXPERIMENTS[experiment_id] = {
        "id": experiment_id,
        "name": config.name,
        "status": "pending",
        "output_dir": str(output_dir),
        "created_at": _now(),
        "updated_at": _now(),
    }
    background_tasks.add_task(_run, experiment_id, config, output_dir)
    logger.info(f"Queued experiment {experiment_id} ({config.name})")
    return EXPERIMENTS[experiment_id]


@router.get("/experiments/{experiment_id}")
async def get_experiment(experiment_id: str):
    if experiment_id not in EXPERIMENTS:
        raise HTTPException(status_code=404, detail="Experiment not found")
    return EXPERIMENTS[experiment_id]
