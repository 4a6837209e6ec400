from app.orchestrator.convergence import summarize
from app.orchestrator.episode import choose_start, episode_seed, run_episode
from app.orchestrator.experiment import (
    ExperimentResult,
    load_experiment_config,
    run_experiment,
    write_outputs,
)
from app.orchestrator.maps import BUILTIN_MAPS, builtin_map
from app.orchestrator.render import render_path
from app.orchestrator.templates import render_report

__all__ = [
    "BUILTIN_MAPS",
    "ExperimentResult",
    "builtin_map",
    "choose_start",
    "episode_seed",
    "load_experiment_config",
    "render_path",
    "render_report",
    "run_episode",
    "run_experiment",
    "summarize",
    "write_outputs",
]
