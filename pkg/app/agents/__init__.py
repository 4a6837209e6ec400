from app.agents.base import BasePlanner, frozen_clock, wall_clock
from app.agents.evaluator import evaluate
from app.agents.llm import LLMPlanner, plan
from app.agents.parser import format_waypoints, parse_waypoints
from app.agents.pattern import PatternPlanner
from app.agents.prompts import build_feedback, build_prompt
from app.agents.runner import PLANNER_NAMES, build_planner, run_all_planners, run_planner

__all__ = [
    "BasePlanner",
    "LLMPlanner",
    "PatternPlanner",
    "PLANNER_NAMES",
    "build_planner",
    "build_prompt",
    "build_feedback",
    "evaluate",
    "format_waypoints",
    "frozen_clock",
    "parse_waypoints",
    "plan",
    "run_all_planners",
    "run_planner",
    "wall_clock",
]
