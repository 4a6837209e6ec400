"""Zero-shot prompt construction for waypoint generation."""
import logging
from functools import lru_cache
from pathlib import Path

from app.config import settings
from app.models.planning import PromptContext

logger = logging.getLogger(__name__)

BUNDLED_DIR = Path(__file__).parent / "templates"

PATTERN_HINTS = {
    "lawnmower": "a standard lawnmower pattern: sweep back and forth along the columns",
    "spiral": "a square spiral: follow the border and keep spiralling inward",
    "square": "a square move: close a loop around each ring of cells, then step one cell inward",
    "wallmow": "wall following first: drive the full border loop, then cover the interior with a lawnmower",
}


@lru_cache()
def _read_template(directory: str, name: str) -> str:
    path = Path(directory) / f"{name}.txt"
    if not path.exists():
        path = BUNDLED_DIR / f"{name}.txt"
    return path.read_text(encoding="utf-8").strip("\n")


def load_template(name: str, directory: str | None = None) -> str:
    """Prompt template by name; the configured prompt directory wins over the bundled one."""
    return _read_template(directory or settings.prompt_dir or str(BUNDLED_DIR), name)


def format_obstacles(ctx: PromptContext) -> str:
    if not ctx.map.obstacles:
        return "none"
    return "; ".join(str(cell) for cell in sorted(ctx.map.obstacles))


def build_prompt(ctx: PromptContext, directory: str | None = None) -> tuple[str, str]:
    """Return (system, user) prompt texts for a planning context."""
    extra = ""
    if ctx.target is not None:
        extra += f" The path must end at cell {ctx.target}."
    if ctx.pattern_hint is not None:
        extra += f" Follow {PATTERN_HINTS[ctx.pattern_hint]}."

    system = load_template("system", directory)
    user = load_template("user", directory).format(
        width=ctx.map.width,
        height=ctx.map.height,
        obstacles=format_obstacles(ctx),
        start=ctx.start,
        task=ctx.task_text,
        extra=extra,
        format=ctx.format_instruction,
    )
    return system, user


def build_feedback(ctx: PromptContext, previous: str, reasons: list[str], directory: str | None = None) -> str:
    """User turn sent after a rejected attempt."""
    return load_template("feedback", directory).format(
        previous=previous.strip() or "(empty)",
        reasons="; ".join(reasons),
        format=ctx.format_instruction,
    )
