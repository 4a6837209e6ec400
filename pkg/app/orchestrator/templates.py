"""Aligned plain-text report tables for an experiment summary."""
from app.models.experiment import ExperimentSummary, SummaryRow

TEMPLATES = {
    "report": """Experiment: {name} (seed {seed}, {episodes_run} episodes)

Coverage (CPL higher is better, PL lower is better, CR in percent)
{coverage_table}

Timing (seconds; T_i inference + evaluation, T_d simulated driving)
{timing_table}
""",
    "minimal": """{name}: {episodes_run} episodes
{coverage_table}
""",
}

COVERAGE_COLUMNS = (("CPL", "cpl", "{:.3f}"), ("PL", "pl", "{:.1f}"), ("CR", "cr", "{:.1f}"),
                    ("SR", "success_rate", "{:.2f}"))
TIMING_COLUMNS = (("T", "t", "{:.2f}"), ("T_i", "t_i", "{:.2f}"), ("T_d", "t_d", "{:.2f}"))


def _table(summary: ExperimentSummary, columns: tuple[tuple[str, str, str], ...]) -> str:
    """One row per map, one column group per model."""
    header_top = ["map"]
    header = [""]
    for model in summary.models:
        header_top.extend([model] + [""] * (len(columns) - 1))
        header.extend(title for title, _, _ in columns)

    body = []
    for map_id in summary.maps:
        line = [map_id]
        for model in summary.models:
            try:
                row: SummaryRow | None = summary.row(map_id, model)
            except KeyError:
                row = None
            for _, attr, fmt in columns:
                line.append(fmt.format(getattr(row, attr)) if row else "-")
        body.append(line)

    lines = [header_top, header, *body]
    widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
    rendered = []
    for index, line in enumerate(lines):
        cells = [line[0].ljust(widths[0])] + [cell.rjust(w) for cell, w in zip(line[1:], widths[1:])]
        rendered.append("  ".join(cells).rstrip())
        if index == 1:
            rendered.append("-" * len(rendered[-1]))
    return "\n".join(rendered)


def coverage_table(summary: ExperimentSummary) -> str:
    return _table(summary, COVERAGE_COLUMNS)


def timing_table(summary: ExperimentSummary) -> str:
    return _table(summary, TIMING_COLUMNS)


def render_report(summary: ExperimentSummary, template_name: str = "report") -> str:
    if template_name not in TEMPLATES:
        raise ValueError(f"Unknown template: {template_name}. Available: {list(TEMPLATES.keys())}")
    return TEMPLATES[template_name].format(
        name=summary.name,
        seed=summary.seed,
        episodes_run=summary.episodes_run,
        coverage_table=coverage_table(summary),
        timing_table=timing_table(summary),
    )
