"""
Run tables, markdown report and grouped-bar charts.

Every output is byte-deterministic for identical inputs: rows are sorted,
floats use a fixed format and SVGs carry neither a date nor random ids.
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from matplotlib import rc_context
from matplotlib.figure import Figure

from detector.exceptions import ConfigurationError, DatasetError
from detector.flows import DATASET_ORDER
from detector.learners import MODEL_ORDER
from detector.preprocessing import Scenario
from .comparison import DeltaRow, DeltaStatus, compare_to_reference
from .reference import PUBLISHED_SCORES, PublishedReference
from .runs import EvalRun, Phase, sort_runs
from .runs_io import write_deltas_csv, write_runs_csv

logger = logging.getLogger(__name__)

RUNS_FILE = 'runs.csv'
DELTAS_FILE = 'deltas.csv'
REPORT_FILE = 'report.md'

CHART_RC = {
    'svg.hashsalt': 'flowsentry',
    'svg.fonttype': 'none',
    'font.family': 'DejaVu Sans',
}

SCORE_LABELS = {
    Scenario.BINARY: 'F1-score (%)',
    Scenario.MULTICLASS: 'Macro-averaged F1-score (%)',
}


def _ordered(values: Sequence[str], order: List[str]) -> List[str]:
    present = set(values)
    return [v for v in order if v in present] + sorted(present - set(order))


def chart_runs(runs: Sequence[EvalRun], scenario: Scenario) -> List[EvalRun]:
    """Runs charted for a scenario: its evaluation runs, or its CV runs when it has none."""
    selected = [run for run in runs if run.scenario == scenario]
    evaluation = [run for run in selected if run.phase == Phase.EVAL]
    return evaluation or selected


def render_chart(runs: Sequence[EvalRun], scenario: Scenario, path: Union[str, Path]) -> Path:
    """
    Grouped bars of one scenario: one group per dataset, one bar per model.

    Returns:
        Path: The written SVG
    """
    runs = chart_runs(runs, scenario)
    datasets = _ordered([run.dataset for run in runs], DATASET_ORDER)
    models = _ordered([run.model for run in runs], MODEL_ORDER)
    scores = {(run.model, run.dataset): run.score for run in runs}
    names = {run.model: run.display_name for run in runs}

    width = 0.8 / len(models)
    positions = np.arange(len(datasets))
    with rc_context(CHART_RC):
        figure = Figure(figsize=(max(6.0, 1.2 * len(datasets) + 2.0), 4.5))
        axes = figure.add_subplot(1, 1, 1)
        for i, model in enumerate(models):
            heights = [scores.get((model, dataset), 0.0) for dataset in datasets]
            axes.bar(positions - 0.4 + width * (i + 0.5), heights, width, label=names[model])
        axes.set_xticks(positions)
        axes.set_xticklabels(datasets)
        axes.set_ylim(0, 105)
        axes.set_ylabel(SCORE_LABELS[scenario])
        axes.set_xlabel('Dataset')
        axes.legend(loc='lower left', fontsize='small', ncol=min(len(models), 6))
        figure.tight_layout()

        path = Path(path)
        figure.savefig(path, format='svg', metadata={'Date': None})
    return path


def _format_score(value: Optional[float]) -> str:
    return '' if value is None else f'{value:.2f}'


def _markdown_table(header: List[str], rows: List[List[str]]) -> List[str]:
    lines = ['| ' + ' | '.join(header) + ' |', '|' + '|'.join('---' for _ in header) + '|']
    lines += ['| ' + ' | '.join(row) + ' |' for row in rows]
    return lines


def render_markdown(runs: Sequence[EvalRun], deltas: Sequence[DeltaRow]) -> str:
    """Score matrix per scenario and phase, followed by the delta table."""
    lines = ['# Reproduction report', '']
    for scenario in Scenario:
        for phase in Phase:
            selected = [run for run in runs if run.scenario == scenario and run.phase == phase]
            if not selected:
                continue
            datasets = _ordered([run.dataset for run in selected], DATASET_ORDER)
            models = _ordered([run.model for run in selected], MODEL_ORDER)
            scores = {(run.model, run.dataset): run.score for run in selected}
            names = {run.model: run.display_name for run in selected}
            title = 'cross-validation (fold mean)' if phase == Phase.CV else 'evaluation'
            lines += [f'## {scenario.value.capitalize()} {title}', '']
            lines += _markdown_table(
                ['Model', *datasets],
                [[names[model], *(_format_score(scores.get((model, d))) for d in datasets)] for model in models],
            )
            lines.append('')

    if deltas:
        lines += ['## Comparison with published scores', '']
        lines += _markdown_table(
            ['Model', 'Dataset', 'Scenario', 'Phase', 'Produced', 'Published', 'Delta', 'Status'],
            [
                [row.model, row.dataset, row.scenario, row.phase, _format_score(row.produced),
                 _format_score(row.published), '' if row.delta is None else f'{row.delta:+.2f}', row.status.value]
                for row in deltas
            ],
        )
        lines.append('')
    return '\n'.join(lines)


def render_report(runs: Sequence[EvalRun], deltas: Sequence[DeltaRow], out_dir: Union[str, Path]) -> Dict[str, Path]:
    """
    Write runs.csv, deltas.csv, report.md and one SVG chart per scenario present.

    Returns:
        dict: File name -> written path

    Raises:
        DatasetError: No runs
        ConfigurationError: Output directory cannot be written
    """
    if not runs:
        raise DatasetError("cannot render a report without runs")
    runs = sort_runs(list(runs))
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        written = {
            RUNS_FILE: write_runs_csv(runs, out_dir / RUNS_FILE),
            DELTAS_FILE: write_deltas_csv(deltas, out_dir / DELTAS_FILE),
        }
        report = out_dir / REPORT_FILE
        report.write_bytes(render_markdown(runs, deltas).encode('utf-8'))
        written[REPORT_FILE] = report
        for scenario in Scenario:
            if any(run.scenario == scenario for run in runs):
                name = f'{scenario.value}.svg'
                written[name] = render_chart(runs, scenario, out_dir / name)
    except OSError as e:
        raise ConfigurationError(f"cannot write report to {out_dir}: {e}") from e

    logger.info(f"Report written to {out_dir} ({', '.join(sorted(written))})")
    return written


class ReportRenderer:
    """Compares runs with a reference table and renders the report files."""

    def __init__(self, reference: PublishedReference = PUBLISHED_SCORES):
        self.reference = reference

    def compare(self, runs: Sequence[EvalRun], only_run_datasets: bool = True) -> List[DeltaRow]:
        datasets = sorted({run.dataset for run in runs}) if only_run_datasets else None
        return compare_to_reference(runs, self.reference, datasets=datasets)

    def render(self, runs: Sequence[EvalRun], out_dir: Union[str, Path], only_run_datasets: bool = True) -> Dict[str, Path]:
        deltas = self.compare(runs, only_run_datasets)
        missing = sum(row.status == DeltaStatus.MISSING_RUN for row in deltas)
        if missing:
            logger.info(f"{missing} reference cells have no run")
        return render_report(runs, deltas, out_dir)
