"""
runs.csv and deltas.csv reading and writing.
"""
from pathlib import Path
from typing import List, Sequence, Union

import pandas as pd

from detector.exceptions import DatasetError
from detector.utils.serialization import compact_dumps, loads
from .comparison import DeltaRow
from .runs import METRIC_COLUMNS, EvalRun, sort_runs

PathLike = Union[str, Path]

RUN_COLUMNS = ['model', 'dataset', 'scenario', 'phase', 'score', *METRIC_COLUMNS, 'wall_time', 'fold_scores', 'config']
DELTA_COLUMNS = ['model', 'dataset', 'scenario', 'phase', 'produced', 'published', 'delta', 'status']
FLOAT_FORMAT = '%.10g'


def runs_frame(runs: Sequence[EvalRun]) -> pd.DataFrame:
    rows = []
    for run in sort_runs(list(runs)):
        rows.append({
            'model': run.model,
            'dataset': run.dataset,
            'scenario': run.scenario.value,
            'phase': run.phase.value,
            'score': run.score,
            **{name: run.metrics.get(name) for name in METRIC_COLUMNS},
            'wall_time': run.wall_time,
            'fold_scores': ';'.join(repr(float(score)) for score in run.fold_scores),
            'config': compact_dumps(run.config),
        })
    return pd.DataFrame(rows, columns=RUN_COLUMNS)


def _write_frame(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    return path


def write_runs_csv(runs: Sequence[EvalRun], path: PathLike) -> Path:
    """Write runs sorted by scenario, phase, model and dataset."""
    return _write_frame(runs_frame(runs), path)


def write_deltas_csv(deltas: Sequence[DeltaRow], path: PathLike) -> Path:
    return _write_frame(pd.DataFrame([row.as_row() for row in deltas], columns=DELTA_COLUMNS), path)


def _optional_float(value: str):
    return float(value) if value != '' else None


def read_runs_csv(path: PathLike) -> List[EvalRun]:
    """
    Read runs written by ``write_runs_csv``.

    Raises:
        DatasetError: Missing file or columns
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"runs file not found: {path}")
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = [column for column in RUN_COLUMNS if column not in frame.columns]
    if missing:
        raise DatasetError(f"{path}: missing columns {', '.join(missing)}")

    runs = []
    for row in frame.to_dict(orient='records'):
        metrics = {name: _optional_float(row[name]) for name in METRIC_COLUMNS}
        runs.append(EvalRun(
            model=row['model'],
            dataset=row['dataset'],
            scenario=row['scenario'],
            phase=row['phase'],
            config=loads(row['config']) if row['config'] else {},
            score=float(row['score']),
            metrics={name: value for name, value in metrics.items() if value is not None},
            wall_time=_optional_float(row['wall_time']) or 0.0,
            fold_scores=[float(score) for score in row['fold_scores'].split(';') if score],
        ))
    return runs
