"""
Grid search of one model by cross-validated macro-F1.
Usage: python manage.py gridsearch <model> --data DIR [--config run.json] [--out DIR]
"""
from detector.commands import GridSearchCommand
from detector.management.base import FlowSentryCommand


class Command(FlowSentryCommand):
    help = 'Grid-search a model; grid points can be overridden in the --config file'
    out_help = 'Directory for grid_<model>.csv and best_<model>.json'

    def add_command_arguments(self, parser):
        parser.add_argument('model', choices=['svm', 'xgboost', 'lightgbm', 'iforest', 'lof'])
        parser.add_argument('--data', required=True, help='Prepared dataset directory')
        parser.add_argument('--scenario', choices=['binary', 'multiclass'], default=None)

    def build_command(self, run_config, options):
        return GridSearchCommand(
            options['model'],
            run_config.data,
            scenario=run_config.scenario or 'binary',
            seed=run_config.seed,
            out_dir=run_config.out,
            settings=self.harness_settings(run_config),
            grid_overrides=run_config.grid,
        )

    def write_result(self, result, run_config):
        search = result.data
        for cv in search.results:
            self.stdout.write(f"  {cv.mean_score:9.4f}  {cv.config}")
        if search.skipped:
            self.stdout.write(self.style.WARNING(f"  skipped infeasible points: {search.skipped}"))
        self.stdout.write(self.style.SUCCESS(f"best: {search.best_config} ({search.best_score:.4f})"))
