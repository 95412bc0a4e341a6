"""
Full protocol on one capture: grid search, final evaluation, runs.csv.
Usage: python manage.py experiment <conn.log.labeled> --dataset 34-1 --out DIR [--carve]
"""
from detector.commands import RunExperimentCommand
from detector.management.base import FlowSentryCommand


class Command(FlowSentryCommand):
    help = 'Run every eligible model and scenario on one capture'
    out_help = 'Directory for runs.csv'

    def add_command_arguments(self, parser):
        parser.add_argument('log', help='Labeled Zeek conn log')
        parser.add_argument('--dataset', default=None, help='Dataset name recorded on the runs (e.g. 34-1)')
        parser.add_argument('--scenario', choices=['binary', 'multiclass'], default=None,
                            help='Run one scenario only (default: both)')
        parser.add_argument('--models', nargs='+', default=None, help='Subset of svm xgboost lightgbm iforest lof drl')
        parser.add_argument('--carve', action='store_true',
                            help='Treat the capture as 1-1 and also run its three balanced subsets')

    def build_command(self, run_config, options):
        from detector.containers import container

        return RunExperimentCommand(
            run_config.captures[0],
            run_config.dataset,
            run_config.out,
            runner=container.experiment_runner(
                settings=self.harness_settings(run_config),
                grid_overrides=run_config.grid,
            ),
            scenarios=[run_config.scenario] if run_config.scenario else None,
            models=run_config.models or None,
            seed=run_config.seed,
            carve=run_config.carve,
            parser=container.conn_log_parser(),
        )

    def write_result(self, result, run_config):
        for run in result.data:
            self.stdout.write(
                f"  {run.model:<10}{run.dataset:<12}{run.scenario.value:<12}{run.phase.value:<6}{run.score:9.4f}"
            )
        self.stdout.write(self.style.SUCCESS(f"{len(result.data)} runs written to {result.metadata['runs_path']}"))
