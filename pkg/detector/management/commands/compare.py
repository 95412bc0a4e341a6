"""
Delta table of produced scores against the published ones.
Usage: python manage.py compare --runs runs.csv [--all-datasets] [--out DIR]
"""
from detector.commands import CompareRunsCommand
from detector.management.base import FlowSentryCommand


def _fmt(value) -> str:
    return '-' if value is None else f"{value:.2f}"


class Command(FlowSentryCommand):
    help = 'Compare a runs file with the published scores'
    out_help = 'Directory for deltas.csv (nothing is written without it)'

    def add_command_arguments(self, parser):
        parser.add_argument('--runs', required=True, help='runs.csv of an experiment')
        parser.add_argument(
            '--all-datasets',
            action='store_true',
            help='Flag missing runs for every published dataset, not only the ones in the runs file',
        )

    def build_command(self, run_config, options):
        from detector.containers import container

        return CompareRunsCommand(options['runs'], run_config.out, container.report_renderer(),
                                  all_datasets=options['all_datasets'])

    def write_result(self, result, run_config):
        self.stdout.write(
            f"{'model':<10}{'dataset':<12}{'scenario':<12}{'phase':<6}"
            f"{'produced':>10}{'published':>11}{'delta':>9}  status"
        )
        for row in result.data:
            line = (
                f"{row.model:<10}{row.dataset:<12}{row.scenario:<12}{row.phase:<6}"
                f"{_fmt(row.produced):>10}{_fmt(row.published):>11}{_fmt(row.delta):>9}  {row.status.value}"
            )
            self.stdout.write(line if row.status.value == 'matched' else self.style.WARNING(line))
