"""
Render the markdown report, the comparison and the charts of a runs file.
Usage: python manage.py report --runs runs.csv --out DIR
"""
from detector.commands import RenderReportCommand
from detector.management.base import FlowSentryCommand


class Command(FlowSentryCommand):
    help = 'Write runs.csv, deltas.csv, report.md and per-scenario SVG charts'
    out_help = 'Report directory'

    def add_command_arguments(self, parser):
        parser.add_argument('--runs', required=True, help='runs.csv of an experiment')

    def build_command(self, run_config, options):
        from detector.containers import container

        return RenderReportCommand(options['runs'], run_config.out, container.report_renderer())

    def write_result(self, result, run_config):
        for name, path in result.data.items():
            self.stdout.write(self.style.SUCCESS(f"{name}: {path}"))
