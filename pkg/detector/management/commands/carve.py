"""
Carve the balanced large, medium and small subsets out of capture 1-1.
Usage: python manage.py carve <1-1 conn.log.labeled> --out DIR
"""
from detector.commands import CarveSubsetsCommand
from detector.management.base import FlowSentryCommand


class Command(FlowSentryCommand):
    help = 'Write the three balanced 1-1 subsets as labeled conn logs'

    def add_command_arguments(self, parser):
        parser.add_argument('log', help='Labeled conn log of capture 1-1')

    def build_command(self, run_config, options):
        from detector.containers import container

        return CarveSubsetsCommand(run_config.captures[0], run_config.out, run_config.seed, container.conn_log_parser())

    def write_result(self, result, run_config):
        for name, path in result.data.items():
            self.stdout.write(self.style.SUCCESS(f"{name}: {path}"))
