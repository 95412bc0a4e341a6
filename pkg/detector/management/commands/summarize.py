"""
Per-class flow counts of one capture.
Usage: python manage.py summarize <conn.log.labeled> [--capture 42-1]
"""
from detector.commands import SummarizeCaptureCommand
from detector.management.base import FlowSentryCommand


class Command(FlowSentryCommand):
    help = 'Count the flows of a labeled capture per consolidated class'

    def add_command_arguments(self, parser):
        parser.add_argument('log', help='Labeled Zeek conn log')
        parser.add_argument(
            '--capture',
            type=str,
            default=None,
            help='Catalogue name (e.g. 34-1) to check the counts against',
        )

    def build_command(self, run_config, options):
        from detector.containers import container

        return SummarizeCaptureCommand(run_config.captures[0], options['capture'], container.conn_log_parser())

    def write_result(self, result, run_config):
        summary = result.data
        header = f"{summary.capture_name}: " if summary.capture_name else ''
        if summary.malware_type:
            header += f"{summary.malware_type}, "
        self.stdout.write(self.style.SUCCESS(f"{header}{summary.total_samples:,} flows"))
        for name, count in sorted(summary.per_class.items(), key=lambda item: (-item[1], item[0])):
            self.stdout.write(f"  {name:<14} {count:>10,}")
        for name, (observed, published) in result.metadata['differences'].items():
            self.stdout.write(self.style.WARNING(f"  {name}: {observed:,} observed, {published:,} published"))
