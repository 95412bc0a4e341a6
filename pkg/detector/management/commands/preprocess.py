"""
Split and encode one capture for a scenario.
Usage: python manage.py preprocess <conn.log.labeled> --out DIR [--scenario multiclass]
"""
from detector.commands import PreprocessCaptureCommand
from detector.management.base import FlowSentryCommand


class Command(FlowSentryCommand):
    help = 'Write the encoded train/eval split of a capture (train.csv, eval.csv, schema.json)'
    out_help = 'Directory of the prepared dataset'

    def add_command_arguments(self, parser):
        parser.add_argument('log', help='Labeled Zeek conn log')
        parser.add_argument('--scenario', choices=['binary', 'multiclass'], default=None)

    def build_command(self, run_config, options):
        from detector.containers import container

        return PreprocessCaptureCommand(
            run_config.captures[0],
            run_config.out,
            scenario=run_config.scenario or 'binary',
            seed=run_config.seed,
            service=container.preparation_service(),
            parser=container.conn_log_parser(),
        )

    def write_result(self, result, run_config):
        prepared = result.data
        self.stdout.write(self.style.SUCCESS(
            f"{len(prepared.train)} training and {len(prepared.evaluation)} evaluation rows "
            f"written to {result.metadata['out']}"
        ))
        self.stdout.write(f"  classes: {', '.join(prepared.class_names)}")
        if result.metadata['dropped_classes']:
            self.stdout.write(self.style.WARNING(
                f"  dropped single-sample classes: {', '.join(result.metadata['dropped_classes'])}"
            ))
