"""
Score a saved model on the evaluation split of a prepared dataset.
Usage: python manage.py evaluate <model-file> --data DIR [--dataset NAME] [--out DIR]
"""
from detector.commands import EvaluateModelCommand
from detector.management.base import FlowSentryCommand


class Command(FlowSentryCommand):
    help = 'Evaluate a saved model'
    out_help = 'Directory for runs.csv (nothing is written without it)'

    def add_command_arguments(self, parser):
        parser.add_argument('model_file', help='Model JSON written by train or drltrain')
        parser.add_argument('--data', required=True, help='Prepared dataset directory')
        parser.add_argument('--scenario', choices=['binary', 'multiclass'], default=None,
                            help='Defaults to the scenario the model was fitted for')
        parser.add_argument('--dataset', default=None, help='Dataset name recorded on the run')

    def build_command(self, run_config, options):
        return EvaluateModelCommand(
            options['model_file'],
            run_config.data,
            scenario=run_config.scenario,
            out_dir=run_config.out,
            dataset=run_config.dataset or '',
        )

    def write_result(self, result, run_config):
        report = result.data
        self.write_metrics(report)
        for name, metrics in report.per_class.items():
            self.stdout.write(
                f"  {name:<14} precision {metrics.precision:.4f}  recall {metrics.recall:.4f}  fpr {metrics.fpr:.4f}"
            )
