"""
Fit one configuration of a model on a prepared dataset.
Usage: python manage.py train <model> --data DIR [--params '{"C": 1.0}'] [--out DIR]
"""
from detector.commands import TrainModelCommand
from detector.learners import MODEL_ORDER
from detector.management.base import FlowSentryCommand, json_object


class Command(FlowSentryCommand):
    help = 'Fit one model configuration on the full training set'
    out_help = 'Directory for the saved model (nothing is written without it)'

    def add_command_arguments(self, parser):
        parser.add_argument('model', choices=MODEL_ORDER)
        parser.add_argument('--data', required=True, help='Prepared dataset directory')
        parser.add_argument('--scenario', choices=['binary', 'multiclass'], default=None)
        parser.add_argument('--params', type=json_object, default=None, help='Hyperparameters as a JSON object')

    def build_command(self, run_config, options):
        return TrainModelCommand(
            options['model'],
            run_config.data,
            scenario=run_config.scenario or 'binary',
            config=run_config.params,
            seed=run_config.seed,
            out_dir=run_config.out,
            settings=self.harness_settings(run_config),
        )

    def write_result(self, result, run_config):
        learner = result.data
        self.stdout.write(self.style.SUCCESS(f"{learner.display_name} trained with {learner.params}"))
        if result.metadata['model_path']:
            self.stdout.write(f"  saved to {result.metadata['model_path']}")
