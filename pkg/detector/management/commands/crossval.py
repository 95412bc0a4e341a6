"""
k-fold cross-validation of one model configuration.
Usage: python manage.py crossval <model> --data DIR [--params JSON]
"""
from detector.commands import CrossValidateCommand
from detector.learners import MODEL_ORDER
from detector.management.base import FlowSentryCommand, json_object


class Command(FlowSentryCommand):
    help = 'Cross-validate one model configuration on the training set'
    out_help = 'Directory for runs.csv (nothing is written without it)'

    def add_command_arguments(self, parser):
        parser.add_argument('model', choices=MODEL_ORDER)
        parser.add_argument('--data', required=True, help='Prepared dataset directory')
        parser.add_argument('--scenario', choices=['binary', 'multiclass'], default=None)
        parser.add_argument('--params', type=json_object, default=None, help='Hyperparameters as a JSON object')

    def build_command(self, run_config, options):
        return CrossValidateCommand(
            options['model'],
            run_config.data,
            scenario=run_config.scenario or 'binary',
            config=run_config.params,
            seed=run_config.seed,
            out_dir=run_config.out,
            settings=self.harness_settings(run_config),
        )

    def write_result(self, result, run_config):
        cv = result.data
        folds = ', '.join(f"{score:.4f}" for score in cv.fold_scores)
        self.stdout.write(self.style.SUCCESS(f"mean macro-F1 x100: {cv.mean_score:.4f}"))
        self.stdout.write(f"  folds: {folds}")
        self.stdout.write(f"  wall time: {cv.wall_time:.2f}s")
