"""
Train the reinforcement-learning detector and score it on the evaluation set.
Usage: python manage.py drltrain --data DIR [--params JSON] [--out DIR]
(``flowsentry drl-train`` from the command-line entry point)
"""
from detector.commands import TrainDrlCommand
from detector.management.base import FlowSentryCommand, json_object


class Command(FlowSentryCommand):
    help = 'Train the DRL detector; DRL is evaluated without cross-validation'
    out_help = 'Directory for the saved network and episodes.csv'

    def add_command_arguments(self, parser):
        parser.add_argument('--data', required=True, help='Prepared dataset directory')
        parser.add_argument('--scenario', choices=['binary', 'multiclass'], default=None)
        parser.add_argument('--params', type=json_object, default=None, help='Hyperparameters as a JSON object')

    def build_command(self, run_config, options):
        return TrainDrlCommand(
            run_config.data,
            scenario=run_config.scenario or 'binary',
            config=run_config.params,
            seed=run_config.seed,
            out_dir=run_config.out,
            settings=self.harness_settings(run_config),
        )

    def write_result(self, result, run_config):
        self.write_metrics(result.data)
        status = 'converged' if result.metadata['converged'] else 'stopped at the episode cap'
        self.stdout.write(f"  {result.metadata['episodes']} episodes, {status}")
