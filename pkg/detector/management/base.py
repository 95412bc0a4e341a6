"""
Shared plumbing of the workbench management commands.

Each command declares its own arguments, resolves a RunConfig, builds one
command object from detector.commands, executes it and prints the result.
Failed results become CommandError with exit code 2; argparse errors keep
Django's exit code 1.
"""
import argparse
from dataclasses import replace
import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from detector.cli import RunConfig
from detector.commands.base import EXIT_DATA, Command, CommandResult
from detector.exceptions import FlowSentryError
from detector.harness import HarnessSettings
from detector.utils.serialization import loads

logger = logging.getLogger(__name__)


def json_object(text: str) -> dict:
    """argparse type for inline JSON objects such as ``--params '{"C": 1.0}'``."""
    try:
        value = loads(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid JSON: {e}")
    if not isinstance(value, dict):
        raise argparse.ArgumentTypeError("expected a JSON object")
    return value


class FlowSentryCommand(BaseCommand):
    """Base management command; subclasses implement build_command and write_result."""

    requires_system_checks = []
    out_help = 'Output directory'

    def add_arguments(self, parser):
        self.add_command_arguments(parser)
        parser.add_argument(
            '--seed',
            type=int,
            default=None,
            help='Seed of every random choice (overrides --config and FLOWSENTRY_SEED)',
        )
        parser.add_argument(
            '--config',
            type=str,
            default=None,
            help='JSON run-configuration file',
        )
        parser.add_argument(
            '--jobs',
            type=int,
            default=None,
            help='Worker cap (overrides settings)',
        )
        parser.add_argument(
            '--out',
            type=str,
            default=None,
            help=self.out_help,
        )

    def add_command_arguments(self, parser):
        """Arguments specific to one command."""

    def build_command(self, run_config: RunConfig, options: dict) -> Command:
        raise NotImplementedError

    def write_result(self, result: CommandResult, run_config: RunConfig):
        self.stdout.write(self.style.SUCCESS('Done'))

    def harness_settings(self, run_config: RunConfig) -> HarnessSettings:
        from detector.containers import container

        return replace(container.harness_settings(), jobs=run_config.jobs)

    def handle(self, *args, **options):
        try:
            run_config = RunConfig.resolve(
                options,
                default_jobs=settings.FLOWSENTRY_JOBS,
                default_seed=settings.FLOWSENTRY_SEED,
            )
        except FlowSentryError as e:
            raise CommandError(str(e), returncode=EXIT_DATA)

        is_valid, error = run_config.validate()
        if not is_valid:
            raise CommandError(error, returncode=EXIT_DATA)

        command = self.build_command(run_config, options)
        logger.debug(f"Executing {command.__class__.__name__} (seed={run_config.seed}, jobs={run_config.jobs})")
        result = command.execute()
        if not result:
            raise CommandError(result.error, returncode=result.exit_code)

        self.write_result(result, run_config)

    def write_metrics(self, report):
        """Headline score and the macro metrics of one MetricReport."""
        self.stdout.write(f"macro-F1 x100: {report.score:.4f}")
        for name, value in report.as_row().items():
            self.stdout.write(f"  {name:<16} {value:.6f}")
