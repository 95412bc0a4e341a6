"""
Dependency Injection Container

Centralized configuration of the workbench services using dependency-injector.

Design:
- Stateless services are singletons (one instance per process)
- Experiment runners are built per call so --jobs and grid overrides apply
- Lazy initialization (created on first use)
"""
from dependency_injector import containers, providers
from django.conf import settings


class Container(containers.DeclarativeContainer):
    """
    Main DI Container for the detector application.

    Manages lifecycle and dependencies for:
    - Flow parsing (flows/)
    - Dataset preparation (preprocessing/)
    - Harness settings, experiment runner and report renderer (harness/)
    """

    # Configuration providers
    config = providers.Configuration()

    # ============================================================================
    # Flows (flows/)
    # ============================================================================

    conn_log_parser = providers.Singleton(
        'detector.flows.ConnLogParser'
    )

    # ============================================================================
    # Preprocessing (preprocessing/)
    # ============================================================================

    preparation_service = providers.Singleton(
        'detector.preprocessing.DatasetPreparationService',
        eval_fraction=config.eval_fraction,
        seed=config.seed
    )

    # ============================================================================
    # Harness (harness/)
    # ============================================================================

    harness_settings = providers.Singleton(
        'detector.harness.HarnessSettings',
        folds=config.folds,
        eval_fraction=config.eval_fraction,
        jobs=config.jobs,
        histogram_min_rows=config.histogram_min_rows,
        max_episodes=config.max_episodes
    )

    experiment_runner = providers.Factory(
        'detector.harness.ExperimentRunner',
        settings=harness_settings
    )

    report_renderer = providers.Singleton(
        'detector.harness.ReportRenderer'
    )


def setup_container() -> Container:
    """
    Setup and configure the DI container with Django settings.

    Returns:
        Configured Container instance with all settings loaded
    """
    container = Container()

    container.config.seed.from_value(settings.FLOWSENTRY_SEED)
    container.config.eval_fraction.from_value(settings.FLOWSENTRY_EVAL_FRACTION)
    container.config.folds.from_value(settings.FLOWSENTRY_FOLDS)
    container.config.jobs.from_value(settings.FLOWSENTRY_JOBS)
    container.config.histogram_min_rows.from_value(settings.FLOWSENTRY_HISTOGRAM_MIN_ROWS)
    container.config.max_episodes.from_value(settings.FLOWSENTRY_MAX_EPISODES)

    return container


container = setup_container()
