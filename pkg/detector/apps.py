from django.apps import AppConfig
import logging

logger = logging.getLogger(__name__)


class DetectorConfig(AppConfig):
    name = 'detector'
    verbose_name = 'flowsentry detector workbench'

    def ready(self):
        """Register every learner kind before any command looks one up."""
        import detector.learners  # noqa: F401

        logger.debug(f"Learners registered: {', '.join(sorted(detector.learners.LEARNERS))}")
