"""
Django settings for the flowsentry workbench.

The project has no HTTP surface and no database tables; Django provides the
settings layer, the management-command CLI and the test runner.
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Load environment variables from .env file
load_dotenv(BASE_DIR / '.env')

SECRET_KEY = os.getenv('SECRET_KEY', 'flowsentry-insecure-workbench-key-not-used-for-signing')

DEBUG = os.getenv('DEBUG', 'True').lower() == 'true'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'detector',
]

# No tables are used; Django falls back to its dummy backend.
DATABASES = {}

LANGUAGE_CODE = os.getenv('LANGUAGE_CODE', 'en-us')

TIME_ZONE = os.getenv('TIME_ZONE', 'UTC')

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# =============================================================================
# Experiment Settings
# =============================================================================

# Seed fallback when neither --seed nor a config file provides one
FLOWSENTRY_SEED = int(os.getenv('FLOWSENTRY_SEED', '1'))

# Train/evaluation split and cross-validation
FLOWSENTRY_EVAL_FRACTION = float(os.getenv('FLOWSENTRY_EVAL_FRACTION', '0.2'))
FLOWSENTRY_FOLDS = int(os.getenv('FLOWSENTRY_FOLDS', '5'))

# Worker cap for grid points, folds and One-vs-All training (--jobs overrides)
FLOWSENTRY_JOBS = int(os.getenv('FLOWSENTRY_JOBS', '1'))

# DRL non-convergence guard
FLOWSENTRY_MAX_EPISODES = int(os.getenv('FLOWSENTRY_MAX_EPISODES', '1000'))

# Level-wise boosting uses histogram splits from this training size upwards
FLOWSENTRY_HISTOGRAM_MIN_ROWS = int(os.getenv('FLOWSENTRY_HISTOGRAM_MIN_ROWS', '50000'))

# Optional location of IoT-23 captures for the reproduction test suite
FLOWSENTRY_IOT23_DIR = os.getenv('FLOWSENTRY_IOT23_DIR', '')

# =============================================================================
# Logging Configuration
# =============================================================================

FLOWSENTRY_LOG_LEVEL = os.getenv('FLOWSENTRY_LOG_LEVEL', 'INFO')

# Empty = console only, so that nothing but --out files is written
FLOWSENTRY_LOG_DIR = os.getenv('FLOWSENTRY_LOG_DIR', '').strip()

from detector.utils.logging import get_logging_config  # noqa: E402
LOGGING = get_logging_config(
    level_name=FLOWSENTRY_LOG_LEVEL,
    log_dir=FLOWSENTRY_LOG_DIR,
    debug_mode=DEBUG,
)
