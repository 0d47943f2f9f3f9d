"""
Django settings for diffrep project.

Generated by 'django-admin startproject' using Django 5.2.1 and trimmed to
what a batch computation project needs: no URLs, no templates, one SQLite
database for recorded verification runs.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import os

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('DIFFREP_SECRET_KEY', 'django-insecure-diffrep-batch-only-no-http-surface')

DEBUG = os.environ.get('DIFFREP_DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',

    # Third party apps
    'rest_framework',

    # Local apps
    'group_core',
    'repfn',
    'energy_tcount',
    'extremal_verify',
    'constructions',
    'continuous',
    'cli',
]


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get('DIFFREP_DB', BASE_DIR / 'db.sqlite3'),
    }
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True

# Default primary key field type
# https://docs.djangoproject.com/en/5.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Django REST Framework settings (serializers only, no views)
REST_FRAMEWORK = {
    'COERCE_DECIMAL_TO_STRING': True,
    'UNAUTHENTICATED_USER': None,
}

# Enumeration limits
DIFFREP_ENUMERATION_CAP = int(os.environ.get('DIFFREP_CAP', '2000000'))
DIFFREP_EXHAUSTIVE_ORDER_CAP = 31
DIFFREP_EXHAUSTIVE_PRIMES = [5, 7, 11, 13]
DIFFREP_DENSE_MAX_CARRIER = 2 ** 22

# Representation tables
DIFFREP_FFT_MIN_ORDER = 512

# Theorem checkers: transcendental bounds within this band are "borderline"
DIFFREP_GUARD_BAND = 1e-9

# Exhaustive sweeps
DIFFREP_DEFAULT_JOBS = int(os.environ.get('DIFFREP_JOBS', '1'))

# Logging Configuration
DIFFREP_LOG_LEVEL = os.environ.get('DIFFREP_LOG_LEVEL', 'INFO')
DIFFREP_LOG_FILE = os.environ.get('DIFFREP_LOG_FILE', '')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    },
}

for _app in ('group_core', 'repfn', 'energy_tcount', 'extremal_verify',
             'constructions', 'continuous', 'cli'):
    LOGGING['loggers'][_app] = {
        'handlers': ['console'],
        'level': DIFFREP_LOG_LEVEL,
        'propagate': False,
    }

if DIFFREP_LOG_FILE:
    LOGGING['handlers']['file'] = {
        'level': 'INFO',
        'class': 'logging.FileHandler',
        'filename': DIFFREP_LOG_FILE,
        'formatter': 'verbose',
    }
    for _logger in LOGGING['loggers'].values():
        _logger['handlers'].append('file')
