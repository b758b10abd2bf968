"""
Django settings for GRCHECK project.

The project hosts the General Rule residual verifier: a set of domain apps
(fields, exterior, valued, diffops, engine, catalog, dsl) plus the verifier
app that exposes them through management commands and a small JSON API.

Every tunable below may be overridden from the environment or a `.env`
file placed next to manage.py.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('GRCHECK_SECRET_KEY', 'django-insecure-grcheck-development-key')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.getenv('GRCHECK_DEBUG', 'True') == 'True'

ALLOWED_HOSTS = [host for host in os.getenv('GRCHECK_ALLOWED_HOSTS', '').split(',') if host]


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'core',
    'fields',
    'exterior',
    'valued',
    'diffops',
    'engine',
    'catalog',
    'dsl',
    'verifier',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.middleware.common.CommonMiddleware',
]

ROOT_URLCONF = 'GRCHECK.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.request',
            ],
        },
    },
]

WSGI_APPLICATION = 'GRCHECK.wsgi.application'


# Database
# Nothing is persisted: reports are computed on demand and rendered as JSON.

DATABASES = {}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Static files (CSS, JavaScript, Images)

STATIC_URL = 'static/'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': (
        'rest_framework.permissions.AllowAny',
    ),
    'DEFAULT_RENDERER_CLASSES': (
        'rest_framework.renderers.JSONRenderer',
    ),
    'DEFAULT_PARSER_CLASSES': (
        'rest_framework.parsers.JSONParser',
    ),
    'UNAUTHENTICATED_USER': None,
}


# Verifier tunables

GRCHECK = {
    'DEFAULT_TOL': float(os.getenv('GRCHECK_DEFAULT_TOL', '1e-9')),
    'DEFAULT_POINTS': int(os.getenv('GRCHECK_DEFAULT_POINTS', '1000')),
    'DEFAULT_SEED': int(os.getenv('GRCHECK_DEFAULT_SEED', '7')),
    'WORKERS': int(os.getenv('GRCHECK_WORKERS', '1')),
    'SPEC_DIR': Path(os.getenv('GRCHECK_SPEC_DIR', BASE_DIR / 'specs')),
    'SINGULAR_DIVISOR': float(os.getenv('GRCHECK_SINGULAR_DIVISOR', '1e-300')),
    'DEGENERACY_THRESHOLD': float(os.getenv('GRCHECK_DEGENERACY_THRESHOLD', '1e-12')),
    'IDEMPOTENCE_TOL': float(os.getenv('GRCHECK_IDEMPOTENCE_TOL', '1e-10')),
}


# Logging

LOG_LEVEL = os.getenv('GRCHECK_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'grcheck': {
            'format': '%(levelname)s %(name)s %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'grcheck',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': LOG_LEVEL,
    },
}
