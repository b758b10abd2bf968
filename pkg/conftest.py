"""Pytest wiring: configure Django before the apps' tests.py modules are collected."""
import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / 'GRCHECK'))
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'GRCHECK.settings')

import django  # noqa: E402

django.setup()

from django.test.utils import setup_test_environment  # noqa: E402

# What `manage.py test` does before running: locmem email, 'testserver' host, etc.
setup_test_environment()
