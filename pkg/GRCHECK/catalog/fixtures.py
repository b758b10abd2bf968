"""
Fixtures are the checks of an entry's shipped spec file: each one carries the
arguments it was built from and the verdict it is expected to reproduce.
"""

from pathlib import Path

from core.conf import grcheck_settings
from dsl.binder import load_file

from .models import get_entry


def spec_path(entry_id):
    return Path(grcheck_settings('SPEC_DIR')) / f"{entry_id}.grs"


def fixtures(entry_id):
    """The bound checks of `<entry_id>.grs` that exercise that entry."""
    get_entry(entry_id)
    return [check for check in load_file(spec_path(entry_id)) if check.entry == entry_id]
