"""
Running the checks of a spec document: per-run overrides, the ordered list of
reports and the exit status they map to.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

from core.conf import grcheck_settings
from core.exceptions import ParameterError
from dsl.binder import load_file, load_text
from engine.evaluation import verify

logger = logging.getLogger(__name__)

# Exit statuses of the verify command
PASSED = 0
FAILED = 1
DIAGNOSTICS = 2
IO_ERROR = 3

JSON_VERSION = 1


@dataclass(frozen=True)
class RunConfig:
    """
    Overrides for one run. A check's own tol wins over `tol`, which wins over
    DEFAULT_TOL; `points` and `seed` replace those of random sample sets.
    """
    tol: Optional[float] = None
    points: Optional[int] = None
    seed: Optional[int] = None
    fail_fast: bool = False
    workers: Optional[int] = None

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise ParameterError(f"tol must be positive, got {self.tol}")
        if self.points is not None and self.points < 1:
            raise ParameterError(f"points must be at least 1, got {self.points}")
        if self.workers is not None and self.workers < 1:
            raise ParameterError(f"workers must be at least 1, got {self.workers}")

    def tolerance(self, check):
        if check.tol is not None:
            return check.tol
        if self.tol is not None:
            return self.tol
        return grcheck_settings('DEFAULT_TOL')


@dataclass
class RunResult:
    reports: list = field(default_factory=list)
    skipped: int = 0

    @property
    def version(self):
        return JSON_VERSION

    @property
    def passed(self):
        return sum(1 for report in self.reports if report.passed)

    @property
    def failed(self):
        return len(self.reports) - self.passed

    @property
    def unexpected(self):
        return sum(1 for report in self.reports if not report.meets_expectation)

    @property
    def exit_code(self):
        return FAILED if self.failed else PASSED


def run(checks, config=None):
    """Verify bound checks in declaration order."""
    config = config or RunConfig()
    result = RunResult()
    for position, check in enumerate(checks):
        samples = check.samples.with_overrides(count=config.points, seed=config.seed)
        report = verify(
            check.condition, samples, tol=config.tolerance(check), workers=config.workers, expect=check.expect,
        )
        result.reports.append(report)
        logger.info("%s (%s): %s", check.name, check.entry, report.verdict)
        if config.fail_fast and not report.passed:
            result.skipped = len(checks) - position - 1
            break
    return result


def run_text(source, config=None):
    return run(load_text(source), config)


def run_file(path, config=None):
    return run(load_file(path), config)
