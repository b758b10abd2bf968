from django.core.management.base import BaseCommand, CommandError

from core.exceptions import GRCheckError
from dsl.models import SpecError
from verifier.models import DIAGNOSTICS, FAILED, IO_ERROR, RunConfig, run_file
from verifier.report import render_json, render_table


class Command(BaseCommand):
    help = "Verify every check of a .grs spec file. Exit 0 if all pass, 1 on failures, 2 on diagnostics, 3 on I/O errors."

    def add_arguments(self, parser):
        parser.add_argument('path', help="spec file to verify")
        parser.add_argument('--json', action='store_true', help="emit the machine-readable report")
        parser.add_argument('--tol', type=float, help="tolerance for checks that do not declare one")
        parser.add_argument('--points', type=int, help="point count for random sample sets")
        parser.add_argument('--seed', type=int, help="seed for random sample sets")
        parser.add_argument('--fail-fast', action='store_true', help="stop after the first failing check")
        parser.add_argument('--workers', type=int, help="threads evaluating sample points")

    def handle(self, *args, **options):
        try:
            config = RunConfig(
                tol=options['tol'], points=options['points'], seed=options['seed'],
                fail_fast=options['fail_fast'], workers=options['workers'],
            )
            result = run_file(options['path'], config)
        except OSError as exc:
            raise CommandError(f"cannot read {options['path']}: {exc.strerror or exc}", returncode=IO_ERROR)
        except SpecError as exc:
            self.stderr.write(exc.format())
            raise CommandError(f"{len(exc.diagnostics)} diagnostic(s)", returncode=DIAGNOSTICS)
        except GRCheckError as exc:
            raise CommandError(str(exc), returncode=DIAGNOSTICS)

        self.stdout.write(render_json(result) if options['json'] else render_table(result))
        if result.exit_code:
            raise CommandError(f"{result.failed} check(s) failed", returncode=FAILED)
