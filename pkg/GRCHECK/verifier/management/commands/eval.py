from django.core.management.base import BaseCommand, CommandError

from core.exceptions import GRCheckError
from dsl.binder import evaluate_expression
from dsl.models import SpecError
from verifier.models import DIAGNOSTICS
from verifier.report import format_value


def parse_assignments(text):
    """'x=1,y=0.5' -> {'x': 1.0, 'y': 0.5}, in order."""
    values = {}
    for item in filter(None, (part.strip() for part in (text or '').split(','))):
        name, sep, value = item.partition('=')
        if not sep or not name.strip():
            raise ValueError(f"expected name=value, got '{item}'")
        values[name.strip()] = float(value)
    return values


class Command(BaseCommand):
    help = "Evaluate a scalar expression at a point."

    def add_arguments(self, parser):
        parser.add_argument('expr', help="expression, e.g. \"exp(-x^2)*sin(y)\"")
        parser.add_argument('--at', default='', help="coordinate values, e.g. x=1,y=0.5")

    def handle(self, *args, **options):
        try:
            at = parse_assignments(options['at'])
            value = evaluate_expression(options['expr'], at)
        except ValueError as exc:
            raise CommandError(f"--at: {exc}", returncode=DIAGNOSTICS)
        except SpecError as exc:
            self.stderr.write(exc.format())
            raise CommandError(f"{len(exc.diagnostics)} diagnostic(s)", returncode=DIAGNOSTICS)
        except GRCheckError as exc:
            raise CommandError(str(exc), returncode=DIAGNOSTICS)
        self.stdout.write(format_value(value))
