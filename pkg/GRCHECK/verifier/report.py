"""
Human and JSON renderings of a run. Neither includes timestamps or paths, so
the same inputs and seeds give byte-identical output.
"""

from rest_framework.renderers import JSONRenderer

from catalog.serializers import CatalogEntrySerializer

from .serializers import VerificationSerializer

HEADER = ('NAME', 'ENTRY', 'POINTS', 'L∞', 'RMS', 'TOL', 'RESULT')


def render_json(result):
    return JSONRenderer().render(VerificationSerializer(result).data).decode('utf-8')


def render_catalog_json(entries):
    return JSONRenderer().render(CatalogEntrySerializer(entries, many=True).data).decode('utf-8')


def _table(header, rows):
    widths = [max(len(str(row[i])) for row in [header, *rows]) for i in range(len(header))]
    lines = []
    for row in [header, *rows]:
        lines.append('  '.join(str(cell).ljust(width) for cell, width in zip(row, widths)).rstrip())
    return '\n'.join(lines)


def _row(report):
    verdict = report.verdict.upper()
    if not report.meets_expectation:
        verdict += f" (expected {report.expect})"
    rms = max(norm.rms for norm in report.norms.values())
    return (
        report.name,
        report.entry,
        f"{report.evaluated}/{report.requested}",
        f"{report.linf:.3e}",
        f"{rms:.3e}",
        f"{report.tol:g}",
        verdict,
    )


def summary(result):
    text = f"{result.passed} passed, {result.failed} failed"
    if result.unexpected:
        text += f", {result.unexpected} unexpected"
    if result.skipped:
        text += f", {result.skipped} skipped"
    return text


def render_table(result):
    return f"{_table(HEADER, [_row(report) for report in result.reports])}\n\n{summary(result)}"


def render_catalog(entries):
    return _table(('ENTRY', 'PARAMETERS', 'REFERENCE'), [(e.id, e.signature, e.reference) for e in entries])


def format_value(value):
    """Real values print as plain numbers, complex ones as a+bj."""
    value = complex(value)
    if value.imag == 0:
        return f"{value.real:.17g}"
    return f"{value.real:.17g}{value.imag:+.17g}j"
