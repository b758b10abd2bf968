"""
Tokens, diagnostics and bound checks of the .grs spec language.
"""

from dataclasses import dataclass, field
from typing import Optional

from core.exceptions import GRCheckError

ERROR = 'error'
WARNING = 'warning'


@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    line: int
    column: int
    first_on_line: bool = False

    def __str__(self):
        if self.kind == 'EOF':
            return 'end of input'
        return f"'{self.value}'"


@dataclass(frozen=True)
class Diagnostic:
    """A located message; line is 1-based, column a 0-based offset into the line."""
    severity: str
    message: str
    line: int
    column: int
    excerpt: str = ''

    def format(self, path='<input>'):
        text = f"{path}:{self.line}:{self.column}: {self.severity}: {self.message}"
        if self.excerpt:
            text += f"\n    {self.excerpt}\n    {' ' * self.column}^"
        return text

    def __str__(self):
        return self.format()


class SpecError(GRCheckError):
    """Raised with every diagnostic collected while parsing or binding a document."""

    def __init__(self, diagnostics, path=None):
        self.diagnostics = tuple(diagnostics)
        self.path = path
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(first.message if first else 'invalid spec')

    def format(self):
        path = self.path or '<input>'
        return '\n'.join(diagnostic.format(path) for diagnostic in self.diagnostics)


def excerpt(source, line):
    lines = source.splitlines()
    return lines[line - 1] if 0 < line <= len(lines) else ''


@dataclass(frozen=True, eq=False)
class BoundCheck:
    """A check statement resolved to a condition, its sample set and its tolerance."""
    name: str
    entry: str
    condition: object
    samples: object
    tol: Optional[float] = None
    expect: Optional[str] = None
    line: int = 0
    arguments: dict = field(default_factory=dict)
