"""
Syntax tree of a .grs document. Locations do not take part in equality, so a
reparsed pretty-print compares equal to the original tree.
"""

from dataclasses import dataclass, field
from typing import Optional


def location():
    return field(default=0, compare=False, repr=False)


# Expressions

@dataclass(frozen=True)
class Number:
    value: object
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class Name:
    name: str
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class Unary:
    op: str
    operand: object
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class Call:
    function: str
    argument: object
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class String:
    value: str
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class Bool:
    value: bool
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class ListValue:
    items: tuple
    line: int = location()
    column: int = location()


# Statements

@dataclass(frozen=True)
class ChartDecl:
    name: str
    coords: tuple
    is_complex: bool
    metric_kind: str
    metric: tuple
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class FieldDecl:
    name: str
    expr: object
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class Term:
    """sign * coefficient * d<basis[0]> ^w ... @label; coefficient None means 1."""
    sign: int
    coefficient: object
    basis: tuple
    label: Optional[str] = None
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class FormDecl:
    kind: str
    name: str
    degree: int
    space: Optional[str]
    terms: tuple
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class SpaceDecl:
    name: str
    labels: tuple
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class MatrixDecl:
    name: str
    rows: tuple
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    dim: int
    brackets: tuple
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class Sample:
    kind: str
    ranges: tuple
    count: int
    seed: Optional[int] = None
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class Argument:
    name: Optional[str]
    value: object
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class CheckDecl:
    name: Optional[str]
    entry: str
    arguments: tuple
    sample: Sample
    tol: Optional[float] = None
    expect: Optional[str] = None
    line: int = location()
    column: int = location()


@dataclass(frozen=True)
class SpecDocument:
    statements: tuple

    @property
    def checks(self):
        return tuple(s for s in self.statements if isinstance(s, CheckDecl))
