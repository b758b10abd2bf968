"""
Catalog entries: named factories for General Rule conditions.

Entry ids and parameter names are part of the DSL surface; renaming one
breaks every shipped spec that uses it.
"""

from dataclasses import dataclass
from typing import Callable

from core.exceptions import ArityError, DimensionError, MissingParameter, UnknownEntry, UnknownName

from . import parameters

CATALOG = {}

# Number of entries the catalog ships with
CATALOG_SIZE = 27

REQUIRED = object()


@dataclass(frozen=True)
class Parameter:
    name: str
    kind: str
    default: object = REQUIRED
    help: str = ''

    def __post_init__(self):
        if self.kind not in parameters.KINDS:
            raise ValueError(f"Unknown parameter kind '{self.kind}'")

    @property
    def required(self):
        return self.default is REQUIRED

    @property
    def signature(self):
        if self.required:
            return f"{self.name}: {self.kind}"
        return f"{self.name}: {self.kind} = {parameters.show(self.default)}"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    reference: str
    parameters: tuple
    builder: Callable

    @property
    def signature(self):
        return ', '.join(parameter.signature for parameter in self.parameters)

    @property
    def names(self):
        return tuple(parameter.name for parameter in self.parameters)

    @property
    def condition_chart(self):
        """Name of the parameter that supplies the chart, if the entry takes one."""
        return next((p.name for p in self.parameters if p.kind == parameters.CHART), None)

    def resolve(self, chart, arguments):
        """Check names, fill defaults and coerce every argument to its parameter's kind."""
        unknown = [name for name in arguments if name not in self.names]
        if unknown:
            raise UnknownName(f"{self.id} has no parameter '{unknown[0]}' (parameters: {self.signature})")
        values = {}
        for parameter in self.parameters:
            if parameter.name in arguments:
                values[parameter.name] = parameters.coerce(parameter, arguments[parameter.name], chart)
            elif parameter.required:
                raise MissingParameter(f"{self.id} needs parameter '{parameter.name}'")
            else:
                values[parameter.name] = parameter.default
        return values

    def bind_positional(self, positional, named):
        """Merge positional arguments into the named ones in declaration order."""
        if len(positional) > len(self.parameters):
            raise ArityError(f"{self.id} takes {len(self.parameters)} argument(s), got {len(positional)}")
        merged = {}
        for parameter, value in zip(self.parameters, positional):
            merged[parameter.name] = value
        for name, value in named.items():
            if name in merged:
                raise ArityError(f"{self.id} got parameter '{name}' twice")
            merged[name] = value
        return merged


def register(id, reference, *params):
    """Register a builder(chart, **values) -> ClauseSpec tuple under `id`."""
    def decorator(builder):
        if id in CATALOG:
            raise ValueError(f"Catalog entry '{id}' registered twice")
        CATALOG[id] = CatalogEntry(id, reference, tuple(params), builder)
        return builder
    return decorator


def get_entry(id):
    try:
        return CATALOG[id]
    except KeyError:
        raise UnknownEntry(f"Unknown catalog entry '{id}'") from None


def catalog_list():
    """Every entry, alphabetical by id."""
    return [CATALOG[id] for id in sorted(CATALOG)]


def require_chart(entry, chart, values):
    name = entry.condition_chart
    if name is not None:
        return values[name]
    if chart is None:
        raise DimensionError(f"{entry.id} needs an active chart")
    return chart
