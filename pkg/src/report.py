"""An output document: the command that ran, its inputs, and typed results, plus provenance notes and
warnings. Rendering lives in `formats`.

Each value has a unique key, which doubles as its name in the rendered output. Keys keep the order
they were added in, so the same inputs always produce the same bytes.
"""

import enum
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from curve_bounds import RationalBound


class ValueType(enum.Enum):
    INTEGER = 1
    RATIONAL = 2
    STRING = 3
    BOOLEAN = 4
    TABLE = 5
    STRING_LIST = 6


@dataclass
class TypedValue:
    value: Any
    value_type: ValueType


@dataclass(frozen=True)
class Table:
    columns: Sequence[str]
    rows: Sequence[Sequence[Any]]


@dataclass
class OutputDocument:
    command: str
    inputs: Dict[str, TypedValue] = field(default_factory=dict)
    results: Dict[str, TypedValue] = field(default_factory=dict)
    provenance: Optional[str] = None
    warnings: List[str] = field(default_factory=list)

    # Inputs

    def add_input(self, key: str, value: Any):
        """Echo an input value. Integers keep full precision; anything else is shown as text"""
        if isinstance(value, bool):
            self.inputs[key] = TypedValue(value, ValueType.BOOLEAN)
        elif isinstance(value, int):
            self.inputs[key] = TypedValue(value, ValueType.INTEGER)
        else:
            self.inputs[key] = TypedValue(str(value), ValueType.STRING)

    # Results

    def _add_value(self, key: str, value: Any, value_type: ValueType):
        self.results[key] = TypedValue(value, value_type)

    def add_integer(self, key: str, value: int):
        """Add an exact integer, rendered in full decimal"""
        self._add_value(key, value, ValueType.INTEGER)

    def add_rational(self, key: str, value: RationalBound):
        """Add an exact rational bound, rendered with its floor"""
        self._add_value(key, value, ValueType.RATIONAL)

    def add_boolean(self, key: str, value: bool):
        self._add_value(key, value, ValueType.BOOLEAN)

    def add_table(self, key: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]):
        """Add a table. Cells may be integers, strings or None (shown as "-")"""
        self._add_value(key, Table(tuple(columns), [tuple(row) for row in rows]), ValueType.TABLE)

    def add_string_list(self, key: str, values: Sequence[str]):
        self._add_value(key, list(values), ValueType.STRING_LIST)

    def add_warning(self, message: str):
        self.warnings.append(message)
