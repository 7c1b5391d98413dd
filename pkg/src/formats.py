"""Output formats for `OutputDocument`.

A `DocumentFormat` defines how a document becomes text. Each scheme picks how every value type is
written out, using a dictionary from value type to converter. Big integers are always written in full
decimal and rationals as "num/den" with their floor; floats never appear.
"""

import json
from abc import abstractmethod
from typing import Any, Callable, Dict, List, Protocol

from report import OutputDocument, Table, TypedValue, ValueType


class DocumentFormat(Protocol):
    @abstractmethod
    def render(self, document: OutputDocument) -> str:
        """The whole document as text, ending with a newline"""
        raise NotImplementedError


def _cell(value: Any) -> str:
    return "-" if value is None else str(value)


# Schemes


class TextFormat(DocumentFormat):
    """Human-readable `key: value` lines"""

    def __init__(self):
        self._converters: Dict[ValueType, Callable[[Any], str]] = {
            ValueType.INTEGER: str,
            ValueType.RATIONAL: lambda bound: f"{bound.value} (floor {bound.floor_value})",
            ValueType.STRING: str,
            ValueType.BOOLEAN: lambda flag: "true" if flag else "false",
            ValueType.TABLE: self._table,
            ValueType.STRING_LIST: lambda values: "".join(f"\n    {v}" for v in values),
        }

    def render(self, document: OutputDocument) -> str:
        lines = [f"command: {document.command}"]
        lines += self._section("inputs", document.inputs)
        lines += self._section("results", document.results)
        if document.provenance:
            lines.append(f"provenance: {document.provenance}")
        if document.warnings:
            lines.append("warnings:")
            lines += [f"  - {message}" for message in document.warnings]
        return "\n".join(lines) + "\n"

    def _section(self, title: str, values: Dict[str, TypedValue]) -> List[str]:
        if not values:
            return []
        lines = [f"{title}:"]
        for key, typed in values.items():
            lines.append(f"  {key}: {self._converters[typed.value_type](typed.value)}")
        return lines

    @staticmethod
    def _table(table: Table) -> str:
        cells = [list(table.columns)] + [[_cell(v) for v in row] for row in table.rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(table.columns))]
        return "".join(
            "\n    " + "  ".join(cell.rjust(width) for cell, width in zip(row, widths))
            for row in cells
        )


class JsonFormat(DocumentFormat):
    """One JSON object per document, keys in insertion order"""

    def __init__(self):
        self._converters: Dict[ValueType, Callable[[Any], Any]] = {
            ValueType.INTEGER: str,
            ValueType.RATIONAL: lambda bound: {
                "value": str(bound),
                "floor": str(bound.floor_value),
            },
            ValueType.STRING: str,
            ValueType.BOOLEAN: bool,
            ValueType.TABLE: lambda table: [
                {column: None if v is None else str(v) for column, v in zip(table.columns, row)}
                for row in table.rows
            ],
            ValueType.STRING_LIST: list,
        }

    def render(self, document: OutputDocument) -> str:
        payload = {
            "command": document.command,
            "inputs": self._section(document.inputs),
            "results": self._section(document.results),
            "provenance": document.provenance,
            "warnings": list(document.warnings),
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"

    def _section(self, values: Dict[str, TypedValue]) -> Dict[str, Any]:
        return {
            key: self._converters[typed.value_type](typed.value)
            for key, typed in values.items()
        }


FORMATS: Dict[str, DocumentFormat] = {"text": TextFormat(), "json": JsonFormat()}
