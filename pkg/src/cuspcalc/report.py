"""JSON reports.

Exact values are written as strings ("p/q", "1/3 + 2/3*omega", ...) and
never as floats; float values live in a separate ``numeric`` block.
Payloads are emitted with sorted keys so reruns are byte-identical apart
from the duration field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, is_dataclass
from enum import Enum
from fractions import Fraction

from . import __version__
from .algebra.fields import QOmega
from .algebra.polynomial import Polynomial

SCHEMA = 1


@dataclass
class Report:
    command: list[str]
    results: dict
    numeric: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    duration: float = 0.0
    version: str = __version__
    schema: int = SCHEMA

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "version": self.version,
            "command": list(self.command),
            "results": self.results,
            "numeric": self.numeric,
            "notes": list(self.notes),
            "duration": self.duration,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(
            command=list(d["command"]),
            results=d["results"],
            numeric=d.get("numeric", {}),
            notes=list(d.get("notes", [])),
            duration=d.get("duration", 0.0),
            version=d.get("version", __version__),
            schema=d.get("schema", SCHEMA),
        )


def emit(report: Report) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)


def parse(text: str) -> Report:
    return Report.from_dict(json.loads(text))


def exact(x):
    """A JSON-safe exact rendering of toolkit values."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (QOmega, Polynomial)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): exact(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [exact(v) for v in x]
    if is_dataclass(x):
        return {f.name: exact(getattr(x, f.name)) for f in fields(x)}
    if isinstance(x, complex):
        raise TypeError("complex values belong in the numeric block")
    if isinstance(x, float):
        raise TypeError("float values belong in the numeric block")
    return str(x)


def numeric(z) -> dict | list | float:
    if isinstance(z, (list, tuple)):
        return [numeric(v) for v in z]
    z = complex(z)
    return {"re": z.real, "im": z.imag}
