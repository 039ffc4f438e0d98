"""In-memory model of a decoded flight log.

A parsed log is a three-dimensional table: named message series (with an
instance index for multi-instance subsystems) x timestamps x attribute
columns. Instances are immutable after construction; numpy column arrays
are marked read-only so a log can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

#: basic scalar kinds and their byte widths on the wire
SCALAR_SIZES = {
    "int8": 1,
    "uint8": 1,
    "int16": 2,
    "uint16": 2,
    "int32": 4,
    "uint32": 4,
    "int64": 8,
    "uint64": 8,
    "float32": 4,
    "float64": 8,
    "bool": 1,
    "char": 1,
}

#: numpy dtype used to store each scalar kind. bool and char columns are
#: stored as raw byte values so decoding is bit-exact for any input.
SCALAR_DTYPES = {
    "int8": np.int8,
    "uint8": np.uint8,
    "int16": np.int16,
    "uint16": np.uint16,
    "int32": np.int32,
    "uint32": np.uint32,
    "int64": np.int64,
    "uint64": np.uint64,
    "float32": np.float32,
    "float64": np.float64,
    "bool": np.uint8,
    "char": np.uint8,
}


@dataclass(frozen=True)
class SchemaField:
    """One field of a message layout, already flattened to scalars."""

    name: str
    kind: str  # key into SCALAR_SIZES
    array_len: int = 1

    @property
    def size(self) -> int:
        return SCALAR_SIZES[self.kind] * self.array_len


@dataclass(frozen=True)
class MessageSchema:
    """Byte layout of one subscribed message series.

    ``fields`` contains only real (non-padding) fields, each with the byte
    offset where it starts inside a record. Nested composite types from the
    format definitions are flattened with dotted names before a schema is
    built, so every field here is a scalar or a scalar array.
    """

    name: str
    multi_id: int
    fields: tuple[SchemaField, ...]
    offsets: tuple[int, ...]  # per-field byte offset within a record
    layout_size: int  # full record size including trailing padding
    wire_size: int  # record size with trailing padding stripped

    def __post_init__(self):
        names = [f.name for f in self.fields]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate field names in {self.name}: {dupes}")

    @property
    def timestamp_offset(self) -> int:
        for f, off in zip(self.fields, self.offsets):
            if f.name == "timestamp":
                return off
        raise ValueError(f"schema {self.name} has no timestamp field")

    def column_names(self) -> list[str]:
        """Column names after array expansion (``field[i]`` per element)."""
        out: list[str] = []
        for f in self.fields:
            if f.array_len > 1:
                out.extend(f"{f.name}[{i}]" for i in range(f.array_len))
            else:
                out.append(f.name)
        return out


@dataclass(frozen=True)
class MessageSeries:
    """All decoded records of one (message name, instance) pair.

    Columns are parallel 1-D arrays; array fields are expanded to one
    column per element. ``len(timestamps) == len(col)`` for every column.
    """

    schema: MessageSchema
    timestamps: np.ndarray  # uint64 microseconds since boot, non-decreasing
    columns: Mapping[str, np.ndarray]

    def __post_init__(self):
        n = len(self.timestamps)
        for name, col in self.columns.items():
            if len(col) != n:
                raise ValueError(
                    f"column {name} has {len(col)} values, expected {n}"
                )

    def __len__(self) -> int:
        return len(self.timestamps)


@dataclass(frozen=True)
class LoggedMessage:
    timestamp_us: int
    severity: int  # syslog level, 0 (emergency) .. 7 (debug)
    text: str


@dataclass(frozen=True)
class FlightLog:
    """A fully decoded log: the queryable 3-D table plus its metadata."""

    version: int
    start_boot_us: int
    series: Mapping[tuple[str, int], MessageSeries]
    parameters: Mapping[str, float | int]
    info: Mapping[str, object]
    logged_text: tuple[LoggedMessage, ...]
    truncated: bool = False
    warnings: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "series", MappingProxyType(dict(self.series)))
        object.__setattr__(
            self, "parameters", MappingProxyType(dict(self.parameters))
        )
        object.__setattr__(self, "info", MappingProxyType(dict(self.info)))
        for s in self.series.values():
            s.timestamps.setflags(write=False)
            for col in s.columns.values():
                col.setflags(write=False)
