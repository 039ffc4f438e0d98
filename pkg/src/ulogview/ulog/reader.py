"""ULog binary decoder.

Decodes the PX4-style self-describing binary log format: a 16-byte header,
then length-prefixed records tagged by a type byte (format definitions,
subscriptions, data, info, parameters, logged strings, dropouts, sync).
Data records are decoded columnar: the framing scan yields per-record
offsets, records of each subscription are gathered into one contiguous
buffer and viewed through a numpy structured dtype.

Salvage rules (crash logs are routinely cut off mid-write):
  * mid-record EOF keeps everything decoded so far and sets ``truncated``
    (strict=True raises TruncatedBody instead);
  * unknown or auxiliary record types are skipped;
  * out-of-order timestamps are stably sorted with a warning;
  * appended-data offsets from the flags record are honored, discarding
    any record that straddles a boundary.

A data record whose length does not match its subscribed layout (either
the full layout or the layout with trailing padding stripped, which
writers do not emit) raises SchemaViolation.
"""

from __future__ import annotations

import struct

import numpy as np

from .. import kernels
from ..errors import MalformedHeader, SchemaViolation, TruncatedBody
from .types import (
    SCALAR_SIZES,
    FlightLog,
    LoggedMessage,
    MessageSchema,
    MessageSeries,
    SchemaField,
)

MAGIC = b"\x55\x4c\x6f\x67\x01\x12\x35"
HEADER_SIZE = 16

# record tag bytes
_FLAGS = 0x42  # 'B'
_FORMAT = 0x46  # 'F'
_INFO = 0x49  # 'I'
_INFO_MULTI = 0x4D  # 'M'
_PARAM = 0x50  # 'P'
_PARAM_DEFAULT = 0x51  # 'Q'
_ADD_SUB = 0x41  # 'A'
_REMOVE_SUB = 0x52  # 'R'
_DATA = 0x44  # 'D'
_LOGGED = 0x4C  # 'L'
_LOGGED_TAGGED = 0x43  # 'C'
_SYNC = 0x53  # 'S'
_DROPOUT = 0x4F  # 'O'

_KNOWN_TYPES = frozenset(
    [_FLAGS, _FORMAT, _INFO, _INFO_MULTI, _PARAM, _PARAM_DEFAULT, _ADD_SUB,
     _REMOVE_SUB, _DATA, _LOGGED, _LOGGED_TAGGED, _SYNC, _DROPOUT]
)

#: wire type names -> scalar kinds
TYPE_MAP = {
    "int8_t": "int8",
    "uint8_t": "uint8",
    "int16_t": "int16",
    "uint16_t": "uint16",
    "int32_t": "int32",
    "uint32_t": "uint32",
    "int64_t": "int64",
    "uint64_t": "uint64",
    "float": "float32",
    "double": "float64",
    "bool": "bool",
    "char": "char",
}

_NUMPY_CODES = {
    "int8": "<i1",
    "uint8": "<u1",
    "int16": "<i2",
    "uint16": "<u2",
    "int32": "<i4",
    "uint32": "<u4",
    "int64": "<i8",
    "uint64": "<u8",
    "float32": "<f4",
    "float64": "<f8",
    "bool": "<u1",
    "char": "<u1",
}

_STRUCT_CODES = {
    "int8": "b", "uint8": "B", "int16": "h", "uint16": "H",
    "int32": "i", "uint32": "I", "int64": "q", "uint64": "Q",
    "float32": "f", "float64": "d", "bool": "B", "char": "B",
}

_MAX_NESTING = 8
_MAX_FLAT_FIELDS = 8192


def validate_header(data: bytes) -> tuple[int, int]:
    """Check magic and minimum length; return (version, start_boot_us)."""
    if len(data) < HEADER_SIZE:
        raise MalformedHeader(
            f"file too short for header ({len(data)} < {HEADER_SIZE} bytes)"
        )
    if data[:7] != MAGIC:
        raise MalformedHeader("bad magic bytes")
    version = data[7]
    start_boot_us = int.from_bytes(data[8:16], "little")
    return version, start_boot_us


def _is_padding(name: str) -> bool:
    # layout-only filler emitted by the autopilot's writer
    leaf = name.rsplit(".", 1)[-1]
    return leaf.startswith("_padding")


class _FormatTable:
    """Raw format definitions plus flattening into scalar-only schemas."""

    def __init__(self):
        self.raw: dict[str, list[tuple[str, int, str]]] = {}

    def add(self, text: str) -> None:
        name, _, body = text.partition(":")
        if not name or not body:
            raise ValueError("format definition missing name or body")
        fields: list[tuple[str, int, str]] = []
        for part in body.split(";"):
            part = part.strip()
            if not part:
                continue
            type_str, _, field_name = part.partition(" ")
            if not field_name:
                raise ValueError(f"field without a name in {name!r}")
            array_len = 1
            if type_str.endswith("]"):
                base, _, count = type_str[:-1].partition("[")
                array_len = int(count)
                if array_len < 1:
                    raise ValueError(f"bad array length in {name!r}")
                type_str = base
            fields.append((type_str, array_len, field_name))
        self.raw[name] = fields

    def flatten(
        self, name: str, prefix: str = "", depth: int = 0,
        budget: list[int] | None = None,
    ) -> list[tuple[str, str, int]]:
        """Expand nested composite types into dotted scalar fields."""
        if budget is None:
            budget = [_MAX_FLAT_FIELDS]
        if depth > _MAX_NESTING:
            raise ValueError(f"format {name!r} nests too deeply")
        out: list[tuple[str, str, int]] = []
        for type_str, array_len, field_name in self.raw[name]:
            budget[0] -= 1
            if budget[0] < 0:
                raise ValueError(f"format {name!r} expands to too many fields")
            kind = TYPE_MAP.get(type_str)
            if kind is not None:
                out.append((prefix + field_name, kind, array_len))
            elif type_str in self.raw:
                if array_len > 1:
                    for i in range(array_len):
                        out.extend(self.flatten(
                            type_str, f"{prefix}{field_name}[{i}].",
                            depth + 1, budget))
                else:
                    out.extend(self.flatten(
                        type_str, f"{prefix}{field_name}.", depth + 1, budget))
            else:
                raise ValueError(
                    f"format {name!r} references unknown type {type_str!r}"
                )
        return out

    def schema(self, name: str, multi_id: int) -> MessageSchema:
        flat = self.flatten(name)
        fields: list[SchemaField] = []
        offsets: list[int] = []
        off = 0
        trailing_pad = 0
        for fname, kind, array_len in flat:
            size = SCALAR_SIZES[kind] * array_len
            if _is_padding(fname):
                trailing_pad += size
            else:
                fields.append(SchemaField(fname, kind, array_len))
                offsets.append(off)
                trailing_pad = 0
            off += size
        layout = off
        if layout == 0:
            raise ValueError(f"format {name!r} is empty")
        schema = MessageSchema(
            name=name,
            multi_id=multi_id,
            fields=tuple(fields),
            offsets=tuple(offsets),
            layout_size=layout,
            wire_size=layout - trailing_pad,
        )
        ts = [f for f in schema.fields if f.name == "timestamp"]
        if not ts or ts[0].kind != "uint64" or ts[0].array_len != 1:
            raise ValueError(f"format {name!r} lacks a uint64 timestamp field")
        return schema


def _parse_flags(payload: bytes) -> tuple[int, ...]:
    """Validate the flag bitset; return appended-data resume offsets."""
    if len(payload) < 40:
        raise MalformedHeader("flags record too short")
    incompat = payload[8:16]
    known = bytes([0x01]) + bytes(7)
    if any(b & ~k for b, k in zip(incompat, known)):
        raise MalformedHeader("log uses incompatible features we cannot read")
    offsets = struct.unpack_from("<3Q", payload, 16)
    return tuple(o for o in offsets if o)


def _decode_typed_value(key: str, raw: bytes):
    """Decode an info/parameter value per its ``type name`` key.

    Returns (name, value) or None when the key or payload is unusable.
    """
    type_str, _, name = key.partition(" ")
    if not name:
        return None
    array_len = 1
    if type_str.endswith("]"):
        base, _, count = type_str[:-1].partition("[")
        try:
            array_len = int(count)
        except ValueError:
            return None
        type_str = base
    kind = TYPE_MAP.get(type_str)
    if kind is None:
        return None
    if kind == "char":
        return name, raw.decode("utf-8", errors="replace").rstrip("\x00")
    width = SCALAR_SIZES[kind]
    count = min(array_len, len(raw) // width)
    if count < 1:
        return None
    code = _STRUCT_CODES[kind]
    values = struct.unpack_from(f"<{count}{code}", raw, 0)
    if kind == "bool":
        values = tuple(bool(v) for v in values)
    return name, values[0] if count == 1 else list(values)


class _SeriesAccumulator:
    """Record offsets destined for one (message, instance) series."""

    __slots__ = ("schema", "chunks")

    def __init__(self, schema: MessageSchema):
        self.schema = schema
        self.chunks: list[tuple[np.ndarray, np.ndarray]] = []  # (offs, lens)


def parse_log(data: bytes, strict: bool = False) -> FlightLog:
    """Decode a complete log. Pure function of the byte buffer."""
    version, start_boot_us = validate_header(data)
    warnings: list[str] = []
    pos = HEADER_SIZE
    boundaries: tuple[int, ...] = ()

    # the flag bitset record, when present, must come first
    if len(data) >= pos + 3 and data[pos + 2] == _FLAGS:
        size = data[pos] | (data[pos + 1] << 8)
        if pos + 3 + size <= len(data):
            raw_bounds = _parse_flags(data[pos + 3 : pos + 3 + size])
            pos += 3 + size
            # offsets beyond EOF cannot be honored; salvage ignores them
            boundaries = tuple(b for b in raw_bounds if b <= len(data))
            if len(boundaries) != len(raw_bounds):
                warnings.append("appended-data offsets beyond EOF ignored")

    types, offs, sizes, truncated = kernels.scan_frames(data, pos, boundaries)
    if truncated:
        if strict:
            raise TruncatedBody("file ends mid-record")
        warnings.append("file ends mid-record; decoded records were kept")

    formats = _FormatTable()
    parameters: dict[str, float | int] = {}
    info: dict[str, object] = {}
    info_multi: dict[str, list[str]] = {}
    logged: list[LoggedMessage] = []
    # subscription timeline: per msg_id, (file offset, stream key or None)
    sub_events: dict[int, list[tuple[int, tuple[str, int] | None]]] = {}
    streams: dict[tuple[str, int], _SeriesAccumulator] = {}
    bad_formats = 0
    bad_records = 0
    unknown_records = 0
    dropouts = 0

    other_idx = np.nonzero(types != _DATA)[0]
    for i in other_idx.tolist():
        off = int(offs[i])
        size = int(sizes[i])
        payload = data[off : off + size]
        t = types[i]
        if t == _FORMAT:
            try:
                formats.add(payload.decode("utf-8", errors="replace"))
            except ValueError:
                bad_formats += 1
        elif t == _ADD_SUB:
            if size < 4:
                bad_records += 1
                continue
            multi_id = payload[0]
            msg_id = payload[1] | (payload[2] << 8)
            name = payload[3:].decode("utf-8", errors="replace")
            try:
                schema = formats.schema(name, multi_id)
            except (ValueError, KeyError) as exc:
                warnings.append(f"subscription to {name!r} skipped: {exc}")
                sub_events.setdefault(msg_id, []).append((off, None))
                continue
            key = (name, multi_id)
            if key not in streams:
                streams[key] = _SeriesAccumulator(schema)
            sub_events.setdefault(msg_id, []).append((off, key))
        elif t == _REMOVE_SUB:
            if size >= 2:
                msg_id = payload[0] | (payload[1] << 8)
                sub_events.setdefault(msg_id, []).append((off, None))
        elif t == _INFO:
            if size < 1:
                bad_records += 1
                continue
            klen = payload[0]
            key = payload[1 : 1 + klen].decode("utf-8", errors="replace")
            decoded = _decode_typed_value(key, payload[1 + klen :])
            if decoded is None:
                bad_records += 1
            else:
                info[decoded[0]] = decoded[1]
        elif t == _INFO_MULTI:
            if size < 2:
                bad_records += 1
                continue
            is_continued = payload[0]
            klen = payload[1]
            key = payload[2 : 2 + klen].decode("utf-8", errors="replace")
            decoded = _decode_typed_value(key, payload[2 + klen :])
            if decoded is None:
                bad_records += 1
                continue
            name, value = decoded
            parts = info_multi.setdefault(name, [])
            if is_continued and parts:
                parts[-1] += str(value)
            else:
                parts.append(str(value))
        elif t == _PARAM:
            if size < 1:
                bad_records += 1
                continue
            klen = payload[0]
            key = payload[1 : 1 + klen].decode("utf-8", errors="replace")
            decoded = _decode_typed_value(key, payload[1 + klen :])
            if decoded is None or not isinstance(decoded[1], (int, float)):
                bad_records += 1
            else:
                parameters[decoded[0]] = decoded[1]
        elif t == _LOGGED:
            if size < 9:
                bad_records += 1
                continue
            level = payload[0]
            ts = int.from_bytes(payload[1:9], "little")
            text = payload[9:].decode("utf-8", errors="replace")
            logged.append(LoggedMessage(ts, level, text))
        elif t == _LOGGED_TAGGED:
            if size < 11:
                bad_records += 1
                continue
            level = payload[0]
            ts = int.from_bytes(payload[3:11], "little")
            text = payload[11:].decode("utf-8", errors="replace")
            logged.append(LoggedMessage(ts, level, text))
        elif t == _DROPOUT:
            dropouts += 1
        elif t in (_SYNC, _FLAGS, _PARAM_DEFAULT):
            pass  # auxiliary
        else:
            unknown_records += 1

    # assign data records to streams via the subscription timeline
    d_idx = np.nonzero(types == _DATA)[0]
    orphan_data = 0
    if len(d_idx):
        d_offs = offs[d_idx]
        d_sizes = sizes[d_idx]
        short = d_sizes < 2
        bad_records += int(short.sum())
        d_offs = d_offs[~short]
        d_sizes = d_sizes[~short]
        src = np.frombuffer(data, dtype=np.uint8)
        d_ids = src[d_offs].astype(np.uint16) | (
            src[d_offs + 1].astype(np.uint16) << 8
        )
        for msg_id in np.unique(d_ids).tolist():
            events = sorted(sub_events.get(msg_id, []))
            sel = d_ids == msg_id
            rec_offs = d_offs[sel]
            rec_lens = d_sizes[sel] - 2
            if not events:
                orphan_data += len(rec_offs)
                continue
            edges = np.array([e[0] for e in events], dtype=np.int64)
            slot = np.searchsorted(edges, rec_offs, side="left") - 1
            orphan_data += int((slot < 0).sum())
            for si, (_, key) in enumerate(events):
                m = slot == si
                if not m.any():
                    continue
                if key is None:
                    orphan_data += int(m.sum())
                    continue
                streams[key].chunks.append(
                    (rec_offs[m] + 2, rec_lens[m])
                )

    series: dict[tuple[str, int], MessageSeries] = {}
    for key, acc in streams.items():
        series[key] = _build_series(data, acc, warnings)

    if bad_formats:
        warnings.append(f"{bad_formats} unparseable format definitions skipped")
    if bad_records:
        warnings.append(f"{bad_records} malformed records skipped")
    if unknown_records:
        warnings.append(f"{unknown_records} records of unknown type skipped")
    if orphan_data:
        warnings.append(
            f"{orphan_data} data records without an active subscription"
        )
    if dropouts:
        warnings.append(f"{dropouts} logging dropouts reported by the writer")

    for name, parts in info_multi.items():
        info.setdefault(name, "\n".join(parts))

    return FlightLog(
        version=version,
        start_boot_us=start_boot_us,
        series=series,
        parameters=parameters,
        info=info,
        logged_text=tuple(sorted(logged, key=lambda m: m.timestamp_us)),
        truncated=truncated,
        warnings=tuple(warnings),
    )


def _build_series(
    data: bytes, acc: _SeriesAccumulator, warnings: list[str]
) -> MessageSeries:
    schema = acc.schema
    label = f"{schema.name}/{schema.multi_id}"
    if acc.chunks:
        rec_offs = np.concatenate([c[0] for c in acc.chunks])
        rec_lens = np.concatenate([c[1] for c in acc.chunks])
        order = np.argsort(rec_offs, kind="stable")
        rec_offs = rec_offs[order]
        rec_lens = rec_lens[order]
    else:
        rec_offs = np.empty(0, dtype=np.int64)
        rec_lens = np.empty(0, dtype=np.int64)

    n = len(rec_offs)
    if n:
        reclen = int(rec_lens[0])
        if not np.all(rec_lens == reclen):
            raise SchemaViolation(f"{label}: records of differing lengths")
        if reclen not in (schema.wire_size, schema.layout_size):
            raise SchemaViolation(
                f"{label}: record length {reclen} does not match layout "
                f"({schema.wire_size} or {schema.layout_size} bytes)"
            )
    else:
        reclen = schema.wire_size

    names: list[str] = []
    fmts: list = []
    for f in schema.fields:
        names.append(f.name)
        code = _NUMPY_CODES[f.kind]
        fmts.append((code, (f.array_len,)) if f.array_len > 1 else code)
    dt = np.dtype(
        {"names": names, "formats": fmts,
         "offsets": list(schema.offsets), "itemsize": reclen}
    )

    raw = kernels.gather_records(data, rec_offs, reclen)
    table = raw.reshape(-1).view(dt) if n else np.empty(0, dtype=dt)

    timestamps = table["timestamp"].copy()
    order = None
    if n and np.any(np.diff(timestamps.astype(np.int64)) < 0):
        order = np.argsort(timestamps, kind="stable")
        timestamps = timestamps[order]
        warnings.append(f"{label}: out-of-order timestamps were sorted")

    columns: dict[str, np.ndarray] = {}
    for f in schema.fields:
        col = table[f.name]
        if order is not None:
            col = col[order]
        if f.array_len > 1:
            for i in range(f.array_len):
                columns[f"{f.name}[{i}]"] = np.ascontiguousarray(col[:, i])
        else:
            columns[f.name] = np.ascontiguousarray(col)
    return MessageSeries(schema=schema, timestamps=timestamps, columns=columns)


def list_messages(
    log: FlightLog,
) -> list[tuple[str, int, int, MessageSchema]]:
    """One entry per series: (name, multi_id, record count, schema),
    ordered lexicographically by name then instance."""
    out = []
    for (name, multi_id) in sorted(log.series):
        s = log.series[(name, multi_id)]
        out.append((name, multi_id, len(s), s.schema))
    return out
