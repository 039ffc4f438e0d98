"""Overview profile: the curated chart list, resolved per log.

The profile is editable text config (see ulogview/config/overview.ini);
resolution drops what the log cannot provide and turns all-constant
groups into value rows.
"""

from __future__ import annotations

import configparser
import os
import re
from dataclasses import dataclass, field
from importlib import resources

from ..errors import EmptySeries
from ..model.series import AttributeRef, detect_constant, get_series
from ..ulog.types import FlightLog

_ENTRY_RE = re.compile(r"^(?P<ref>[^\[\]]+(?:\[\d+\]|\[\*\])?\.[^ \[\]]+)"
                       r"(?:\s*\[(?P<unit>[^\]]+)\])?$")


@dataclass(frozen=True)
class ProfileEntry:
    pattern: str  # attribute reference, message part may be message[*]
    unit: str | None = None


@dataclass(frozen=True)
class ProfileGroup:
    title: str
    entries: tuple[ProfileEntry, ...]
    shared_scale: bool = False

    def __post_init__(self):
        if self.shared_scale:
            units = {e.unit for e in self.entries}
            if len(units) != 1:
                raise ValueError(
                    f"group {self.title!r} shares a scale but mixes units {units}"
                )


@dataclass(frozen=True)
class OverviewProfile:
    groups: tuple[ProfileGroup, ...]


@dataclass(frozen=True)
class ChartSpec:
    title: str
    series: tuple[AttributeRef, ...]
    render_as: str  # "chart" | "constant"
    constants: dict = field(default_factory=dict)  # str(ref) -> value
    unit: str | None = None


def parse_entry(text: str) -> ProfileEntry:
    m = _ENTRY_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad profile entry: {text!r}")
    return ProfileEntry(pattern=m.group("ref").strip(), unit=m.group("unit"))


def load_profile(path: str | None = None) -> OverviewProfile:
    path = path or os.environ.get("ULOGVIEW_PROFILE")
    cp = configparser.ConfigParser()
    cp.optionxform = str  # titles keep their case
    if path:
        with open(path) as fh:
            cp.read_file(fh)
    else:
        cp.read_string(
            resources.files("ulogview.config").joinpath("overview.ini").read_text()
        )
    groups = []
    for title in cp.sections():
        sec = cp[title]
        entries = tuple(
            parse_entry(e) for e in sec.get("entries", "").split(",") if e.strip()
        )
        if not entries:
            continue
        groups.append(
            ProfileGroup(
                title=title,
                entries=entries,
                shared_scale=sec.getboolean("shared_scale", fallback=False),
            )
        )
    return OverviewProfile(groups=tuple(groups))


def _expand(pattern: str, log: FlightLog) -> list[AttributeRef]:
    """Resolve one pattern to the attribute refs that exist in the log."""
    if "[*]" in pattern:
        head, _, fieldpart = pattern.partition(".")
        message = head[: -len("[*]")]
        refs = [
            AttributeRef(message, fieldpart, mid)
            for (name, mid) in sorted(log.series)
            if name == message
        ]
    else:
        try:
            refs = [AttributeRef.parse(pattern)]
        except ValueError:
            return []
    out = []
    for ref in refs:
        series = log.series.get((ref.message, ref.multi_id))
        if series is not None and ref.field in series.columns:
            out.append(ref)
    return out


def resolve_profile(profile: OverviewProfile, log: FlightLog) -> list[ChartSpec]:
    """Groups with zero resolvable entries are dropped; groups whose every
    resolved series is constant become value rows. Order is preserved."""
    specs: list[ChartSpec] = []
    for group in profile.groups:
        refs: list[AttributeRef] = []
        for entry in group.entries:
            refs.extend(_expand(entry.pattern, log))
        if not refs:
            continue
        constants = {}
        all_constant = True
        for ref in refs:
            try:
                value = detect_constant(get_series(log, ref))
            except EmptySeries:
                value = None
            if value is None:
                all_constant = False
            else:
                constants[str(ref)] = value
        unit = group.entries[0].unit if group.shared_scale else None
        if all_constant:
            specs.append(
                ChartSpec(
                    title=group.title,
                    series=tuple(refs),
                    render_as="constant",
                    constants=constants,
                    unit=unit,
                )
            )
        else:
            specs.append(
                ChartSpec(
                    title=group.title,
                    series=tuple(refs),
                    render_as="chart",
                    unit=unit,
                )
            )
    return specs
