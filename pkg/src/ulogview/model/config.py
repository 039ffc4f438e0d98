"""Loads the hierarchy / flight-mode mapping from INI config.

Defaults ship inside the package; both files can be overridden by path
(CLI flags, service settings, or the ULOGVIEW_HIERARCHY and
ULOGVIEW_MODES environment variables).
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from importlib import resources

LAYER_NAMES = ("recorded", "estimated", "setpoints")


@dataclass(frozen=True)
class LayerConfig:
    message: str
    lat: str
    lon: str
    alt: str | None = None
    lat_scale: float = 1.0
    lon_scale: float = 1.0
    alt_scale: float = 1.0
    fix: str | None = None
    min_fix: int = 3


@dataclass(frozen=True)
class ModelConfig:
    layers: dict[str, LayerConfig] = field(default_factory=dict)
    flight_mode: tuple[str, str] | None = None  # (message, field)
    mode_labels: dict[int, str] = field(default_factory=dict)
    failsafe_ids: frozenset[int] = frozenset()

    def mode_label(self, mode_id: int) -> str:
        return self.mode_labels.get(mode_id, f"mode {mode_id}")


def _default_text(name: str) -> str:
    return resources.files("ulogview.config").joinpath(name).read_text()


def _read_ini(path: str | None, default_name: str) -> configparser.ConfigParser:
    cp = configparser.ConfigParser()
    if path:
        with open(path) as fh:
            cp.read_file(fh)
    else:
        cp.read_string(_default_text(default_name))
    return cp


def load_model_config(
    hierarchy_path: str | None = None, modes_path: str | None = None
) -> ModelConfig:
    hierarchy_path = hierarchy_path or os.environ.get("ULOGVIEW_HIERARCHY")
    modes_path = modes_path or os.environ.get("ULOGVIEW_MODES")

    hier = _read_ini(hierarchy_path, "hierarchy.ini")
    layers: dict[str, LayerConfig] = {}
    for name in LAYER_NAMES:
        if not hier.has_section(name):
            continue
        sec = hier[name]
        layers[name] = LayerConfig(
            message=sec["message"],
            lat=sec["lat"],
            lon=sec["lon"],
            alt=sec.get("alt") or None,
            lat_scale=float(sec.get("lat_scale", "1")),
            lon_scale=float(sec.get("lon_scale", "1")),
            alt_scale=float(sec.get("alt_scale", "1")),
            fix=sec.get("fix") or None,
            min_fix=int(sec.get("min_fix", "3")),
        )
    flight_mode = None
    if hier.has_section("flight_mode"):
        flight_mode = (hier["flight_mode"]["message"], hier["flight_mode"]["field"])

    modes = _read_ini(modes_path, "flight_modes.ini")
    labels = {}
    if modes.has_section("modes"):
        labels = {int(k): v for k, v in modes["modes"].items()}
    failsafe: frozenset[int] = frozenset()
    if modes.has_section("failsafe"):
        failsafe = frozenset(
            int(x) for x in modes["failsafe"]["ids"].split(",") if x.strip()
        )
    return ModelConfig(
        layers=layers,
        flight_mode=flight_mode,
        mode_labels=labels,
        failsafe_ids=failsafe,
    )
