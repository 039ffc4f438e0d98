"""Ephemeral HTTP API over parsed flight logs.

All responses are compact JSON with microsecond integer timestamps and
parallel arrays per series. NaN and infinity become null on the wire.
Uploads live only in memory (see sessions.SessionStore).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from fastapi import FastAPI, HTTPException, Request, Response
from starlette.concurrency import run_in_threadpool

from .. import __version__
from ..colors import load_profile, make_scale, map_value, resolve_profile
from ..errors import (
    EmptySeries,
    FlightLogError,
    NoPosition,
    UnknownAttribute,
)
from ..geo import (
    CHART_POINT_BUDGET,
    CHART_TOLERANCE_PX,
    align_attribute,
    build_trajectory,
    export_geojson,
    segments,
    simplify_to_budget,
    split_by_window,
)
from ..model import (
    AttributeRef,
    TimeWindow,
    extract_events,
    extract_hierarchy,
    flight_meta,
    get_series,
    load_model_config,
    summarize,
)
from ..ulog import list_messages, parse_log
from .sessions import Session, SessionStore

DEFAULT_UPLOAD_LIMIT = 256 * 1024 * 1024
DEFAULT_TTL_SECONDS = 30 * 60.0
DEFAULT_TILE_URL = "https://server.arcgisonline.com/ArcGIS/rest/services/World_Imagery/MapServer/tile/{z}/{y}/{x}"


@dataclass
class Settings:
    ttl_seconds: float = DEFAULT_TTL_SECONDS
    upload_limit: int = DEFAULT_UPLOAD_LIMIT
    hierarchy_path: str | None = None
    modes_path: str | None = None
    profile_path: str | None = None
    tile_url: str = DEFAULT_TILE_URL
    sweep_interval: float = 60.0
    background_sweeper: bool = False

    @classmethod
    def from_env(cls) -> "Settings":
        env = os.environ
        return cls(
            ttl_seconds=float(env.get("ULOGVIEW_TTL", DEFAULT_TTL_SECONDS)),
            upload_limit=int(env.get("ULOGVIEW_UPLOAD_LIMIT", DEFAULT_UPLOAD_LIMIT)),
            hierarchy_path=env.get("ULOGVIEW_HIERARCHY"),
            modes_path=env.get("ULOGVIEW_MODES"),
            profile_path=env.get("ULOGVIEW_PROFILE"),
            tile_url=env.get("ULOGVIEW_TILE_URL", DEFAULT_TILE_URL),
        )


def _nan_to_none(values) -> list:
    return [None if v is None or (isinstance(v, float) and not math.isfinite(v)) else v
            for v in values]


def _column_to_wire(col: np.ndarray) -> list:
    if col.dtype.kind == "f":
        return _nan_to_none(col.astype(float).tolist())
    return col.tolist()


def _parse_window(start: str | None, end: str | None) -> TimeWindow | None:
    if start is None and end is None:
        return None
    try:
        lo = int(start) if start is not None else 0
        hi = int(end) if end is not None else (1 << 62)
        return TimeWindow(lo, hi)
    except ValueError as exc:
        raise HTTPException(400, f"invalid window: {exc}") from exc


def create_app(settings: Settings | None = None) -> FastAPI:
    settings = settings or Settings.from_env()
    model_config = load_model_config(settings.hierarchy_path, settings.modes_path)
    profile = load_profile(settings.profile_path)
    store = SessionStore(ttl_seconds=settings.ttl_seconds)

    app = FastAPI(title="ulogview", version=__version__)
    app.state.sessions = store
    app.state.settings = settings

    if settings.background_sweeper:
        app.state.sweeper_stop = store.start_sweeper(settings.sweep_interval)

    def session_or_404(session_id: str) -> Session:
        session = store.get(session_id)
        if session is None:
            raise HTTPException(404, "unknown or expired session")
        return session

    def attr_or_404(text: str) -> AttributeRef:
        try:
            return AttributeRef.parse(text)
        except ValueError as exc:
            raise HTTPException(404, str(exc)) from exc

    @app.get("/config")
    def config() -> dict:
        return {
            "tile_url": settings.tile_url,
            "upload_limit": settings.upload_limit,
            "ttl_seconds": settings.ttl_seconds,
            "version": __version__,
        }

    @app.post("/logs", status_code=200)
    async def open_session(request: Request) -> dict:
        declared = request.headers.get("content-length")
        if declared and declared.isdigit() and int(declared) > settings.upload_limit:
            raise HTTPException(413, "upload exceeds size limit")
        chunks: list[bytes] = []
        total = 0
        async for chunk in request.stream():
            total += len(chunk)
            if total > settings.upload_limit:
                raise HTTPException(413, "upload exceeds size limit")
            chunks.append(chunk)
        data = b"".join(chunks)
        try:
            log = await run_in_threadpool(parse_log, data)
        except FlightLogError as exc:
            raise HTTPException(400, f"cannot parse log: {exc}") from exc
        meta = flight_meta(log, model_config)
        hierarchy = extract_hierarchy(log, model_config)
        session = store.put(log, meta, hierarchy)
        return {"id": session.id, "meta": _meta_json(session)}

    @app.get("/logs/{session_id}/meta")
    def meta(session_id: str) -> dict:
        return _meta_json(session_or_404(session_id))

    @app.get("/logs/{session_id}/messages")
    def messages(session_id: str) -> list:
        session = session_or_404(session_id)
        out = []
        for name, multi_id, count, schema in list_messages(session.log):
            out.append(
                {
                    "name": name,
                    "multi_id": multi_id,
                    "count": count,
                    "fields": [
                        {"name": f.name, "kind": f.kind, "array_len": f.array_len}
                        for f in schema.fields
                    ],
                    "columns": schema.column_names(),
                }
            )
        return out

    @app.get("/logs/{session_id}/series")
    def series(
        session_id: str,
        msg: str,
        field: str,
        inst: int = 0,
        start: str | None = None,
        end: str | None = None,
        px: int = 0,
    ) -> dict:
        session = session_or_404(session_id)
        window = _parse_window(start, end)
        try:
            ts = get_series(session.log, AttributeRef(msg, field, inst), window)
        except UnknownAttribute as exc:
            raise HTTPException(404, str(exc)) from exc
        timestamps = ts.timestamps
        values = ts.values
        tolerance = 0.0
        if px > 0 and len(timestamps) > 2:
            xs = timestamps.astype(np.float64)
            span = xs[-1] - xs[0]
            xs = (xs - xs[0]) / (span if span else 1.0) * px
            ys = np.asarray(values, dtype=np.float64)
            finite = ys[np.isfinite(ys)]
            lo = float(finite.min()) if len(finite) else 0.0
            hi = float(finite.max()) if len(finite) else 1.0
            yr = hi - lo
            ys_n = np.where(np.isfinite(ys), (ys - lo) / (yr if yr else 1.0) * px, 0.0)
            mask, tolerance = simplify_to_budget(
                xs, ys_n, CHART_TOLERANCE_PX, min(CHART_POINT_BUDGET, 2 * px)
            )
            timestamps = timestamps[mask]
            values = values[mask]
        try:
            stats = summarize(ts)
        except EmptySeries:
            stats = None
        return {
            "attr": str(ts.attr),
            "timestamps": timestamps.tolist(),
            "values": _column_to_wire(np.asarray(values)),
            "total_points": len(ts),
            "tolerance_px": tolerance,
            "stats": _stats_json(stats),
        }

    @app.get("/logs/{session_id}/trajectory")
    def trajectory(
        session_id: str,
        layer: str = "recorded",
        attr: str | None = None,
        start: str | None = None,
        end: str | None = None,
    ) -> dict:
        session = session_or_404(session_id)
        resolved = session.hierarchy.layer(layer)
        if resolved is None:
            raise HTTPException(404, f"layer {layer!r} not present in this log")
        try:
            traj = build_trajectory(session.log, resolved)
        except NoPosition as exc:
            raise HTTPException(404, str(exc)) from exc
        if len(traj) < 2:
            empty = _segments_json([], None)
            empty["inside"] = []
            return {"layer": layer, "attr": attr, "domain": None, "segments": empty}
        segs = segments(traj)
        scale = None
        if attr is not None:
            ref = attr_or_404(attr)
            try:
                full = get_series(session.log, ref)
            except UnknownAttribute as exc:
                raise HTTPException(404, str(exc)) from exc
            segs = align_attribute(segs, full)
            # color domain spans the whole flight so brushing keeps hues
            # comparable
            finite = np.asarray(full.values, dtype=np.float64)
            finite = finite[np.isfinite(finite)]
            if len(finite) and float(finite.min()) < float(finite.max()):
                scale = make_scale(
                    "sequential", (float(finite.min()), float(finite.max()))
                )
        window = _parse_window(start, end)
        inside_flags = [True] * len(segs)
        if window is not None:
            inside, _ = split_by_window(segs, window)
            inside_ids = {id(s) for s in inside}
            inside_flags = [id(s) in inside_ids for s in segs]
        body = _segments_json(segs, scale)
        body["inside"] = inside_flags
        return {
            "layer": layer,
            "attr": attr,
            "domain": list(scale.domain) if scale else None,
            "segments": body,
        }

    @app.get("/logs/{session_id}/events")
    def events(session_id: str) -> list:
        session = session_or_404(session_id)
        return [
            {
                "timestamp_us": e.timestamp_us,
                "kind": e.kind,
                "label": e.label,
                "category_index": e.category_index,
            }
            for e in extract_events(session.log, model_config)
        ]

    @app.get("/logs/{session_id}/overview")
    def overview(session_id: str) -> list:
        session = session_or_404(session_id)
        specs = resolve_profile(profile, session.log)
        return [
            {
                "title": s.title,
                "series": [str(r) for r in s.series],
                "render_as": s.render_as,
                "constants": {k: _json_num(v) for k, v in s.constants.items()},
                "unit": s.unit,
            }
            for s in specs
        ]

    @app.get("/logs/{session_id}/export.geojson")
    def geojson(
        session_id: str,
        attr: str | None = None,
        start: str | None = None,
        end: str | None = None,
    ) -> Response:
        import json

        session = session_or_404(session_id)
        ref = attr_or_404(attr) if attr else None
        window = _parse_window(start, end)
        try:
            doc = export_geojson(session.log, session.hierarchy, ref, window)
        except (NoPosition, UnknownAttribute) as exc:
            raise HTTPException(404, str(exc)) from exc
        return Response(
            json.dumps(doc, separators=(",", ":")),
            media_type="application/geo+json",
        )

    return app


def _json_num(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _stats_json(stats: dict | None) -> dict | None:
    if stats is None:
        return None
    return {k: _json_num(v) for k, v in stats.items()}


def _meta_json(session: Session) -> dict:
    m = session.meta
    return {
        "duration_us": m.duration_us,
        "reference_lat": m.reference_lat,
        "reference_lon": m.reference_lon,
        "message_count": m.message_count,
        "attribute_count": m.attribute_count,
        "truncated": m.truncated,
        "start_boot_us": session.log.start_boot_us,
        "layers": [
            name
            for name in ("recorded", "estimated", "setpoints")
            if session.hierarchy.layer(name) is not None
        ],
        "warnings": list(session.log.warnings),
    }


def _segments_json(segs, scale) -> dict:
    out = {
        "t_start_us": [s.t_start_us for s in segs],
        "t_end_us": [s.t_end_us for s in segs],
        "lat0": [s.p_start.lat for s in segs],
        "lon0": [s.p_start.lon for s in segs],
        "lat1": [s.p_end.lat for s in segs],
        "lon1": [s.p_end.lon for s in segs],
        "alt0": _nan_to_none([s.p_start.alt_m for s in segs]),
        "value": _nan_to_none([s.value for s in segs]),
    }
    if scale is not None:
        out["color"] = [map_value(scale, s.value) for s in segs]
    return out
