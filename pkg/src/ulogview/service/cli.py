"""Command line interface: local-run analysis and the HTTP server.

Exit codes: 1 for a file that cannot be parsed, 2 for an unknown
attribute / message / missing position data.
"""

from __future__ import annotations

import csv
import json
import sys

import click

from ..errors import FlightLogError, NoPosition, UnknownAttribute
from ..geo import export_geojson
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


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
        return parse_log(data)
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc}", err=True)
        sys.exit(1)
    except FlightLogError as exc:
        click.echo(f"error: cannot parse {path}: {exc}", err=True)
        sys.exit(1)


def _parse_window(text: str | None) -> TimeWindow | None:
    if not text:
        return None
    try:
        lo, _, hi = text.partition(":")
        return TimeWindow(int(lo), int(hi))
    except ValueError as exc:
        click.echo(f"error: bad window {text!r} (want START_US:END_US)", err=True)
        sys.exit(1)


def _out_stream(path: str | None):
    return open(path, "w", newline="") if path else sys.stdout


@click.group()
def main():
    """Post-flight analysis of ULog flight logs."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def info(file):
    """Summary of one log: duration, reference position, message list."""
    log = _load(file)
    cfg = load_model_config()
    meta = flight_meta(log, cfg)
    click.echo(f"version:     {log.version}")
    click.echo(f"duration:    {meta.duration_us / 1e6:.1f} s")
    if meta.reference_lat is not None:
        click.echo(f"reference:   {meta.reference_lat:.7f}, {meta.reference_lon:.7f}")
    else:
        click.echo("reference:   (no position fix)")
    click.echo(f"messages:    {meta.message_count}")
    click.echo(f"attributes:  {meta.attribute_count}")
    click.echo(f"events:      {len(extract_events(log, cfg))}")
    if meta.truncated:
        click.echo("note: file is truncated; decoded records were kept")
    for w in log.warnings:
        click.echo(f"warning: {w}")
    click.echo()
    for name, multi_id, count, schema in list_messages(log):
        suffix = f"[{multi_id}]" if multi_id else ""
        click.echo(f"  {name}{suffix}: {count} records, "
                   f"{len(schema.column_names())} columns")


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.argument("attr")
def summarize_cmd(file, attr):
    """Min / max / mean / counts for one attribute (message.field)."""
    log = _load(file)
    try:
        ref = AttributeRef.parse(attr)
        stats = summarize(get_series(log, ref))
    except (ValueError, UnknownAttribute) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except FlightLogError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    for key in ("min", "max", "mean", "count", "nan_count"):
        click.echo(f"{key}: {stats[key]}")


@main.command(name="export-csv")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.argument("message")
@click.option("--inst", default=0, show_default=True, help="Instance index.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write here instead of stdout.")
def export_csv(file, message, inst, out):
    """All columns of one message as CSV, one row per record."""
    log = _load(file)
    series = log.series.get((message, inst))
    if series is None:
        click.echo(f"error: no message {message!r} instance {inst}", err=True)
        sys.exit(2)
    stream = _out_stream(out)
    try:
        writer = csv.writer(stream)
        names = list(series.columns)
        writer.writerow(names)
        columns = [series.columns[n] for n in names]
        for i in range(len(series)):
            writer.writerow([col[i] for col in columns])
    finally:
        if out:
            stream.close()


@main.command(name="export-geojson")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--attr", default=None, help="Attribute aligned onto segments.")
@click.option("--window", "window_text", default=None, metavar="START_US:END_US",
              help="Keep samples inside this time window.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write here instead of stdout.")
def export_geojson_cmd(file, attr, window_text, out):
    """Trajectory layers as a GeoJSON FeatureCollection."""
    log = _load(file)
    hierarchy = extract_hierarchy(log, load_model_config())
    ref = None
    if attr:
        try:
            ref = AttributeRef.parse(attr)
        except ValueError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
    try:
        doc = export_geojson(log, hierarchy, ref, _parse_window(window_text))
    except (UnknownAttribute, NoPosition) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    stream = _out_stream(out)
    try:
        json.dump(doc, stream, separators=(",", ":"))
        if not out:
            stream.write("\n")
    finally:
        if out:
            stream.close()


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8630, show_default=True)
@click.option("--ttl", default=1800.0, show_default=True,
              help="Idle session eviction, seconds.")
@click.option("--upload-limit", default=256 * 1024 * 1024, show_default=True,
              help="Maximum upload size, bytes.")
@click.option("--hierarchy", "hierarchy_path", type=click.Path(exists=True),
              default=None, help="Hierarchy mapping config.")
@click.option("--modes", "modes_path", type=click.Path(exists=True),
              default=None, help="Flight mode table config.")
@click.option("--profile", "profile_path", type=click.Path(exists=True),
              default=None, help="Overview profile config.")
@click.option("--tile-url", default=None, help="XYZ tile URL template for clients.")
@click.option("--ui", "ui_path", type=click.Path(exists=True, file_okay=False),
              default=None, help="Serve a built browser UI from this directory.")
def serve(host, port, ttl, upload_limit, hierarchy_path, modes_path,
          profile_path, tile_url, ui_path):
    """Run the HTTP service (uploads are held in memory only)."""
    import uvicorn

    from .app import Settings, create_app

    settings = Settings.from_env()
    settings.ttl_seconds = ttl
    settings.upload_limit = upload_limit
    settings.background_sweeper = True
    if hierarchy_path:
        settings.hierarchy_path = hierarchy_path
    if modes_path:
        settings.modes_path = modes_path
    if profile_path:
        settings.profile_path = profile_path
    if tile_url:
        settings.tile_url = tile_url
    app = create_app(settings)
    if ui_path:
        from starlette.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_path, html=True), name="ui")
    uvicorn.run(app, host=host, port=port)


main.add_command(summarize_cmd, name="summarize")

if __name__ == "__main__":
    main()
