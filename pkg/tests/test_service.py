"""HTTP service tests: sessions, querying, trajectory coloring, events,
isolation, determinism, and the no-disk-writes guarantee."""

import json
import threading

import pytest
from fastapi.testclient import TestClient

from geojson_schema import validate_geojson
from ulogview.colors import SEQUENTIAL_STOPS
from ulogview.service import SessionStore, Settings, create_app


@pytest.fixture(scope="module")
def client(mission):
    app = create_app(Settings(tile_url="https://tiles.example/{z}/{x}/{y}"))
    with TestClient(app) as c:
        yield c


@pytest.fixture(scope="module")
def sid(client, mission):
    r = client.post("/logs", content=mission[0])
    assert r.status_code == 200
    return r.json()["id"]


class TestOpenSession:
    def test_valid_upload_returns_id_and_meta(self, client, mission):
        r = client.post("/logs", content=mission[0])
        assert r.status_code == 200
        body = r.json()
        assert len(body["id"]) >= 32
        assert body["meta"]["message_count"] == 12
        assert body["meta"]["layers"] == ["recorded", "estimated", "setpoints"]

    def test_random_bytes_rejected_with_detail(self, client):
        r = client.post("/logs", content=b"\x00" * 64)
        assert r.status_code == 400
        assert "parse" in r.json()["detail"]

    def test_oversize_upload_rejected(self, mission):
        app = create_app(Settings(upload_limit=1024))
        with TestClient(app) as c:
            r = c.post("/logs", content=mission[0])
            assert r.status_code == 413

    def test_unknown_session_404(self, client):
        assert client.get("/logs/nope/meta").status_code == 404

    def test_expired_session_404(self, client, mission):
        r = client.post("/logs", content=mission[0])
        session_id = r.json()["id"]
        store: SessionStore = client.app.state.sessions
        base = store.clock
        store.clock = lambda: base() + store.ttl_seconds + 1
        try:
            assert client.get(f"/logs/{session_id}/meta").status_code == 404
        finally:
            store.clock = base


class TestSeriesEndpoint:
    def test_full_range_px0_is_exact(self, client, sid, mission_parsed):
        s = mission_parsed.series[("battery_status", 0)]
        r = client.get(f"/logs/{sid}/series",
                       params={"msg": "battery_status", "field": "remaining"})
        assert r.status_code == 200
        body = r.json()
        assert body["timestamps"] == s.timestamps.tolist()
        assert body["total_points"] == len(s)
        assert body["tolerance_px"] == 0.0

    def test_window_filters_inclusively(self, client, sid):
        r = client.get(f"/logs/{sid}/series", params={
            "msg": "battery_status", "field": "remaining",
            "start": 5_000_000, "end": 6_000_000,
        })
        ts = r.json()["timestamps"]
        assert ts and all(5_000_000 <= t <= 6_000_000 for t in ts)

    def test_pixel_budget_caps_points(self, client, sid):
        r = client.get(f"/logs/{sid}/series", params={
            "msg": "sensor_gyro", "field": "x", "px": 400,
        })
        body = r.json()
        assert body["total_points"] == 30_000
        assert len(body["timestamps"]) <= 800
        assert body["tolerance_px"] >= 0.25

    def test_unknown_attribute_404(self, client, sid):
        r = client.get(f"/logs/{sid}/series",
                       params={"msg": "battery_status", "field": "bogus"})
        assert r.status_code == 404

    def test_invalid_window_400(self, client, sid):
        r = client.get(f"/logs/{sid}/series", params={
            "msg": "battery_status", "field": "remaining",
            "start": "abc", "end": 10,
        })
        assert r.status_code == 400

    def test_nan_becomes_null(self, client, sid):
        r = client.get(f"/logs/{sid}/series",
                       params={"msg": "cpuload", "field": "load"})
        values = r.json()["values"]
        assert None in values  # the generator wrote a NaN stretch


class TestTrajectoryEndpoint:
    def test_color_domain_endpoints_hit_palette_ends(self, client, sid):
        r = client.get(f"/logs/{sid}/trajectory",
                       params={"attr": "battery_status.remaining"})
        body = r.json()
        colors = body["segments"]["color"]
        values = body["segments"]["value"]
        lo, hi = body["domain"]
        # segments carrying the domain extremes map to the palette ends
        vmin = min(v for v in values if v is not None)
        vmax = max(v for v in values if v is not None)
        assert colors[values.index(vmin)] == SEQUENTIAL_STOPS[0] or vmin > lo
        assert colors[values.index(vmax)] == SEQUENTIAL_STOPS[-1] or vmax < hi

    def test_segments_chain(self, client, sid):
        seg = client.get(f"/logs/{sid}/trajectory").json()["segments"]
        assert seg["lat1"][:-1] == seg["lat0"][1:]
        assert seg["lon1"][:-1] == seg["lon0"][1:]

    def test_window_marks_inside(self, client, sid):
        body = client.get(f"/logs/{sid}/trajectory", params={
            "start": 100_000_000, "end": 150_000_000,
        }).json()
        seg = body["segments"]
        flags = seg["inside"]
        assert any(flags) and not all(flags)
        for t, inside in zip(seg["t_start_us"], flags):
            assert inside == (100_000_000 <= t <= 150_000_000)

    def test_setpoint_layer(self, client, sid):
        body = client.get(f"/logs/{sid}/trajectory",
                          params={"layer": "setpoints"}).json()
        assert len(body["segments"]["t_start_us"]) > 0

    def test_unknown_layer_404(self, client, sid):
        r = client.get(f"/logs/{sid}/trajectory", params={"layer": "dreams"})
        assert r.status_code == 404


class TestEventsEndpoint:
    def test_mission_modes(self, client, sid):
        events = client.get(f"/logs/{sid}/events").json()
        modes = [e for e in events if e["kind"] == "flight_mode_change"]
        assert [m["label"] for m in modes] == ["Manual", "Mission", "Return", "Land"]

    def test_rc_loss_failsafe_event(self, rc_loss):
        app = create_app(Settings())
        with TestClient(app) as c:
            sid2 = c.post("/logs", content=rc_loss[0]).json()["id"]
            events = c.get(f"/logs/{sid2}/events").json()
        labels = [e["label"] for e in events if e["kind"] == "flight_mode_change"]
        assert "Descend" in labels


class TestOverviewEndpoint:
    def test_resolved_chartspecs(self, client, sid):
        specs = client.get(f"/logs/{sid}/overview").json()
        titles = [s["title"] for s in specs]
        assert "Altitude" in titles and "Roll" in titles
        for s in specs:
            assert s["series"], "no empty chart specs"
            assert s["render_as"] in ("chart", "constant")


class TestGeoJsonEndpoint:
    def test_schema_valid(self, client, sid):
        r = client.get(f"/logs/{sid}/export.geojson",
                       params={"attr": "vehicle_global_position.alt"})
        assert r.status_code == 200
        assert r.headers["content-type"].startswith("application/geo+json")
        validate_geojson(r.json())


class TestConfigEndpoint:
    def test_tile_url_forwarded(self, client):
        body = client.get("/config").json()
        assert body["tile_url"] == "https://tiles.example/{z}/{x}/{y}"


class TestIsolationAndDeterminism:
    def test_sessions_never_leak_across(self, mission, rc_loss):
        app = create_app(Settings())
        with TestClient(app) as c:
            id_a = c.post("/logs", content=mission[0]).json()["id"]
            id_b = c.post("/logs", content=rc_loss[0]).json()["id"]
            results = {}

            def worker(name, sid_, n):
                out = []
                for _ in range(n):
                    meta = c.get(f"/logs/{sid_}/meta").json()
                    msgs = c.get(f"/logs/{sid_}/messages").json()
                    out.append((meta["duration_us"], len(msgs)))
                results[name] = out

            threads = [
                threading.Thread(target=worker, args=("a", id_a, 20)),
                threading.Thread(target=worker, args=("b", id_b, 20)),
            ]
            for t in threads:
                t.start()
            for t in threads:
                t.join()
        assert len(set(results["a"])) == 1
        assert len(set(results["b"])) == 1
        assert results["a"][0] != results["b"][0]

    def test_identical_request_identical_bytes(self, client, sid):
        url = f"/logs/{sid}/series"
        params = {"msg": "sensor_gyro", "field": "x", "px": 300}
        a = client.get(url, params=params).content
        b = client.get(url, params=params).content
        assert a == b


def test_no_disk_writes(tmp_path, monkeypatch, mission, rc_loss):
    """A full service interaction must leave the filesystem unchanged."""
    import tempfile
    from pathlib import Path

    from fs_snapshot import fs_snapshot, snapshot_diff

    scratch = tmp_path / "scratch-tmp"
    scratch.mkdir()
    monkeypatch.setenv("TMPDIR", str(scratch))
    monkeypatch.setattr(tempfile, "tempdir", str(scratch))

    repo = Path(__file__).resolve().parent.parent
    before = fs_snapshot(repo, scratch)

    app = create_app(Settings())
    with TestClient(app) as c:
        sid_ = c.post("/logs", content=mission[0]).json()["id"]
        c.post("/logs", content=rc_loss[0])
        c.get(f"/logs/{sid_}/meta")
        c.get(f"/logs/{sid_}/messages")
        c.get(f"/logs/{sid_}/series",
              params={"msg": "sensor_gyro", "field": "x", "px": 500})
        c.get(f"/logs/{sid_}/trajectory",
              params={"attr": "battery_status.remaining"})
        c.get(f"/logs/{sid_}/events")
        c.get(f"/logs/{sid_}/overview")
        c.get(f"/logs/{sid_}/export.geojson")

    after = fs_snapshot(repo, scratch)
    assert snapshot_diff(before, after) == {}
    assert list(scratch.iterdir()) == []
