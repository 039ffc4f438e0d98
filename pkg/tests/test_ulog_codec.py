"""ULog decoder unit tests: header validation, framing, salvage rules,
schema handling, and equivalence against the sequential oracle decoder."""

import struct

import numpy as np
import pytest

import ulog_oracle
from sample_flights import dirty_log
from ulog_encoder import MAGIC, LogBuilder
from ulogview import list_messages, parse_log, validate_header
from ulogview.errors import MalformedHeader, SchemaViolation, TruncatedBody


def minimal_header(version=1, boot_us=0):
    return MAGIC + bytes([version]) + struct.pack("<Q", boot_us)


class TestValidateHeader:
    def test_empty_input(self):
        with pytest.raises(MalformedHeader):
            validate_header(b"")

    def test_minimal_valid_header(self):
        assert validate_header(minimal_header(1, 0)) == (1, 0)

    def test_boot_timestamp_decoded(self):
        assert validate_header(minimal_header(1, 123_456_789)) == (1, 123_456_789)

    def test_wrong_magic(self):
        data = b"NOTULOG!" + bytes(8)
        with pytest.raises(MalformedHeader):
            validate_header(data)

    def test_truncated_header(self):
        with pytest.raises(MalformedHeader):
            validate_header(MAGIC + b"\x01\x00\x00")

    def test_header_ok_but_body_truncated(self):
        b = LogBuilder(boot_us=5)
        b.add_format("cpuload:uint64_t timestamp;float load")
        data = b.build()[:-4]
        assert validate_header(data) == (1, 5)
        log = parse_log(data)
        assert log.truncated


class TestParseLog:
    def test_definitions_only_log(self):
        b = LogBuilder()
        b.add_format("cpuload:uint64_t timestamp;float load")
        log = parse_log(b.build())
        assert log.series == {}
        assert not log.truncated

    def test_minimal_two_record_series(self):
        b = LogBuilder(boot_us=100)
        b.add_format("cpuload:uint64_t timestamp;float load")
        mid = b.subscribe("cpuload")
        b.data(mid, {"timestamp": 1000, "load": 0.25})
        b.data(mid, {"timestamp": 2000, "load": 0.5})
        log = parse_log(b.build())
        s = log.series[("cpuload", 0)]
        assert s.timestamps.tolist() == [1000, 2000]
        assert s.columns["load"].tolist() == [0.25, 0.5]

    def test_truncated_mid_record_salvages(self):
        b = LogBuilder()
        b.add_format("cpuload:uint64_t timestamp;float load")
        mid = b.subscribe("cpuload")
        b.data(mid, {"timestamp": 1000, "load": 1.0})
        b.data(mid, {"timestamp": 2000, "load": 2.0})
        data = b.build()[:-5]
        log = parse_log(data)
        assert log.truncated
        assert len(log.series[("cpuload", 0)]) == 1
        with pytest.raises(TruncatedBody):
            parse_log(data, strict=True)

    def test_record_length_mismatch_raises(self):
        b = LogBuilder()
        b.add_format("cpuload:uint64_t timestamp;float load")
        mid = b.subscribe("cpuload")
        b.raw_data(mid, struct.pack("<Qfi", 1000, 1.0, 7))  # 4 bytes too long
        with pytest.raises(SchemaViolation):
            parse_log(b.build())

    def test_trailing_padding_both_forms_accepted(self):
        defn = "pose:uint64_t timestamp;float x;uint8_t[3] _padding0"
        for keep in (False, True):
            b = LogBuilder()
            b.add_format(defn)
            mid = b.subscribe("pose")
            b.data(mid, {"timestamp": 10, "x": 1.0}, keep_trailing_padding=keep)
            log = parse_log(b.build())
            s = log.series[("pose", 0)]
            assert list(s.columns) == ["timestamp", "x"]
            assert s.columns["x"].tolist() == [1.0]

    def test_mixed_record_lengths_raise(self):
        defn = "pose:uint64_t timestamp;float x;uint8_t[3] _padding0"
        b = LogBuilder()
        b.add_format(defn)
        mid = b.subscribe("pose")
        b.data(mid, {"timestamp": 10, "x": 1.0}, keep_trailing_padding=True)
        b.data(mid, {"timestamp": 20, "x": 2.0}, keep_trailing_padding=False)
        with pytest.raises(SchemaViolation):
            parse_log(b.build())

    def test_unknown_record_types_skipped(self):
        b = LogBuilder()
        b.add_format("cpuload:uint64_t timestamp;float load")
        b.record("z", b"\x01\x02\x03")
        b.record("Y", b"")
        log = parse_log(b.build())
        assert any("unknown type" in w for w in log.warnings)

    def test_data_without_subscription_warns(self):
        b = LogBuilder()
        b.add_format("cpuload:uint64_t timestamp;float load")
        b.raw_data(99, struct.pack("<Qf", 1000, 1.0))
        log = parse_log(b.build())
        assert any("without an active subscription" in w for w in log.warnings)

    def test_subscription_without_format_skipped(self):
        b = LogBuilder()
        b.record("A", struct.pack("<BH", 0, 3) + b"ghost_message")
        log = parse_log(b.build())
        assert log.series == {}
        assert any("ghost_message" in w for w in log.warnings)

    def test_format_without_timestamp_skipped(self):
        b = LogBuilder()
        b.add_format("oddball:float x;float y")
        b.subscribe("oddball")
        log = parse_log(b.build())
        assert ("oddball", 0) not in log.series
        assert any("timestamp" in w for w in log.warnings)

    def test_nested_types_flatten_with_dots(self):
        b = LogBuilder()
        b.add_format("inner:float a;float b")
        b.add_format("outer:uint64_t timestamp;inner one;inner[2] many")
        mid = b.subscribe("outer")
        b.data(mid, {
            "timestamp": 5, "one.a": 1.0, "one.b": 2.0,
            "many[0].a": 3.0, "many[0].b": 4.0,
            "many[1].a": 5.0, "many[1].b": 6.0,
        })
        log = parse_log(b.build())
        s = log.series[("outer", 0)]
        assert list(s.columns) == [
            "timestamp", "one.a", "one.b",
            "many[0].a", "many[0].b", "many[1].a", "many[1].b",
        ]
        assert s.columns["many[1].b"].tolist() == [6.0]

    def test_multi_instance_series_are_distinct(self):
        b = LogBuilder()
        b.add_format("cpuload:uint64_t timestamp;float load")
        m0 = b.subscribe("cpuload", multi_id=0)
        m1 = b.subscribe("cpuload", multi_id=1)
        b.data(m0, {"timestamp": 1, "load": 0.1})
        b.data(m1, {"timestamp": 2, "load": 0.9})
        b.data(m1, {"timestamp": 3, "load": 0.8})
        log = parse_log(b.build())
        assert len(log.series[("cpuload", 0)]) == 1
        assert len(log.series[("cpuload", 1)]) == 2

    def test_unsubscription_orphans_later_records(self):
        b = LogBuilder()
        b.add_format("cpuload:uint64_t timestamp;float load")
        mid = b.subscribe("cpuload")
        b.data(mid, {"timestamp": 1, "load": 0.1})
        b.unsubscribe(mid)
        b.raw_data(mid, struct.pack("<Qf", 2, 0.2))
        log = parse_log(b.build())
        assert len(log.series[("cpuload", 0)]) == 1
        assert any("without an active subscription" in w for w in log.warnings)

    def test_unsupported_incompat_flag_rejected(self):
        b = LogBuilder(with_flags=False)
        payload = bytes(8) + bytes([0x02]) + bytes(7) + bytes(24)
        data = minimal_header() + struct.pack("<HB", len(payload), ord("B")) + payload
        with pytest.raises(MalformedHeader):
            parse_log(data)

    def test_nan_and_inf_preserved(self):
        b = LogBuilder()
        b.add_format("cpuload:uint64_t timestamp;float load")
        mid = b.subscribe("cpuload")
        for i, v in enumerate([float("nan"), float("inf"), -float("inf")]):
            b.data(mid, {"timestamp": i, "load": v})
        log = parse_log(b.build())
        col = log.series[("cpuload", 0)].columns["load"]
        assert np.isnan(col[0]) and np.isposinf(col[1]) and np.isneginf(col[2])

    def test_determinism(self, dirty):
        data, _ = dirty
        a = parse_log(data)
        b = parse_log(data)
        assert list(a.series) == list(b.series)
        for key in a.series:
            sa, sb = a.series[key], b.series[key]
            assert np.array_equal(sa.timestamps, sb.timestamps)
            for name in sa.columns:
                va, vb = sa.columns[name], sb.columns[name]
                assert va.dtype == vb.dtype
                assert np.array_equal(va.view(np.uint8), vb.view(np.uint8))
        assert a.warnings == b.warnings

    def test_immutability(self, mission_parsed):
        log = mission_parsed
        s = next(iter(log.series.values()))
        with pytest.raises(ValueError):
            s.timestamps[0] = 0
        with pytest.raises(TypeError):
            log.series["x"] = None


class TestListMessages:
    def test_empty_log(self):
        log = parse_log(minimal_header())
        assert list_messages(log) == []

    def test_sort_contract(self):
        b = LogBuilder()
        b.add_format("bbb:uint64_t timestamp;float v")
        b.add_format("aaa:uint64_t timestamp;float v")
        mb = b.subscribe("bbb", multi_id=0)
        ma1 = b.subscribe("aaa", multi_id=1)
        ma0 = b.subscribe("aaa", multi_id=0)
        for m in (mb, ma1, ma0):
            b.data(m, {"timestamp": 1, "v": 0.0})
        names = [(n, i) for n, i, _, _ in list_messages(parse_log(b.build()))]
        assert names == [("aaa", 0), ("aaa", 1), ("bbb", 0)]


class TestOracleEquivalence:
    def test_mission_log(self, mission, mission_parsed):
        ulog_oracle.assert_equivalent(mission_parsed, ulog_oracle.decode(mission[0]))

    def test_rc_loss_log(self, rc_loss, rc_loss_parsed):
        ulog_oracle.assert_equivalent(rc_loss_parsed, ulog_oracle.decode(rc_loss[0]))

    def test_dirty_log(self, dirty):
        data, _ = dirty
        ulog_oracle.assert_equivalent(parse_log(data), ulog_oracle.decode(data))

    def test_dirty_log_expectations(self, dirty):
        data, exp = dirty
        log = parse_log(data)
        gps = log.series[("vehicle_gps_position", 0)]
        assert len(gps) == exp["gps_count"]
        # appended-data section decoded, straddling record discarded
        assert gps.timestamps[-1] == 6_000_000
        # stable sort restored monotonicity
        assert np.all(np.diff(gps.timestamps.astype(np.int64)) >= 0)
        assert len(log.series[("battery_status", 0)]) == 0


def test_column_alignment_holds_everywhere(mission_parsed):
    for s in mission_parsed.series.values():
        for col in s.columns.values():
            assert len(col) == len(s.timestamps)


def test_dirty_log_triggers_every_salvage_warning():
    data, _ = dirty_log()
    log = parse_log(data)
    text = "\n".join(log.warnings)
    assert "out-of-order" in text
    assert "unknown type" in text
    assert "dropout" in text
