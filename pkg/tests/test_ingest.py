from __future__ import annotations

import json
from datetime import datetime, timezone

import pytest

from ctfmine import EmptyLogError, ManifestError, RawEvent, parse_log, write_jsonl
from ctfmine.ingest import derive_manifest, event_to_record, load_manifest
from conftest import SNIPPET_CSV, SNIPPET_JSONL


def test_jsonl_snippet_parses_field_for_field():
    events, warnings = parse_log(SNIPPET_JSONL)
    assert warnings == []
    assert len(events) == 4
    first = events[0]
    assert first.event_type == "game"
    assert first.event == "HintTaken"
    assert first.parameters == ("41-1",)
    assert first.timestamp == datetime(2020, 5, 14, 10, 16, 11, tzinfo=timezone.utc)
    assert first.trainee == "user 1"
    assert first.task == "41"
    nmap = events[3]
    assert (nmap.event_type, nmap.event) == ("bash", "nmap")
    assert nmap.parameters == ("-sL", "10.1.26.9:5050")


def test_csv_snippet_matches_jsonl_snippet():
    from_jsonl, _ = parse_log(SNIPPET_JSONL)
    from_csv, warnings = parse_log(SNIPPET_CSV, fmt="csv")
    assert warnings == []
    assert from_csv == from_jsonl


def test_empty_input_raises_empty_log_error():
    with pytest.raises(EmptyLogError):
        parse_log(b"")


def test_all_malformed_raises_empty_log_error_with_warnings():
    with pytest.raises(EmptyLogError) as excinfo:
        parse_log(b"not json\n{broken\n")
    assert len(excinfo.value.warnings) == 2


def test_malformed_records_warn_with_line_numbers():
    lines = SNIPPET_JSONL.splitlines()
    lines.insert(1, '{"type": "game", "event": "HintTaken"}')
    lines.append('{"type": "game", "event": "NoSuchGameEvent", "params": [], '
                 '"timestamp": "2020-05-14T10:33:00+00:00", "trainee": "user 1", "task": "41"}')
    events, warnings = parse_log("\n".join(lines))
    assert len(events) == 4
    assert [w.line for w in warnings] == [2, 6]
    assert "missing field" in warnings[0].message
    assert "unknown game event" in warnings[1].message


def test_record_counts_are_conserved():
    lines = SNIPPET_JSONL.splitlines() + ["garbage"] * 3
    events, warnings = parse_log("\n".join(lines))
    assert len(events) + len(warnings) == len(lines)


def test_unknown_event_types_pass_through():
    line = json.dumps(
        {
            "type": "webcam",
            "event": "SnapshotTaken",
            "params": [],
            "timestamp": "2020-05-14T10:00:00+00:00",
            "trainee": "user 9",
            "task": "41",
        }
    )
    events, warnings = parse_log(line)
    assert warnings == []
    assert events[0].event_type == "webcam"


def test_roundtrip_is_lossless():
    events, _ = parse_log(SNIPPET_JSONL)
    again, warnings = parse_log(write_jsonl(events))
    assert warnings == []
    assert again == events


def test_canonicalization_is_idempotent():
    events, _ = parse_log(SNIPPET_JSONL)
    once = write_jsonl(events)
    twice, _ = parse_log(once)
    assert write_jsonl(twice) == once


def test_composite_event_splits_at_first_whitespace():
    record = {
        "type": "msf",
        "event": "exploit -j now",
        "params": ["extra"],
        "timestamp": "2020-05-14T10:00:00+00:00",
        "trainee": "u",
        "task": "41",
    }
    events, _ = parse_log(json.dumps(record))
    assert events[0].event == "exploit"
    assert events[0].parameters == ("-j", "now", "extra")


def test_timestamps_clamped_to_millisecond_precision():
    record = {
        "type": "bash",
        "event": "ls",
        "params": [],
        "timestamp": "2020-05-14T10:00:00.123456+00:00",
        "trainee": "u",
        "task": "41",
    }
    events, _ = parse_log(json.dumps(record))
    assert events[0].timestamp.microsecond == 123000
    assert event_to_record(events[0])["timestamp"] == "2020-05-14T10:00:00.123+00:00"


def test_zulu_offset_accepted():
    record = {
        "type": "bash",
        "event": "ls",
        "params": [],
        "timestamp": "2020-05-14T10:00:00Z",
        "trainee": "u",
        "task": "41",
    }
    events, _ = parse_log(json.dumps(record))
    assert events[0].timestamp == datetime(2020, 5, 14, 10, 0, 0, tzinfo=timezone.utc)


def test_unsupported_format_rejected():
    with pytest.raises(ValueError):
        parse_log(SNIPPET_JSONL, fmt="xml")


def test_load_manifest_preserves_order():
    doc = {"session_id": "s1", "game_id": "g", "puzzle_order": [41, 42, 43, 44, "info"]}
    manifest = load_manifest(json.dumps(doc))
    assert manifest.puzzle_order == ("41", "42", "43", "44", "info")
    assert manifest.declared_trainees is None


def test_load_manifest_rejects_duplicates():
    doc = {"session_id": "s1", "puzzle_order": ["41", "41"]}
    with pytest.raises(ManifestError):
        load_manifest(json.dumps(doc))


def test_load_manifest_requires_session_id():
    with pytest.raises(ManifestError):
        load_manifest(json.dumps({"puzzle_order": ["41"]}))


def test_load_manifest_rejects_empty_trainee_list():
    doc = {"session_id": "s1", "puzzle_order": ["41"], "declared_trainees": []}
    with pytest.raises(ManifestError):
        load_manifest(json.dumps(doc))


def test_derive_manifest_uses_first_appearance_order(snippet_events):
    shuffled = [snippet_events[2], snippet_events[0]]
    manifest = derive_manifest(shuffled + [
        RawEvent("bash", "ls", (), snippet_events[0].timestamp, "u", "info")
    ])
    assert manifest.puzzle_order == ("41", "info")
