from __future__ import annotations

import json

import pytest

from ecoprompt.eventlog import EventLog, EventLogError, scan_logs


def test_append_and_read_round_trip(tmp_path):
    log = EventLog(tmp_path / "a.jsonl")
    log.append("created", {"id": "a", "n": 1})
    log.append("bump", {"value": 2.5, "flag": True, "none": None})
    events = log.read()
    assert [e["kind"] for e in events] == ["created", "bump"]
    assert events[0]["payload"] == {"id": "a", "n": 1}
    assert events[1]["payload"] == {"value": 2.5, "flag": True, "none": None}
    assert all("ts" in e for e in events)
    assert log.line_count == 2


def test_one_json_object_per_line(tmp_path):
    log = EventLog(tmp_path / "a.jsonl")
    log.append("x", {"k": "v"})
    log.append("y", {})
    lines = (tmp_path / "a.jsonl").read_text().splitlines()
    assert len(lines) == 2
    assert all(isinstance(json.loads(line), dict) for line in lines)


def test_missing_file_reads_empty(tmp_path):
    assert EventLog(tmp_path / "nope.jsonl").read() == []


def test_existing_file_counts_lines(tmp_path):
    path = tmp_path / "a.jsonl"
    log = EventLog(path)
    for i in range(3):
        log.append("x", {"i": i})
    assert EventLog(path).line_count == 3


def test_corrupt_line_error_names_the_line(tmp_path):
    path = tmp_path / "bad.jsonl"
    log = EventLog(path)
    log.append("ok", {})
    with path.open("a") as fh:
        fh.write("{not json\n")
    log.append("after", {})
    with pytest.raises(EventLogError) as e:
        EventLog(path).read()
    assert e.value.line_number == 2
    assert "line 2" in str(e.value)


def test_non_object_line_rejected(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('["array"]\n')
    with pytest.raises(EventLogError) as e:
        EventLog(path).read()
    assert e.value.line_number == 1


def test_compact_replaces_with_single_snapshot(tmp_path):
    path = tmp_path / "a.jsonl"
    log = EventLog(path)
    for i in range(10):
        log.append("x", {"i": i})
    log.compact({"state": "folded"})
    assert log.line_count == 1
    events = log.read()
    assert len(events) == 1
    assert events[0]["kind"] == "snapshot"
    assert events[0]["payload"] == {"state": "folded"}
    # appends continue after the snapshot
    log.append("x", {"i": 10})
    assert [e["kind"] for e in log.read()] == ["snapshot", "x"]
    assert not path.with_suffix(".jsonl.tmp").exists()


def test_scan_logs_lists_by_stem(tmp_path):
    EventLog(tmp_path / "b.jsonl").append("x", {})
    EventLog(tmp_path / "a.jsonl").append("x", {})
    found = scan_logs(tmp_path)
    assert [entity_id for entity_id, _ in found] == ["a", "b"]
    assert scan_logs(tmp_path / "missing") == []
