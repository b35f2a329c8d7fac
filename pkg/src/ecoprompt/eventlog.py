"""Append-only JSONL event logs with snapshot compaction.

One file per entity (session or game).  Every state change appends one
line ``{"kind": ..., "ts": ..., "payload": ...}`` and flushes, so a crash
loses at most the line being written.  Rebuilding state means folding the
lines back in order.

When a log grows past the configured size it is compacted: the owner
serializes its full state into a single ``snapshot`` event and the file is
atomically replaced (write temp file, ``os.replace``) with just that line.
Replay then starts from the snapshot instead of the beginning of time.
"""
from __future__ import annotations

import json
import os
import time
from pathlib import Path


class EventLogError(ValueError):
    """A log line could not be parsed; `line_number` is 1-based."""

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number


class EventLog:
    """One entity's append-only JSONL file."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.line_count = 0
        if self.path.exists():
            with self.path.open("r", encoding="utf-8") as fh:
                self.line_count = sum(1 for line in fh if line.strip())

    def append(self, kind: str, payload: dict) -> None:
        record = {"kind": kind, "ts": time.time(), "payload": payload}
        line = json.dumps(record, sort_keys=True, separators=(",", ":"))
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        self.line_count += 1

    def read(self) -> list[dict]:
        """All events in order; raises EventLogError naming the bad line."""
        if not self.path.exists():
            return []
        events = []
        with self.path.open("r", encoding="utf-8") as fh:
            for number, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise EventLogError(
                        f"{self.path.name}: line {number} is not valid JSON: {exc}",
                        line_number=number,
                    ) from exc
                if not isinstance(record, dict) or "kind" not in record:
                    raise EventLogError(
                        f"{self.path.name}: line {number} is not an event object",
                        line_number=number,
                    )
                events.append(record)
        return events

    def compact(self, snapshot_payload: dict) -> None:
        """Atomically replace the whole log with one snapshot event."""
        record = {"kind": "snapshot", "ts": time.time(), "payload": snapshot_payload}
        line = json.dumps(record, sort_keys=True, separators=(",", ":"))
        tmp = self.path.with_suffix(".jsonl.tmp")
        with tmp.open("w", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self.path)
        self.line_count = 1


def scan_logs(directory: str | Path) -> list[tuple[str, EventLog]]:
    """(entity_id, log) for every .jsonl file in `directory`, sorted by id."""
    directory = Path(directory)
    if not directory.is_dir():
        return []
    found = []
    for path in sorted(directory.glob("*.jsonl")):
        found.append((path.stem, EventLog(path)))
    return found
