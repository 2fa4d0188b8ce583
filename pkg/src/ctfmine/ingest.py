"""Raw log ingestion.

Reads cyber-range telemetry from JSONL (native) or CSV (positional
fallback) into validated ``RawEvent`` streams. Malformed records are
reported as warnings with 1-based line numbers, never dropped silently.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import IO, Iterable, Union

from .errors import EmptyLogError, ManifestError

GAME = "game"
BASH = "bash"
MSF = "msf"

TRAINING_RUN_STARTED = "TrainingRunStarted"
TASK_COMPLETED = "TaskCompleted"
WRONG_FLAG_SUBMITTED = "WrongFlagSubmitted"
HINT_TAKEN = "HintTaken"
SOLUTION_DISPLAYED = "SolutionDisplayed"

GAME_EVENTS = frozenset(
    {
        TRAINING_RUN_STARTED,
        TASK_COMPLETED,
        WRONG_FLAG_SUBMITTED,
        HINT_TAKEN,
        SOLUTION_DISPLAYED,
    }
)

JSONL_FIELDS = ("type", "event", "params", "timestamp", "trainee", "task")

Source = Union[bytes, bytearray, IO[bytes], IO[str], str]


@dataclass(frozen=True)
class RawEvent:
    """One telemetry record, canonicalized but not yet mapped."""

    event_type: str
    event: str
    parameters: tuple[str, ...]
    timestamp: datetime
    trainee: str
    task: str


@dataclass(frozen=True)
class SessionManifest:
    """Declared structure of one training session."""

    session_id: str
    game_id: str = ""
    puzzle_order: tuple[str, ...] = ()
    declared_trainees: tuple[str, ...] | None = None


@dataclass(frozen=True)
class ParseWarning:
    line: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}"


def parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 instant; naive values are taken as UTC.

    Precision is clamped to milliseconds, the resolution the log schema
    guarantees.
    """
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    ts = datetime.fromisoformat(text)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.replace(microsecond=(ts.microsecond // 1000) * 1000)


def format_timestamp(ts: datetime) -> str:
    return ts.isoformat(timespec="milliseconds")


def _canonicalize(event: str, params: list[str]) -> tuple[str, tuple[str, ...]]:
    # Composite labels like "HintTaken 41-1" carry parameters inside the
    # event field; split them out so promotion/demotion stays a policy choice.
    head, *tail = event.split()
    return head, tuple(tail) + tuple(params)


def _coerce_params(value: object) -> list[str] | None:
    if value is None:
        return []
    if isinstance(value, list):
        return [str(v) for v in value]
    return None


def _read_text(source: Source) -> str:
    if isinstance(source, (bytes, bytearray)):
        return bytes(source).decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _parse_jsonl_line(record: object) -> tuple[RawEvent | None, str | None]:
    if not isinstance(record, dict):
        return None, "record is not a JSON object"
    for key in ("type", "event", "timestamp", "trainee", "task"):
        if key not in record or record[key] is None:
            return None, f"missing field {key!r}"
    event_type = str(record["type"]).strip()
    event = str(record["event"]).strip()
    trainee = str(record["trainee"]).strip()
    task = str(record["task"]).strip()
    if not event_type:
        return None, "empty type"
    if not event:
        return None, "empty event"
    if not trainee:
        return None, "empty trainee"
    params = _coerce_params(record.get("params"))
    if params is None:
        return None, "params is not an array"
    try:
        ts = parse_timestamp(str(record["timestamp"]))
    except ValueError:
        return None, f"bad timestamp {record['timestamp']!r}"
    event, parameters = _canonicalize(event, params)
    if event_type == GAME and event not in GAME_EVENTS:
        return None, f"unknown game event {event!r}"
    return RawEvent(event_type, event, parameters, ts, trainee, task), None


def _parse_csv_row(row: list[str]) -> tuple[RawEvent | None, str | None]:
    if len(row) < 6:
        return None, f"expected 6 columns, got {len(row)}"
    event_type, event, params_cell, ts_cell, trainee, task = (c.strip() for c in row[:6])
    if not event_type:
        return None, "empty type"
    if not event:
        return None, "empty event"
    if not trainee:
        return None, "empty trainee"
    try:
        ts = parse_timestamp(ts_cell)
    except ValueError:
        return None, f"bad timestamp {ts_cell!r}"
    event, parameters = _canonicalize(event, params_cell.split())
    if event_type == GAME and event not in GAME_EVENTS:
        return None, f"unknown game event {event!r}"
    return RawEvent(event_type, event, parameters, ts, trainee, task), None


def parse_log(source: Source, fmt: str = "jsonl") -> tuple[list[RawEvent], list[ParseWarning]]:
    """Parse a raw log into events plus warnings for malformed records.

    Raises ``EmptyLogError`` when no record parses at all.
    """
    if fmt not in ("jsonl", "csv"):
        raise ValueError(f"unsupported log format {fmt!r}")
    text = _read_text(source)
    events: list[RawEvent] = []
    warnings: list[ParseWarning] = []
    if fmt == "jsonl":
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                warnings.append(ParseWarning(lineno, f"invalid JSON: {exc.msg}"))
                continue
            event, problem = _parse_jsonl_line(record)
            if event is None:
                warnings.append(ParseWarning(lineno, problem or "malformed record"))
            else:
                events.append(event)
    else:
        reader = csv.reader(io.StringIO(text))
        for lineno, row in enumerate(reader, start=1):
            if not row or all(not c.strip() for c in row):
                continue
            event, problem = _parse_csv_row(row)
            if event is None:
                warnings.append(ParseWarning(lineno, problem or "malformed record"))
            else:
                events.append(event)
    if not events:
        raise EmptyLogError("no parseable records in input", warnings)
    return events, warnings


def event_to_record(event: RawEvent) -> dict:
    """The native JSONL representation of one event."""
    return {
        "type": event.event_type,
        "event": event.event,
        "params": list(event.parameters),
        "timestamp": format_timestamp(event.timestamp),
        "trainee": event.trainee,
        "task": event.task,
    }


def write_jsonl(events: Iterable[RawEvent]) -> str:
    lines = [json.dumps(event_to_record(e), ensure_ascii=False) for e in events]
    return "\n".join(lines) + "\n" if lines else ""


def load_manifest(source: Source) -> SessionManifest:
    """Load and validate a session manifest document (JSON)."""
    text = _read_text(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ManifestError("manifest must be a JSON object")
    session_id = doc.get("session_id")
    if not session_id or not str(session_id).strip():
        raise ManifestError("manifest is missing session_id")
    order = doc.get("puzzle_order", [])
    if not isinstance(order, list):
        raise ManifestError("puzzle_order must be an array")
    puzzle_order = tuple(str(t) for t in order)
    if len(set(puzzle_order)) != len(puzzle_order):
        dupes = sorted({t for t in puzzle_order if puzzle_order.count(t) > 1})
        raise ManifestError(f"duplicate task ids in puzzle_order: {', '.join(dupes)}")
    trainees = doc.get("declared_trainees")
    declared: tuple[str, ...] | None
    if trainees is None:
        declared = None
    else:
        if not isinstance(trainees, list) or not trainees:
            raise ManifestError("declared_trainees, when present, must be a non-empty array")
        declared = tuple(str(t) for t in trainees)
    return SessionManifest(
        session_id=str(session_id),
        game_id=str(doc.get("game_id", "")),
        puzzle_order=puzzle_order,
        declared_trainees=declared,
    )


def manifest_to_record(manifest: SessionManifest) -> dict:
    doc: dict = {
        "session_id": manifest.session_id,
        "game_id": manifest.game_id,
        "puzzle_order": list(manifest.puzzle_order),
    }
    if manifest.declared_trainees is not None:
        doc["declared_trainees"] = list(manifest.declared_trainees)
    return doc


def derive_manifest(events: Iterable[RawEvent], session_id: str = "adhoc") -> SessionManifest:
    """Build a manifest from a log: tasks in first-appearance order."""
    seen: dict[str, None] = {}
    for event in events:
        seen.setdefault(event.task, None)
    return SessionManifest(session_id=session_id, puzzle_order=tuple(seen))
