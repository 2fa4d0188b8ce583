"""Unified data abstraction: raw events -> process-mining event log.

A ``MappingPolicy`` decides which event types enter the log, which
parameters are promoted into the activity label, and how timestamps are
normalized. The same raw stream can be re-mapped under different
policies without re-ingesting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from datetime import datetime, timedelta, timezone
from typing import Iterable, Mapping, Sequence

from .errors import EmptyLogError, PolicyError, PolicyMismatchError
from .ingest import GAME, BASH, MSF, HINT_TAKEN, RawEvent, SessionManifest

# Epoch that case starts are rebased onto under relative time.
EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)

ABSOLUTE = "absolute"
RELATIVE_PER_CASE = "relative_per_case"
TIME_MODES = (ABSOLUTE, RELATIVE_PER_CASE)


@dataclass(frozen=True)
class MappingPolicy:
    """Declarative conversion rules from raw events to activities.

    ``promote`` maps ``(event_type, event)`` to ordered parameter indices
    whose values are appended to the activity label; everything else is
    demoted into event attributes. ``pause_gap_cap`` is in seconds.
    """

    included_types: frozenset[str] = frozenset({GAME, BASH, MSF})
    promote: Mapping[tuple[str, str], tuple[int, ...]] = field(
        default_factory=lambda: {(GAME, HINT_TAKEN): (0,)}
    )
    task_prefix: bool = True
    time_mode: str = ABSOLUTE
    pause_gap_cap: float | None = None

    def validate(self) -> None:
        if not self.included_types:
            raise PolicyError("included_types must be non-empty")
        for key, selectors in self.promote.items():
            if not (isinstance(key, tuple) and len(key) == 2):
                raise PolicyError(f"promote key {key!r} is not (event_type, event)")
            if any(i < 0 for i in selectors):
                raise PolicyError(f"promote selectors for {key!r} must be >= 0")
        if self.time_mode not in TIME_MODES:
            raise PolicyError(f"unknown time_mode {self.time_mode!r}")
        if self.pause_gap_cap is not None and self.pause_gap_cap <= 0:
            raise PolicyError("pause_gap_cap must be > 0")


@dataclass(frozen=True)
class MappedEvent:
    """One event of a trace: the activity plus retained attributes.

    ``seq`` is the ingest sequence number; ``(time, seq)`` totally orders
    events within a case.
    """

    case_id: str
    activity: str
    time: datetime
    seq: int
    event_type: str
    event: str
    task: str
    params: tuple[str, ...]

    @property
    def order_key(self) -> tuple[datetime, int]:
        return (self.time, self.seq)


@dataclass
class EventLog:
    """Per-trainee ordered activity sequences plus their provenance."""

    traces: dict[str, list[MappedEvent]]
    manifest: SessionManifest
    policy: MappingPolicy

    def case_ids(self) -> list[str]:
        return sorted(self.traces)

    def event_count(self) -> int:
        return sum(len(t) for t in self.traces.values())

    def activities(self) -> set[str]:
        return {e.activity for trace in self.traces.values() for e in trace}

    def tasks(self) -> set[str]:
        return {e.task for trace in self.traces.values() for e in trace}


def activity_label(event: RawEvent, policy: MappingPolicy) -> tuple[str, tuple[str, ...]]:
    """Build the activity label and the demoted parameter tuple.

    Label grammar: ``{task}-{event}[ {promoted params}]`` with a single
    hyphen and single spaces; labels are compared across runs, so this is
    bit-exact.
    """
    selectors = policy.promote.get((event.event_type, event.event), ())
    promoted = [event.parameters[i] for i in selectors if i < len(event.parameters)]
    used = {i for i in selectors if i < len(event.parameters)}
    demoted = tuple(p for i, p in enumerate(event.parameters) if i not in used)
    label = event.event
    if promoted:
        label = label + " " + " ".join(promoted)
    if policy.task_prefix:
        label = f"{event.task}-{label}"
    return label, demoted


def apply_policy(
    events: Sequence[RawEvent],
    manifest: SessionManifest,
    policy: MappingPolicy | None = None,
) -> EventLog:
    """Map raw events into an event log under a policy.

    Events of excluded types are dropped (their ingest sequence numbers
    are preserved so logs from the same raw stream stay alignable).
    """
    policy = policy if policy is not None else MappingPolicy()
    policy.validate()
    traces: dict[str, list[MappedEvent]] = {}
    for seq, event in enumerate(events):
        if event.event_type not in policy.included_types:
            continue
        label, demoted = activity_label(event, policy)
        traces.setdefault(event.trainee, []).append(
            MappedEvent(
                case_id=event.trainee,
                activity=label,
                time=event.timestamp,
                seq=seq,
                event_type=event.event_type,
                event=event.event,
                task=event.task,
                params=demoted,
            )
        )
    if not traces:
        raise EmptyLogError("no events left after applying policy")
    for trace in traces.values():
        trace.sort(key=lambda e: e.order_key)
    log = EventLog(traces=traces, manifest=manifest, policy=policy)
    if policy.time_mode == RELATIVE_PER_CASE or policy.pause_gap_cap is not None:
        log = normalize_times(log, policy.time_mode, policy.pause_gap_cap)
    return log


def normalize_times(
    log: EventLog, mode: str = RELATIVE_PER_CASE, pause_gap_cap: float | None = None
) -> EventLog:
    """Rescale per-case timestamps; never reorders a trace.

    ``relative_per_case`` rebases each case's first event onto the epoch.
    With ``pause_gap_cap`` set, any within-case gap longer than the cap is
    replaced by exactly the cap, shifting later offsets accordingly.
    """
    if mode not in TIME_MODES:
        raise PolicyError(f"unknown time_mode {mode!r}")
    if pause_gap_cap is not None and pause_gap_cap <= 0:
        raise PolicyError("pause_gap_cap must be > 0")
    traces: dict[str, list[MappedEvent]] = {}
    for case_id, trace in log.traces.items():
        start = EPOCH if mode == RELATIVE_PER_CASE else trace[0].time
        rebased: list[MappedEvent] = []
        offset = 0.0
        for i, event in enumerate(trace):
            if i > 0:
                gap = (event.time - trace[i - 1].time).total_seconds()
                if pause_gap_cap is not None and gap > pause_gap_cap:
                    gap = pause_gap_cap
                offset += gap
            rebased.append(replace(event, time=start + timedelta(seconds=offset)))
        traces[case_id] = rebased
    policy = replace(log.policy, time_mode=mode, pause_gap_cap=pause_gap_cap)
    return EventLog(traces=traces, manifest=log.manifest, policy=policy)


def case_offsets(trace: Sequence[MappedEvent]) -> list[float]:
    """Seconds from the case start, for each event of one trace."""
    if not trace:
        return []
    start = trace[0].time
    return [(e.time - start).total_seconds() for e in trace]


@dataclass
class PolicyDiffReport:
    """Activity-set comparison between two mappings of one raw stream."""

    only_in_a: list[str]
    only_in_b: list[str]
    activity_count_a: int
    activity_count_b: int
    finer: str | None = None
    projection: dict[str, str] | None = None


def _promote_sets(policy: MappingPolicy) -> dict[tuple[str, str], frozenset[int]]:
    return {k: frozenset(v) for k, v in policy.promote.items() if v}


def diff_policies(log_a: EventLog, log_b: EventLog) -> PolicyDiffReport:
    """Compare two mappings of the same raw events.

    When one policy demotes a superset of the other's demotions, the
    report carries the label projection from the finer to the coarser
    mapping, derived by pairing events on (case, ingest sequence).
    """
    if log_a.manifest.session_id != log_b.manifest.session_id:
        raise PolicyMismatchError(
            "logs derive from different sessions: "
            f"{log_a.manifest.session_id!r} vs {log_b.manifest.session_id!r}"
        )
    acts_a = log_a.activities()
    acts_b = log_b.activities()
    report = PolicyDiffReport(
        only_in_a=sorted(acts_a - acts_b),
        only_in_b=sorted(acts_b - acts_a),
        activity_count_a=len(acts_a),
        activity_count_b=len(acts_b),
    )
    sets_a = _promote_sets(log_a.policy)
    sets_b = _promote_sets(log_b.policy)
    if sets_a == sets_b:
        return report
    keys = set(sets_a) | set(sets_b)
    a_finer = all(sets_b.get(k, frozenset()) <= sets_a.get(k, frozenset()) for k in keys)
    b_finer = all(sets_a.get(k, frozenset()) <= sets_b.get(k, frozenset()) for k in keys)
    if a_finer == b_finer:
        return report
    fine, coarse = (log_a, log_b) if a_finer else (log_b, log_a)
    report.finer = "a" if a_finer else "b"
    coarse_by_key = {
        (e.case_id, e.seq): e.activity for trace in coarse.traces.values() for e in trace
    }
    projection: dict[str, str] = {}
    for trace in fine.traces.values():
        for e in trace:
            target = coarse_by_key.get((e.case_id, e.seq))
            if target is not None:
                projection[e.activity] = target
    report.projection = projection
    return report


def policy_to_record(policy: MappingPolicy) -> dict:
    promote: dict[str, dict[str, list[int]]] = {}
    for (etype, event), selectors in sorted(policy.promote.items()):
        promote.setdefault(etype, {})[event] = list(selectors)
    return {
        "included_types": sorted(policy.included_types),
        "promote": promote,
        "task_prefix": policy.task_prefix,
        "time_mode": policy.time_mode,
        "pause_gap_cap": policy.pause_gap_cap,
    }


def policy_from_record(doc: object) -> MappingPolicy:
    if not isinstance(doc, dict):
        raise PolicyError("policy document must be a JSON object")
    known = {"included_types", "promote", "task_prefix", "time_mode", "pause_gap_cap"}
    unknown = set(doc) - known
    if unknown:
        raise PolicyError(f"unknown policy fields: {', '.join(sorted(unknown))}")
    types = doc.get("included_types", [GAME, BASH, MSF])
    if not isinstance(types, list) or not all(isinstance(t, str) for t in types):
        raise PolicyError("included_types must be an array of strings")
    promote_doc = doc.get("promote", {})
    if not isinstance(promote_doc, dict):
        raise PolicyError("promote must be an object: {event_type: {event: [indices]}}")
    promote: dict[tuple[str, str], tuple[int, ...]] = {}
    for etype, events in promote_doc.items():
        if not isinstance(events, dict):
            raise PolicyError(f"promote[{etype!r}] must be an object")
        for event, selectors in events.items():
            if not isinstance(selectors, list) or not all(
                isinstance(i, int) and not isinstance(i, bool) for i in selectors
            ):
                raise PolicyError(f"promote[{etype!r}][{event!r}] must be an array of integers")
            promote[(etype, event)] = tuple(selectors)
    cap = doc.get("pause_gap_cap")
    if cap is not None and not isinstance(cap, (int, float)):
        raise PolicyError("pause_gap_cap must be a number of seconds or null")
    policy = MappingPolicy(
        included_types=frozenset(types),
        promote=promote,
        task_prefix=bool(doc.get("task_prefix", True)),
        time_mode=str(doc.get("time_mode", ABSOLUTE)),
        pause_gap_cap=float(cap) if cap is not None else None,
    )
    policy.validate()
    return policy


def load_policy(source: bytes | str) -> MappingPolicy:
    text = source.decode("utf-8") if isinstance(source, (bytes, bytearray)) else source
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolicyError(f"policy is not valid JSON: {exc.msg}") from exc
    return policy_from_record(doc)
