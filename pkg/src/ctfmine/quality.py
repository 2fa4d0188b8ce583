"""Data-quality audit of mapped logs: noise, incompleteness and
timestamp anomalies. Auditing never fails on bad data; bad data is its
output."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .ingest import GAME, TASK_COMPLETED, TRAINING_RUN_STARTED, SessionManifest
from .mapping import EventLog, MappedEvent

UNFINISHED_CASE = "unfinished_case"
MISSING_START = "missing_start"
EMPTY_CASE = "empty_case"
TIMESTAMP_REGRESSION = "timestamp_regression"
SAME_INSTANT_COLLISION = "same_instant_collision"
TASK_ORDER_VIOLATION = "task_order_violation"
SUSPECTED_PAUSE = "suspected_pause"
COVERAGE_GAP = "coverage_gap"

FINDING_KINDS = (
    UNFINISHED_CASE,
    MISSING_START,
    EMPTY_CASE,
    TIMESTAMP_REGRESSION,
    SAME_INSTANT_COLLISION,
    TASK_ORDER_VIOLATION,
    SUSPECTED_PAUSE,
    COVERAGE_GAP,
)

SEVERITIES = ("info", "warning", "error")

# 30 minutes of intra-session inactivity is anomalous for in-class runs.
DEFAULT_PAUSE_THRESHOLD = 30.0 * 60.0


@dataclass(frozen=True)
class EventRef:
    """Locator for an offending event."""

    case_id: str
    seq: int
    activity: str
    time: str


@dataclass(frozen=True)
class Finding:
    kind: str
    severity: str
    message: str
    case_id: str | None = None
    task: str | None = None
    evidence: tuple[EventRef, ...] = ()


@dataclass
class QualityReport:
    findings: list[Finding] = field(default_factory=list)

    def by_severity(self, severity: str) -> list[Finding]:
        return [f for f in self.findings if f.severity == severity]

    def has_errors(self) -> bool:
        return any(f.severity == "error" for f in self.findings)


def _ref(event: MappedEvent) -> EventRef:
    return EventRef(
        case_id=event.case_id,
        seq=event.seq,
        activity=event.activity,
        time=event.time.isoformat(timespec="milliseconds"),
    )


def _audit_case(
    case_id: str,
    trace: Sequence[MappedEvent],
    manifest: SessionManifest,
    pause_threshold: float,
) -> list[Finding]:
    findings: list[Finding] = []
    if not trace:
        findings.append(
            Finding(EMPTY_CASE, "warning", "case has no events", case_id=case_id)
        )
        return findings

    game_events = [e for e in trace if e.event_type == GAME]
    if not any(e.event == TRAINING_RUN_STARTED for e in game_events):
        findings.append(
            Finding(
                MISSING_START,
                "warning",
                "case has no TrainingRunStarted event",
                case_id=case_id,
            )
        )

    # Finished means the last game event is the completion of the final
    # declared task; a trailing solution-display loop leaves a case
    # unfinished even when a completion event exists somewhere before it.
    if manifest.puzzle_order:
        final_task = manifest.puzzle_order[-1]
        last_game = game_events[-1] if game_events else None
        finished = (
            last_game is not None
            and last_game.event == TASK_COMPLETED
            and last_game.task == final_task
        )
        if not finished:
            evidence = (_ref(last_game),) if last_game is not None else ()
            findings.append(
                Finding(
                    UNFINISHED_CASE,
                    "warning",
                    f"case does not end with completion of final task {final_task!r}",
                    case_id=case_id,
                    task=final_task,
                    evidence=evidence,
                )
            )

    by_seq = sorted(trace, key=lambda e: e.seq)
    for prev, cur in zip(by_seq, by_seq[1:]):
        if cur.time < prev.time:
            findings.append(
                Finding(
                    TIMESTAMP_REGRESSION,
                    "error",
                    "timestamp decreases against ingest order (clock skew?)",
                    case_id=case_id,
                    task=cur.task,
                    evidence=(_ref(prev), _ref(cur)),
                )
            )

    for prev, cur in zip(trace, trace[1:]):
        if cur.time == prev.time:
            findings.append(
                Finding(
                    SAME_INSTANT_COLLISION,
                    "info",
                    "two events share the same millisecond",
                    case_id=case_id,
                    task=cur.task,
                    evidence=(_ref(prev), _ref(cur)),
                )
            )
        gap = (cur.time - prev.time).total_seconds()
        if gap > pause_threshold:
            findings.append(
                Finding(
                    SUSPECTED_PAUSE,
                    "info",
                    f"gap of {gap:.0f}s exceeds pause threshold {pause_threshold:.0f}s",
                    case_id=case_id,
                    task=cur.task,
                    evidence=(_ref(prev), _ref(cur)),
                )
            )

    order = {task: i for i, task in enumerate(manifest.puzzle_order)}
    best = -1
    for e in trace:
        rank = order.get(e.task)
        if rank is None:
            continue
        if rank < best:
            findings.append(
                Finding(
                    TASK_ORDER_VIOLATION,
                    "warning",
                    f"event of task {e.task!r} appears after a later task",
                    case_id=case_id,
                    task=e.task,
                    evidence=(_ref(e),),
                )
            )
            break
        best = max(best, rank)
    return findings


def audit(
    log: EventLog,
    manifest: SessionManifest | None = None,
    pause_threshold: float = DEFAULT_PAUSE_THRESHOLD,
) -> QualityReport:
    """Audit a mapped log against the known data pathologies.

    Read-only and deterministic: findings are ordered by case, then task,
    then kind.
    """
    manifest = manifest if manifest is not None else log.manifest
    findings: list[Finding] = []
    for case_id in sorted(log.traces):
        findings.extend(_audit_case(case_id, log.traces[case_id], manifest, pause_threshold))
    if manifest.declared_trainees:
        for trainee in manifest.declared_trainees:
            if trainee not in log.traces:
                findings.append(
                    Finding(
                        COVERAGE_GAP,
                        "warning",
                        "declared trainee has no events",
                        case_id=trainee,
                    )
                )
    findings.sort(
        key=lambda f: (
            f.case_id or "",
            f.task or "",
            FINDING_KINDS.index(f.kind),
            f.evidence[0].seq if f.evidence else -1,
        )
    )
    return QualityReport(findings=findings)


def completeness_summary(report: QualityReport) -> dict[str, dict[str, int]]:
    """Exact counts per finding kind and per severity."""
    by_kind = {kind: 0 for kind in FINDING_KINDS}
    by_severity = {severity: 0 for severity in SEVERITIES}
    for finding in report.findings:
        by_kind[finding.kind] += 1
        by_severity[finding.severity] += 1
    return {"by_kind": by_kind, "by_severity": by_severity}
