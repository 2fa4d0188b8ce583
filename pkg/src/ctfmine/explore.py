"""Complexity-taming analysis: type filtering, puzzle fragmentation,
per-puzzle metrics, and the session overview used for drill-down."""

from __future__ import annotations

from dataclasses import dataclass, fields
from statistics import median
from typing import Iterable, Sequence

from .discovery import Dfg, HeuristicNet, build_traces, discover_dfg, discover_heuristic_net
from .errors import UnknownMetricError, UnknownTaskError
from .ingest import (
    GAME,
    HINT_TAKEN,
    SOLUTION_DISPLAYED,
    TASK_COMPLETED,
    WRONG_FLAG_SUBMITTED,
    SessionManifest,
)
from .mapping import EventLog, MappedEvent


@dataclass(frozen=True)
class PuzzleMetrics:
    """Per-puzzle statistics distilled from one fragment.

    ``activity_count`` covers the fragment's full activity set, including
    types a graph view may hide. ``completions <= trainees`` is not an
    invariant: platform flaws can repeat completion events.
    """

    activity_count: int
    event_count: int
    trainees: int
    completions: int
    solutions_displayed: int
    hints_taken: int
    wrong_flags: int
    median_duration: float


METRIC_NAMES = tuple(f.name for f in fields(PuzzleMetrics))

DEFAULT_SIZE_METRIC = "activity_count"
DEFAULT_COLOR_METRIC = "solutions_displayed"


@dataclass
class PuzzleFragment:
    """One puzzle's sub-log plus its metrics.

    ``in_manifest`` is False for tasks seen in the log but absent from the
    manifest; such fragments are appended after the declared ones.
    """

    task: str
    sub_log: EventLog
    metrics: PuzzleMetrics
    in_manifest: bool = True


@dataclass(frozen=True)
class OverviewEntry:
    task: str
    size_value: float
    color_value: float
    size_norm: float
    color_norm: float


@dataclass
class SessionOverview:
    """Figure-of-merit series over the session's puzzles, in manifest order.

    Values are max-scaled into [0, 1]; an all-zero metric normalizes to
    all zeros.
    """

    entries: list[OverviewEntry]
    size_metric: str
    color_metric: str


def filter_types(log: EventLog, types: Iterable[str]) -> EventLog:
    """Keep only events of the given origin types; drop emptied cases."""
    keep = frozenset(types)
    if not keep:
        raise ValueError("types must be non-empty")
    traces: dict[str, list[MappedEvent]] = {}
    for case_id, trace in log.traces.items():
        kept = [e for e in trace if e.event_type in keep]
        if kept:
            traces[case_id] = kept
    return EventLog(traces=traces, manifest=log.manifest, policy=log.policy)


def restrict_to_task(log: EventLog, task: str) -> EventLog:
    traces: dict[str, list[MappedEvent]] = {}
    for case_id, trace in log.traces.items():
        kept = [e for e in trace if e.task == task]
        if kept:
            traces[case_id] = kept
    return EventLog(traces=traces, manifest=log.manifest, policy=log.policy)


def compute_metrics(sub_log: EventLog) -> PuzzleMetrics:
    events = [e for trace in sub_log.traces.values() for e in trace]
    durations = []
    for trace in sub_log.traces.values():
        durations.append((trace[-1].time - trace[0].time).total_seconds())

    def count_game(name: str) -> int:
        return sum(1 for e in events if e.event_type == GAME and e.event == name)

    return PuzzleMetrics(
        activity_count=len({e.activity for e in events}),
        event_count=len(events),
        trainees=len(sub_log.traces),
        completions=count_game(TASK_COMPLETED),
        solutions_displayed=count_game(SOLUTION_DISPLAYED),
        hints_taken=count_game(HINT_TAKEN),
        wrong_flags=count_game(WRONG_FLAG_SUBMITTED),
        median_duration=median(durations) if durations else 0.0,
    )


def fragment_by_puzzle(log: EventLog, manifest: SessionManifest | None = None) -> list[PuzzleFragment]:
    """Split the log vertically into per-puzzle fragments.

    Fragments partition the events; each fragment trace is the parent
    trace's subsequence for that task. Order follows the manifest, with
    undeclared tasks appended in first-appearance order and flagged.
    """
    manifest = manifest if manifest is not None else log.manifest
    present: dict[str, None] = {}
    for case_id in sorted(log.traces):
        for e in log.traces[case_id]:
            present.setdefault(e.task, None)
    ordered = [t for t in manifest.puzzle_order if t in present]
    extras = [t for t in present if t not in manifest.puzzle_order]
    fragments = []
    for task in ordered + extras:
        sub = restrict_to_task(log, task)
        fragments.append(
            PuzzleFragment(
                task=task,
                sub_log=sub,
                metrics=compute_metrics(sub),
                in_manifest=task in manifest.puzzle_order,
            )
        )
    return fragments


def _metric_value(metrics: PuzzleMetrics, name: str) -> float:
    if name not in METRIC_NAMES:
        raise UnknownMetricError(
            f"unknown metric {name!r}; expected one of: {', '.join(METRIC_NAMES)}"
        )
    return float(getattr(metrics, name))


def _max_scale(values: Sequence[float]) -> list[float]:
    top = max(values, default=0.0)
    if top <= 0:
        return [0.0 for _ in values]
    return [v / top for v in values]


def build_overview(
    log: EventLog,
    manifest: SessionManifest | None = None,
    size_metric: str = DEFAULT_SIZE_METRIC,
    color_metric: str = DEFAULT_COLOR_METRIC,
) -> SessionOverview:
    """Distill per-puzzle metrics into an ordered, max-scaled series."""
    fragments = fragment_by_puzzle(log, manifest)
    sizes = [_metric_value(f.metrics, size_metric) for f in fragments]
    colors = [_metric_value(f.metrics, color_metric) for f in fragments]
    size_norms = _max_scale(sizes)
    color_norms = _max_scale(colors)
    entries = [
        OverviewEntry(
            task=f.task,
            size_value=sizes[i],
            color_value=colors[i],
            size_norm=size_norms[i],
            color_norm=color_norms[i],
        )
        for i, f in enumerate(fragments)
    ]
    return SessionOverview(entries=entries, size_metric=size_metric, color_metric=color_metric)


def discover_model(
    log: EventLog,
    task: str | None = None,
    types: Iterable[str] | None = None,
    mode: str = "heuristic",
    dependency_threshold: float = 0.5,
    min_edge_freq: int = 1,
) -> Dfg | HeuristicNet:
    """One entry point for every model query: restrict, filter, discover.

    The CLI and the HTTP API both route through here, so identical
    parameters yield identical models.
    """
    sub = log
    if task is not None:
        if task not in log.tasks():
            raise UnknownTaskError(f"task {task!r} not present in log")
        sub = restrict_to_task(sub, task)
    if types is not None:
        sub = filter_types(sub, types)
    dfg = discover_dfg(build_traces(sub))
    if mode == "dfg":
        return dfg
    if mode != "heuristic":
        raise ValueError(f"unknown discovery mode {mode!r}")
    return discover_heuristic_net(dfg, dependency_threshold, min_edge_freq)


def drill_down(
    log: EventLog,
    task: str,
    types: Iterable[str] | None = None,
    dependency_threshold: float = 0.5,
    min_edge_freq: int = 1,
) -> HeuristicNet:
    """Heuristic net of one puzzle, optionally restricted to event types.

    An all-filtered fragment yields an empty net rather than an error so
    interactive callers can show a placeholder.
    """
    net = discover_model(
        log,
        task=task,
        types=types,
        mode="heuristic",
        dependency_threshold=dependency_threshold,
        min_edge_freq=min_edge_freq,
    )
    assert isinstance(net, HeuristicNet)
    return net
