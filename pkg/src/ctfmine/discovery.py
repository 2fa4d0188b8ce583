"""Process model discovery: directly-follows graphs and heuristic nets."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .mapping import EventLog

Edge = tuple[str, str]


@dataclass
class Dfg:
    """Directly-follows graph with activity, edge, start and end counts.

    Satisfies flow conservation: for every activity x,
    ``activity_freq[x] == sum(outgoing) + end == sum(incoming) + start``.
    """

    activity_freq: dict[str, int] = field(default_factory=dict)
    edge_freq: dict[Edge, int] = field(default_factory=dict)
    start_freq: dict[str, int] = field(default_factory=dict)
    end_freq: dict[str, int] = field(default_factory=dict)

    def trace_count(self) -> int:
        return sum(self.start_freq.values())


@dataclass
class HeuristicNet:
    """DFG refined with dependency values and edge-pruning thresholds.

    ``edges`` keeps every DFG edge with its frequency and dependency;
    ``retained`` is the subset surviving the thresholds. Start/end counts
    are node annotations only; renderers may draw virtual endpoints.
    """

    activity_freq: dict[str, int]
    start_freq: dict[str, int]
    end_freq: dict[str, int]
    edges: dict[Edge, tuple[int, float]]
    dependency_threshold: float
    min_edge_freq: int
    retained: set[Edge]


def build_traces(log: EventLog) -> list[list[str]]:
    """One activity sequence per case, in case-id order."""
    return [[e.activity for e in log.traces[c]] for c in sorted(log.traces)]


def discover_dfg(traces: Sequence[Sequence[str]]) -> Dfg:
    """Count immediate successions, starts and ends over all traces.

    A pure fold over traces; the result is independent of trace order.
    """
    activity: Counter[str] = Counter()
    edges: Counter[Edge] = Counter()
    starts: Counter[str] = Counter()
    ends: Counter[str] = Counter()
    for trace in traces:
        if not trace:
            continue
        activity.update(trace)
        starts[trace[0]] += 1
        ends[trace[-1]] += 1
        for a, b in zip(trace, trace[1:]):
            edges[(a, b)] += 1
    return Dfg(
        activity_freq=dict(activity),
        edge_freq=dict(edges),
        start_freq=dict(starts),
        end_freq=dict(ends),
    )


def dependency(freq_ab: int, freq_ba: int) -> float:
    """Dependency of a on b: (|a>b| - |b>a|) / (|a>b| + |b>a| + 1).

    Antisymmetric in its arguments and strictly inside (-1, 1).
    """
    return (freq_ab - freq_ba) / (freq_ab + freq_ba + 1)


def dependency_self(freq_aa: int) -> float:
    """Self-loop dependency: |a>a| / (|a>a| + 1), in [0, 1)."""
    return freq_aa / (freq_aa + 1)


def edge_dependency(dfg: Dfg, a: str, b: str) -> float:
    if a == b:
        return dependency_self(dfg.edge_freq.get((a, a), 0))
    return dependency(dfg.edge_freq.get((a, b), 0), dfg.edge_freq.get((b, a), 0))


def discover_heuristic_net(
    dfg: Dfg, dependency_threshold: float = 0.5, min_edge_freq: int = 1
) -> HeuristicNet:
    """Prune DFG edges below the dependency and frequency thresholds.

    All nodes are kept; an edge is retained iff its dependency is at least
    ``dependency_threshold`` and its frequency at least ``min_edge_freq``.
    """
    if not 0.0 <= dependency_threshold <= 1.0:
        raise ValueError("dependency_threshold must be in [0, 1]")
    if min_edge_freq < 1:
        raise ValueError("min_edge_freq must be >= 1")
    edges: dict[Edge, tuple[int, float]] = {}
    retained: set[Edge] = set()
    for (a, b), freq in dfg.edge_freq.items():
        dep = edge_dependency(dfg, a, b)
        edges[(a, b)] = (freq, dep)
        if dep >= dependency_threshold and freq >= min_edge_freq:
            retained.add((a, b))
    return HeuristicNet(
        activity_freq=dict(dfg.activity_freq),
        start_freq=dict(dfg.start_freq),
        end_freq=dict(dfg.end_freq),
        edges=edges,
        dependency_threshold=dependency_threshold,
        min_edge_freq=min_edge_freq,
        retained=retained,
    )
