"""Process mining toolkit for puzzle-based cybersecurity training logs."""

from .discovery import (
    Dfg,
    HeuristicNet,
    build_traces,
    dependency,
    dependency_self,
    discover_dfg,
    discover_heuristic_net,
)
from .errors import (
    CtfmineError,
    EmptyLogError,
    ManifestError,
    ModelDecodeError,
    PolicyError,
    PolicyMismatchError,
    RenderError,
    UnknownMetricError,
    UnknownTaskError,
)
from .explore import (
    PuzzleFragment,
    PuzzleMetrics,
    SessionOverview,
    build_overview,
    compute_metrics,
    discover_model,
    drill_down,
    filter_types,
    fragment_by_puzzle,
)
from .export import RenderOptions, from_json, to_dot, to_json
from .ingest import (
    ParseWarning,
    RawEvent,
    SessionManifest,
    derive_manifest,
    load_manifest,
    parse_log,
    write_jsonl,
)
from .mapping import (
    EventLog,
    MappedEvent,
    MappingPolicy,
    apply_policy,
    diff_policies,
    load_policy,
    normalize_times,
)
from .quality import Finding, QualityReport, audit, completeness_summary
from .synth import (
    BehaviorProfile,
    GeneratorConfig,
    generate,
    giveup_loop_fixture,
    uneven_session_fixture,
)

__version__ = "0.1.0"

__all__ = [
    "BehaviorProfile",
    "CtfmineError",
    "Dfg",
    "EmptyLogError",
    "EventLog",
    "Finding",
    "GeneratorConfig",
    "HeuristicNet",
    "ManifestError",
    "MappedEvent",
    "MappingPolicy",
    "ModelDecodeError",
    "ParseWarning",
    "PolicyError",
    "PolicyMismatchError",
    "PuzzleFragment",
    "PuzzleMetrics",
    "QualityReport",
    "RawEvent",
    "RenderError",
    "RenderOptions",
    "SessionManifest",
    "SessionOverview",
    "UnknownMetricError",
    "UnknownTaskError",
    "apply_policy",
    "audit",
    "build_overview",
    "build_traces",
    "completeness_summary",
    "compute_metrics",
    "dependency",
    "dependency_self",
    "derive_manifest",
    "diff_policies",
    "discover_dfg",
    "discover_heuristic_net",
    "discover_model",
    "drill_down",
    "filter_types",
    "fragment_by_puzzle",
    "from_json",
    "generate",
    "giveup_loop_fixture",
    "load_manifest",
    "load_policy",
    "normalize_times",
    "parse_log",
    "to_dot",
    "to_json",
    "uneven_session_fixture",
    "write_jsonl",
]
