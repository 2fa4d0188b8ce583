"""Interchange rendering: DOT text for graphs, versioned JSON for all
model types. Serialization is deterministic; equal models produce
byte-equal output."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .discovery import Dfg, Edge, HeuristicNet, edge_dependency
from .errors import ModelDecodeError, RenderError
from .explore import OverviewEntry, SessionOverview
from .quality import FINDING_KINDS, SEVERITIES, EventRef, Finding, QualityReport

SCHEMA_VERSION = 1

Model = Union[Dfg, HeuristicNet, SessionOverview, QualityReport]

EDGE_LABEL_MODES = ("frequency", "dependency", "both")
NODE_LABEL_MODES = ("activity", "activity+frequency")


@dataclass(frozen=True)
class RenderOptions:
    edge_label: str = "both"
    node_label: str = "activity+frequency"
    highlight: frozenset[Edge] = frozenset()


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def flaw_edges(model: Dfg | HeuristicNet) -> frozenset[Edge]:
    """Completion-followed-by-solution edges, the gameplay-flaw signature.

    Matches on activity labels, so it is a heuristic for labels produced
    by the default mapping grammar.
    """
    if isinstance(model, HeuristicNet):
        candidates = model.retained
    else:
        candidates = set(model.edge_freq)
    return frozenset(
        (a, b)
        for a, b in candidates
        if "TaskCompleted" in a and "SolutionDisplayed" in b
    )


def to_dot(model: Dfg | HeuristicNet, opts: RenderOptions | None = None) -> str:
    """Render a graph model as a deterministic Graphviz digraph.

    Nodes are emitted in lexicographic activity order; a heuristic net
    contributes its retained edges only. Highlighted edges carry a
    distinct color attribute.
    """
    opts = opts if opts is not None else RenderOptions()
    if opts.edge_label not in EDGE_LABEL_MODES:
        raise RenderError(f"unknown edge_label {opts.edge_label!r}")
    if opts.node_label not in NODE_LABEL_MODES:
        raise RenderError(f"unknown node_label {opts.node_label!r}")
    if not model.activity_freq:
        raise RenderError("cannot render an empty model")

    if isinstance(model, HeuristicNet):
        edges = {e: model.edges[e] for e in model.retained}
    else:
        edges = {e: (f, edge_dependency(model, *e)) for e, f in model.edge_freq.items()}
    missing = opts.highlight - set(edges)
    if missing:
        shown = ", ".join(f"{a}->{b}" for a, b in sorted(missing))
        raise RenderError(f"highlight references edges absent from the model: {shown}")

    lines = ["digraph model {", "  rankdir=LR;"]
    for activity in sorted(model.activity_freq):
        label = activity
        if opts.node_label == "activity+frequency":
            label = f"{activity} ({model.activity_freq[activity]})"
        lines.append(f'  "{_dot_escape(activity)}" [label="{_dot_escape(label)}"];')
    for (a, b) in sorted(edges):
        freq, dep = edges[(a, b)]
        if opts.edge_label == "frequency":
            label = str(freq)
        elif opts.edge_label == "dependency":
            label = f"{dep:.2f}"
        else:
            label = f"{freq} / {dep:.2f}"
        attrs = [f'label="{_dot_escape(label)}"']
        if (a, b) in opts.highlight:
            attrs.append('color="red"')
            attrs.append("penwidth=2")
        lines.append(f'  "{_dot_escape(a)}" -> "{_dot_escape(b)}" [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _freq_list(freq: dict[str, int]) -> list[dict]:
    return [{"activity": a, "freq": freq[a]} for a in sorted(freq)]


def _model_to_record(model: Model) -> dict:
    if isinstance(model, Dfg):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "dfg",
            "activities": _freq_list(model.activity_freq),
            "edges": [
                {"from": a, "to": b, "freq": model.edge_freq[(a, b)]}
                for a, b in sorted(model.edge_freq)
            ],
            "starts": _freq_list(model.start_freq),
            "ends": _freq_list(model.end_freq),
        }
    if isinstance(model, HeuristicNet):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "heuristic_net",
            "dependency_threshold": model.dependency_threshold,
            "min_edge_freq": model.min_edge_freq,
            "activities": _freq_list(model.activity_freq),
            "edges": [
                {
                    "from": a,
                    "to": b,
                    "freq": model.edges[(a, b)][0],
                    "dependency": model.edges[(a, b)][1],
                    "retained": (a, b) in model.retained,
                }
                for a, b in sorted(model.edges)
            ],
            "starts": _freq_list(model.start_freq),
            "ends": _freq_list(model.end_freq),
        }
    if isinstance(model, SessionOverview):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "overview",
            "size_metric": model.size_metric,
            "color_metric": model.color_metric,
            "entries": [
                {
                    "task": e.task,
                    "size_value": e.size_value,
                    "color_value": e.color_value,
                    "size_norm": e.size_norm,
                    "color_norm": e.color_norm,
                }
                for e in model.entries
            ],
        }
    if isinstance(model, QualityReport):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "quality_report",
            "findings": [
                {
                    "kind": f.kind,
                    "severity": f.severity,
                    "message": f.message,
                    "case_id": f.case_id,
                    "task": f.task,
                    "evidence": [
                        {
                            "case_id": r.case_id,
                            "seq": r.seq,
                            "activity": r.activity,
                            "time": r.time,
                        }
                        for r in f.evidence
                    ],
                }
                for f in model.findings
            ],
        }
    raise TypeError(f"unsupported model type {type(model).__name__}")


def to_json(model: Model) -> str:
    return json.dumps(_model_to_record(model), indent=2, sort_keys=True) + "\n"


class _Decoder:
    """Validating decoder that reports failures with a JSON-path locator."""

    def __init__(self, doc: object):
        self.doc = doc

    def fail(self, path: str, message: str) -> ModelDecodeError:
        return ModelDecodeError(path, message)

    def obj(self, value: object, path: str) -> dict:
        if not isinstance(value, dict):
            raise self.fail(path, "expected object")
        return value

    def arr(self, value: object, path: str) -> list:
        if not isinstance(value, list):
            raise self.fail(path, "expected array")
        return value

    def str_(self, value: object, path: str) -> str:
        if not isinstance(value, str):
            raise self.fail(path, "expected string")
        return value

    def count(self, value: object, path: str) -> int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise self.fail(path, "expected integer")
        if value < 0:
            raise self.fail(path, "negative frequency")
        return value

    def num(self, value: object, path: str) -> float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise self.fail(path, "expected number")
        return float(value)


def _decode_freqs(dec: _Decoder, value: object, path: str) -> dict[str, int]:
    out: dict[str, int] = {}
    for i, item in enumerate(dec.arr(value, path)):
        entry = dec.obj(item, f"{path}[{i}]")
        activity = dec.str_(entry.get("activity"), f"{path}[{i}].activity")
        out[activity] = dec.count(entry.get("freq"), f"{path}[{i}].freq")
    return out


def _decode_dfg(dec: _Decoder, doc: dict) -> Dfg:
    edges: dict[Edge, int] = {}
    for i, item in enumerate(dec.arr(doc.get("edges"), "$.edges")):
        entry = dec.obj(item, f"$.edges[{i}]")
        a = dec.str_(entry.get("from"), f"$.edges[{i}].from")
        b = dec.str_(entry.get("to"), f"$.edges[{i}].to")
        edges[(a, b)] = dec.count(entry.get("freq"), f"$.edges[{i}].freq")
    return Dfg(
        activity_freq=_decode_freqs(dec, doc.get("activities"), "$.activities"),
        edge_freq=edges,
        start_freq=_decode_freqs(dec, doc.get("starts"), "$.starts"),
        end_freq=_decode_freqs(dec, doc.get("ends"), "$.ends"),
    )


def _decode_net(dec: _Decoder, doc: dict) -> HeuristicNet:
    threshold = dec.num(doc.get("dependency_threshold"), "$.dependency_threshold")
    if not 0.0 <= threshold <= 1.0:
        raise dec.fail("$.dependency_threshold", "must be in [0, 1]")
    min_freq = dec.count(doc.get("min_edge_freq"), "$.min_edge_freq")
    if min_freq < 1:
        raise dec.fail("$.min_edge_freq", "must be >= 1")
    edges: dict[Edge, tuple[int, float]] = {}
    retained: set[Edge] = set()
    for i, item in enumerate(dec.arr(doc.get("edges"), "$.edges")):
        entry = dec.obj(item, f"$.edges[{i}]")
        a = dec.str_(entry.get("from"), f"$.edges[{i}].from")
        b = dec.str_(entry.get("to"), f"$.edges[{i}].to")
        freq = dec.count(entry.get("freq"), f"$.edges[{i}].freq")
        dep = dec.num(entry.get("dependency"), f"$.edges[{i}].dependency")
        if not -1.0 <= dep <= 1.0:
            raise dec.fail(f"$.edges[{i}].dependency", "must be in [-1, 1]")
        edges[(a, b)] = (freq, dep)
        kept = entry.get("retained")
        if not isinstance(kept, bool):
            raise dec.fail(f"$.edges[{i}].retained", "expected boolean")
        if kept:
            retained.add((a, b))
    return HeuristicNet(
        activity_freq=_decode_freqs(dec, doc.get("activities"), "$.activities"),
        start_freq=_decode_freqs(dec, doc.get("starts"), "$.starts"),
        end_freq=_decode_freqs(dec, doc.get("ends"), "$.ends"),
        edges=edges,
        dependency_threshold=threshold,
        min_edge_freq=min_freq,
        retained=retained,
    )


def _decode_overview(dec: _Decoder, doc: dict) -> SessionOverview:
    entries = []
    for i, item in enumerate(dec.arr(doc.get("entries"), "$.entries")):
        entry = dec.obj(item, f"$.entries[{i}]")
        norms = {}
        for key in ("size_norm", "color_norm"):
            norms[key] = dec.num(entry.get(key), f"$.entries[{i}].{key}")
            if not 0.0 <= norms[key] <= 1.0:
                raise dec.fail(f"$.entries[{i}].{key}", "must be in [0, 1]")
        entries.append(
            OverviewEntry(
                task=dec.str_(entry.get("task"), f"$.entries[{i}].task"),
                size_value=dec.num(entry.get("size_value"), f"$.entries[{i}].size_value"),
                color_value=dec.num(entry.get("color_value"), f"$.entries[{i}].color_value"),
                size_norm=norms["size_norm"],
                color_norm=norms["color_norm"],
            )
        )
    return SessionOverview(
        entries=entries,
        size_metric=dec.str_(doc.get("size_metric"), "$.size_metric"),
        color_metric=dec.str_(doc.get("color_metric"), "$.color_metric"),
    )


def _decode_report(dec: _Decoder, doc: dict) -> QualityReport:
    findings = []
    for i, item in enumerate(dec.arr(doc.get("findings"), "$.findings")):
        entry = dec.obj(item, f"$.findings[{i}]")
        kind = dec.str_(entry.get("kind"), f"$.findings[{i}].kind")
        if kind not in FINDING_KINDS:
            raise dec.fail(f"$.findings[{i}].kind", f"unknown finding kind {kind!r}")
        severity = dec.str_(entry.get("severity"), f"$.findings[{i}].severity")
        if severity not in SEVERITIES:
            raise dec.fail(f"$.findings[{i}].severity", f"unknown severity {severity!r}")
        refs = []
        for j, ref in enumerate(dec.arr(entry.get("evidence", []), f"$.findings[{i}].evidence")):
            ref_obj = dec.obj(ref, f"$.findings[{i}].evidence[{j}]")
            refs.append(
                EventRef(
                    case_id=dec.str_(ref_obj.get("case_id"), f"$.findings[{i}].evidence[{j}].case_id"),
                    seq=dec.count(ref_obj.get("seq"), f"$.findings[{i}].evidence[{j}].seq"),
                    activity=dec.str_(ref_obj.get("activity"), f"$.findings[{i}].evidence[{j}].activity"),
                    time=dec.str_(ref_obj.get("time"), f"$.findings[{i}].evidence[{j}].time"),
                )
            )
        case_id = entry.get("case_id")
        task = entry.get("task")
        findings.append(
            Finding(
                kind=kind,
                severity=severity,
                message=dec.str_(entry.get("message"), f"$.findings[{i}].message"),
                case_id=None if case_id is None else dec.str_(case_id, f"$.findings[{i}].case_id"),
                task=None if task is None else dec.str_(task, f"$.findings[{i}].task"),
                evidence=tuple(refs),
            )
        )
    return QualityReport(findings=findings)


_DECODERS = {
    "dfg": _decode_dfg,
    "heuristic_net": _decode_net,
    "overview": _decode_overview,
    "quality_report": _decode_report,
}


def from_json(text: str | bytes) -> Model:
    """Decode a model document; inverse of ``to_json``."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelDecodeError("$", f"invalid JSON: {exc.msg}") from exc
    dec = _Decoder(doc)
    root = dec.obj(doc, "$")
    version = root.get("schema_version")
    if version != SCHEMA_VERSION:
        raise dec.fail("$.schema_version", f"unsupported schema_version {version!r}")
    kind = root.get("kind")
    decoder = _DECODERS.get(kind)  # type: ignore[arg-type]
    if decoder is None:
        raise dec.fail("$.kind", f"unknown model kind {kind!r}")
    return decoder(dec, root)
