"""Command-line entry point wiring the full pipeline.

stdout carries the primary artifact only; diagnostics go to stderr.
Exit codes: 0 success, 1 processing failure or error-severity findings,
2 usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import export, mapping, quality, synth
from .errors import CtfmineError
from .explore import (
    DEFAULT_COLOR_METRIC,
    DEFAULT_SIZE_METRIC,
    build_overview,
    discover_model,
    fragment_by_puzzle,
)
from .ingest import derive_manifest, load_manifest, parse_log, write_jsonl, manifest_to_record
from .mapping import MappingPolicy, load_policy, normalize_times

_DURATION_UNITS = {"s": 1.0, "m": 60.0, "h": 3600.0, "d": 86400.0}

FIXTURES = {
    "giveup-loop": synth.giveup_loop_fixture,
    "uneven-session": synth.uneven_session_fixture,
}

_SEVERITY_COLORS = {"error": "\033[31m", "warning": "\033[33m", "info": "\033[36m"}


def parse_duration(text: str) -> float:
    """Parse '90', '90s', '30m', '25h' or '2d' into seconds."""
    text = text.strip().lower()
    unit = 1.0
    if text and text[-1] in _DURATION_UNITS:
        unit = _DURATION_UNITS[text[-1]]
        text = text[:-1]
    try:
        value = float(text)
    except ValueError:
        raise CtfmineError(f"cannot parse duration {text!r}") from None
    if value <= 0:
        raise CtfmineError("duration must be > 0")
    return value * unit


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _input_format(args) -> str:
    if args.input_format:
        return args.input_format
    return "csv" if args.input.endswith(".csv") else "jsonl"


def _load_log(args):
    events, warnings = parse_log(Path(args.input).read_bytes(), _input_format(args))
    for warning in warnings:
        print(f"{args.input}: {warning}", file=sys.stderr)
    if args.manifest:
        manifest = load_manifest(Path(args.manifest).read_bytes())
    else:
        manifest = derive_manifest(events)
    if args.policy:
        policy = load_policy(Path(args.policy).read_bytes())
    else:
        policy = MappingPolicy()
    log = mapping.apply_policy(events, manifest, policy)
    if args.relative_time or args.gap_cap:
        cap = parse_duration(args.gap_cap) if args.gap_cap else policy.pause_gap_cap
        mode = mapping.RELATIVE_PER_CASE if args.relative_time else policy.time_mode
        log = normalize_times(log, mode, cap)
    return log


def _types(args) -> list[str] | None:
    if not args.types:
        return None
    return [t.strip() for t in args.types.split(",") if t.strip()]


def cmd_validate(args) -> int:
    log = _load_log(args)
    threshold = parse_duration(args.pause_threshold)
    report = quality.audit(log, pause_threshold=threshold)
    if args.format == "json":
        _emit(export.to_json(report), args.output)
    else:
        _emit(_report_table(report), args.output)
    return 1 if report.has_errors() else 0


def cmd_audit(args) -> int:
    log = _load_log(args)
    threshold = parse_duration(args.pause_threshold)
    report = quality.audit(log, pause_threshold=threshold)
    if args.format == "table":
        _emit(_report_table(report), args.output)
    else:
        _emit(export.to_json(report), args.output)
    return 1 if report.has_errors() else 0


def _report_table(report: quality.QualityReport) -> str:
    color = sys.stdout.isatty()
    lines = []
    summary = quality.completeness_summary(report)
    for finding in report.findings:
        severity = finding.severity.upper()
        if color:
            severity = f"{_SEVERITY_COLORS[finding.severity]}{severity}\033[0m"
        locator = " ".join(
            part
            for part in (
                f"case={finding.case_id}" if finding.case_id else "",
                f"task={finding.task}" if finding.task else "",
            )
            if part
        )
        lines.append(f"{severity:<10} {finding.kind:<24} {locator:<28} {finding.message}")
    counts = ", ".join(f"{k}={v}" for k, v in summary["by_severity"].items() if v)
    lines.append(f"{len(report.findings)} finding(s): {counts}" if report.findings else "no findings")
    return "\n".join(lines) + "\n"


def cmd_discover(args) -> int:
    log = _load_log(args)
    model = discover_model(
        log,
        task=args.task,
        types=_types(args),
        mode=args.mode,
        dependency_threshold=args.dep_threshold,
        min_edge_freq=args.min_edge_freq,
    )
    if args.format == "dot":
        highlight = export.flaw_edges(model) if args.highlight_flaws else frozenset()
        opts = export.RenderOptions(edge_label=args.edge_label, highlight=highlight)
        _emit(export.to_dot(model, opts), args.output)
    else:
        _emit(export.to_json(model), args.output)
    return 0


def cmd_overview(args) -> int:
    log = _load_log(args)
    overview = build_overview(log, size_metric=args.size_metric, color_metric=args.color_metric)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["task", "size_value", "color_value", "size_norm", "color_norm"])
        for e in overview.entries:
            writer.writerow([e.task, e.size_value, e.color_value, e.size_norm, e.color_norm])
        _emit(buf.getvalue(), args.output)
    else:
        _emit(export.to_json(overview), args.output)
    if args.fig:
        from .report import render_overview_figure

        render_overview_figure(overview, args.fig)
    return 0


def cmd_fragment(args) -> int:
    log = _load_log(args)
    fragments = fragment_by_puzzle(log)
    rows = [
        {
            "task": f.task,
            "in_manifest": f.in_manifest,
            "activity_count": f.metrics.activity_count,
            "event_count": f.metrics.event_count,
            "trainees": f.metrics.trainees,
            "completions": f.metrics.completions,
            "solutions_displayed": f.metrics.solutions_displayed,
            "hints_taken": f.metrics.hints_taken,
            "wrong_flags": f.metrics.wrong_flags,
            "median_duration": f.metrics.median_duration,
        }
        for f in fragments
    ]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["task"], lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), args.output)
    else:
        _emit(json.dumps(rows, indent=2, sort_keys=True) + "\n", args.output)
    if args.fig:
        from .report import render_fragment_figure

        render_fragment_figure(fragments, args.fig, args.fig_metric)
    return 0


def cmd_synth(args) -> int:
    if args.fixture:
        events, manifest = FIXTURES[args.fixture]()
    else:
        tasks = tuple(t.strip() for t in args.tasks.split(",") if t.strip())
        config = synth.GeneratorConfig(seed=args.seed, n_trainees=args.trainees, tasks=tasks)
        events, manifest = synth.generate(config)
    _emit(write_jsonl(events), args.output)
    if args.manifest_out:
        doc = json.dumps(manifest_to_record(manifest), indent=2, sort_keys=True) + "\n"
        Path(args.manifest_out).write_text(doc, encoding="utf-8")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(args.data_dir, static_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _add_io_args(sub):
    sub.add_argument("input", help="path to a JSONL or CSV event log")
    sub.add_argument("--manifest", help="session manifest JSON (derived from the log if omitted)")
    sub.add_argument("--input-format", choices=["jsonl", "csv"], help="override format detection")
    sub.add_argument("--policy", help="mapping policy JSON file")
    sub.add_argument("--relative-time", action="store_true",
                     help="rebase each case to start at t=0")
    sub.add_argument("--gap-cap", help="clamp within-case gaps to this duration (e.g. 30m)")
    sub.add_argument("-o", "--output", help="write the artifact to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctfmine",
        description="Process mining for puzzle-based cybersecurity training logs",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("validate", help="parse a log and report quality findings")
    _add_io_args(p)
    p.add_argument("--pause-threshold", default="30m", help="gap treated as a suspected pause")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_validate)

    p = commands.add_parser("discover", help="discover a process model")
    _add_io_args(p)
    p.add_argument("--types", help="comma list of event types to keep (e.g. game,bash)")
    p.add_argument("--task", help="drill down into one puzzle")
    p.add_argument("--mode", choices=["heuristic", "dfg"], default="heuristic")
    p.add_argument("--dep-threshold", type=float, default=0.5)
    p.add_argument("--min-edge-freq", type=int, default=1)
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--edge-label", choices=["frequency", "dependency", "both"], default="both")
    p.add_argument("--highlight-flaws", action="store_true",
                   help="highlight completion->solution edges in DOT output")
    p.set_defaults(func=cmd_discover)

    p = commands.add_parser("overview", help="per-puzzle metric overview of a session")
    _add_io_args(p)
    p.add_argument("--size-metric", default=DEFAULT_SIZE_METRIC)
    p.add_argument("--color-metric", default=DEFAULT_COLOR_METRIC)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--fig", help="also render the overview circles to this image file")
    p.set_defaults(func=cmd_overview)

    p = commands.add_parser("fragment", help="split a session into per-puzzle metrics")
    _add_io_args(p)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--fig", help="also render a metric bar chart to this image file")
    p.add_argument("--fig-metric", default="event_count")
    p.set_defaults(func=cmd_fragment)

    p = commands.add_parser("audit", help="emit the quality report")
    _add_io_args(p)
    p.add_argument("--pause-threshold", default="30m")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_audit)

    p = commands.add_parser("synth", help="generate a synthetic session log")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trainees", type=int, default=10)
    p.add_argument("--tasks", default="41,42,43,44,45")
    p.add_argument("--fixture", choices=sorted(FIXTURES),
                   help="emit a scripted scenario instead of a random session")
    p.add_argument("-o", "--output", help="write JSONL to a file instead of stdout")
    p.add_argument("--manifest-out", help="also write the session manifest JSON")
    p.set_defaults(func=cmd_synth)

    p = commands.add_parser("serve", help="run the HTTP API")
    p.add_argument("--data-dir", default="./ctfmine-data")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--ui", help="also serve the explorer frontend from this directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CtfmineError as exc:
        for warning in getattr(exc, "warnings", []):
            print(str(warning), file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
