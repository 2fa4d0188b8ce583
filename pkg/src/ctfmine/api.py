"""Read-mostly JSON service backing the explorer UI.

Sessions persist as plain files under a data directory; analysis
snapshots are recomputed eagerly per policy version and kept in memory.
Raw events never mutate after upload; each policy update increments the
version and old versions stay queryable.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import export
from .errors import CtfmineError, EmptyLogError
from .explore import build_overview, discover_model
from .ingest import (
    RawEvent,
    SessionManifest,
    derive_manifest,
    load_manifest,
    manifest_to_record,
    parse_log,
    write_jsonl,
)
from .mapping import EventLog, MappingPolicy, apply_policy, policy_from_record, policy_to_record
from .quality import DEFAULT_PAUSE_THRESHOLD, audit


@dataclass
class Session:
    session_id: str
    events: list[RawEvent]
    manifest: SessionManifest
    policies: list[MappingPolicy] = field(default_factory=list)
    snapshots: dict[int, EventLog] = field(default_factory=dict)

    @property
    def version(self) -> int:
        return len(self.policies)


class SessionStore:
    """File-backed session registry; writers serialize on one lock."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}
        for path in sorted(self.data_dir.iterdir()):
            if path.is_dir() and (path / "raw.jsonl").exists():
                self._load(path)

    def _load(self, path: Path) -> None:
        events, _ = parse_log((path / "raw.jsonl").read_bytes())
        manifest = load_manifest((path / "manifest.json").read_bytes())
        session = Session(session_id=path.name, events=events, manifest=manifest)
        for policy_path in sorted(path.glob("policy_v*.json")):
            policy = policy_from_record(json.loads(policy_path.read_text(encoding="utf-8")))
            session.policies.append(policy)
            session.snapshots[len(session.policies)] = apply_policy(events, manifest, policy)
        self._sessions[session.session_id] = session

    def create(self, log_text: str, manifest_doc: dict | None) -> Session:
        events, warnings = parse_log(log_text)
        if manifest_doc is not None:
            manifest = load_manifest(json.dumps(manifest_doc))
        else:
            manifest = derive_manifest(events)
        with self._lock:
            session_id = uuid.uuid4().hex[:12]
            session = Session(session_id=session_id, events=events, manifest=manifest)
            self._sessions[session_id] = session
            path = self.data_dir / session_id
            path.mkdir(parents=True, exist_ok=True)
            (path / "raw.jsonl").write_text(write_jsonl(events), encoding="utf-8")
            (path / "manifest.json").write_text(
                json.dumps(manifest_to_record(manifest), indent=2, sort_keys=True) + "\n",
                encoding="utf-8",
            )
        self.set_policy(session, MappingPolicy())
        return session

    def set_policy(self, session: Session, policy: MappingPolicy) -> int:
        snapshot = apply_policy(session.events, session.manifest, policy)
        with self._lock:
            session.policies.append(policy)
            version = session.version
            session.snapshots[version] = snapshot
            path = self.data_dir / session.session_id / f"policy_v{version}.json"
            path.write_text(
                json.dumps(policy_to_record(policy), indent=2, sort_keys=True) + "\n",
                encoding="utf-8",
            )
        return version

    def get(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return session

    def snapshot(self, session: Session, version: int | None) -> tuple[EventLog, int]:
        v = session.version if version is None else version
        log = session.snapshots.get(v)
        if log is None:
            raise HTTPException(status_code=404, detail=f"unknown policy version {v}")
        return log, v

    def list_sessions(self) -> list[dict]:
        out = []
        for session_id in sorted(self._sessions):
            session = self._sessions[session_id]
            out.append(
                {
                    "session_id": session_id,
                    "event_count": len(session.events),
                    "policy_version": session.version,
                    "tasks": list(session.manifest.puzzle_order),
                }
            )
        return out


def _model_response(model, version: int) -> Response:
    return Response(
        content=export.to_json(model),
        media_type="application/json",
        headers={"X-Policy-Version": str(version)},
    )


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception:
        raise HTTPException(status_code=400, detail="request body is not valid JSON")
    if not isinstance(body, dict):
        raise HTTPException(status_code=400, detail="request body must be a JSON object")
    return body


def create_app(
    data_dir: str | Path = "./ctfmine-data", static_dir: str | Path | None = None
) -> FastAPI:
    app = FastAPI(title="ctfmine", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(data_dir)
    app.state.store = store

    @app.exception_handler(CtfmineError)
    async def _domain_error(request: Request, exc: CtfmineError):
        detail: dict = {"message": str(exc)}
        warnings = getattr(exc, "warnings", None)
        if warnings:
            detail["warnings"] = [str(w) for w in warnings]
        return Response(
            content=json.dumps({"detail": detail}),
            status_code=400,
            media_type="application/json",
        )

    @app.get("/api/sessions")
    async def list_sessions():
        return store.list_sessions()

    @app.post("/api/sessions", status_code=201)
    async def upload_session(request: Request):
        body = await _json_body(request)
        log_text = body.get("log")
        if not isinstance(log_text, str):
            raise HTTPException(status_code=400, detail="missing 'log' (JSONL string)")
        manifest_doc = body.get("manifest")
        if manifest_doc is not None and not isinstance(manifest_doc, dict):
            raise HTTPException(status_code=400, detail="'manifest' must be an object")
        try:
            session = store.create(log_text, manifest_doc)
        except EmptyLogError as exc:
            raise HTTPException(
                status_code=400,
                detail={"message": str(exc), "warnings": [str(w) for w in exc.warnings]},
            )
        return {"session_id": session.session_id, "policy_version": session.version}

    @app.get("/api/sessions/{session_id}/overview")
    async def overview(
        session_id: str,
        size: str = "activity_count",
        color: str = "solutions_displayed",
        v: int | None = None,
    ):
        session = store.get(session_id)
        log, version = store.snapshot(session, v)
        result = build_overview(log, session.manifest, size_metric=size, color_metric=color)
        return _model_response(result, version)

    @app.get("/api/sessions/{session_id}/graph")
    async def graph(
        session_id: str,
        task: str | None = None,
        types: str | None = None,
        mode: str = "heuristic",
        dep: float = 0.5,
        minfreq: int = 1,
        v: int | None = None,
    ):
        session = store.get(session_id)
        log, version = store.snapshot(session, v)
        type_list = [t.strip() for t in types.split(",") if t.strip()] if types else None
        if mode not in ("dfg", "heuristic"):
            raise HTTPException(status_code=400, detail=f"unknown mode {mode!r}")
        if not 0.0 <= dep <= 1.0:
            raise HTTPException(status_code=400, detail="dep must be in [0, 1]")
        if minfreq < 1:
            raise HTTPException(status_code=400, detail="minfreq must be >= 1")
        model = discover_model(
            log,
            task=task,
            types=type_list,
            mode=mode,
            dependency_threshold=dep,
            min_edge_freq=minfreq,
        )
        return _model_response(model, version)

    @app.get("/api/sessions/{session_id}/policy")
    async def get_policy(session_id: str, v: int | None = None):
        session = store.get(session_id)
        version = session.version if v is None else v
        if not 1 <= version <= session.version:
            raise HTTPException(status_code=404, detail=f"unknown policy version {version}")
        return {
            "policy_version": version,
            "policy": policy_to_record(session.policies[version - 1]),
        }

    @app.put("/api/sessions/{session_id}/policy")
    async def put_policy(session_id: str, request: Request):
        session = store.get(session_id)
        body = await _json_body(request)
        policy = policy_from_record(body)
        version = store.set_policy(session, policy)
        return {"policy_version": version}

    @app.get("/api/sessions/{session_id}/quality")
    async def quality_report(
        session_id: str,
        v: int | None = None,
        pause_threshold: float = DEFAULT_PAUSE_THRESHOLD,
    ):
        session = store.get(session_id)
        log, version = store.snapshot(session, v)
        report = audit(log, session.manifest, pause_threshold)
        return _model_response(report, version)

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        # mounted after the API routes so /api keeps precedence
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
