"""Record byte-exact API payloads for the frontend test suite.

Run from the repository root after installing the Python package:

    python3 frontend/scripts/record_fixtures.py
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from ctfmine import giveup_loop_fixture, uneven_session_fixture, write_jsonl
from ctfmine.api import create_app
from ctfmine.ingest import manifest_to_record

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def record(client: TestClient, name: str, path: str, params: dict | None = None) -> None:
    response = client.get(path, params=params)
    assert response.status_code == 200, (path, response.status_code, response.text)
    (OUT / name).write_text(response.text, encoding="utf-8")
    print(f"{name}: {len(response.text)} bytes")


def upload(client: TestClient, fixture) -> str:
    events, manifest = fixture()
    response = client.post(
        "/api/sessions",
        json={"log": write_jsonl(events), "manifest": manifest_to_record(manifest)},
    )
    assert response.status_code == 201, response.text
    return response.json()["session_id"]


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        with TestClient(create_app(tmp)) as client:
            uneven = upload(client, uneven_session_fixture)
            giveup = upload(client, giveup_loop_fixture)

            record(client, "overview_uneven.json", f"/api/sessions/{uneven}/overview")
            record(
                client,
                "graph_uneven_session.json",
                f"/api/sessions/{uneven}/graph",
                {"types": "bash,game,msf", "mode": "heuristic", "dep": 0.5},
            )
            record(
                client,
                "graph_uneven_44_heuristic_dep05.json",
                f"/api/sessions/{uneven}/graph",
                {"task": "44", "dep": 0.5},
            )
            record(
                client,
                "graph_uneven_44_game_dep05.json",
                f"/api/sessions/{uneven}/graph",
                {"task": "44", "types": "game", "dep": 0.5},
            )
            record(
                client,
                "graph_uneven_44_heuristic_dep09.json",
                f"/api/sessions/{uneven}/graph",
                {"task": "44", "dep": 0.9},
            )
            record(
                client,
                "graph_uneven_43_heuristic_dep05.json",
                f"/api/sessions/{uneven}/graph",
                {"task": "43", "dep": 0.5},
            )
            record(
                client,
                "graph_uneven_info_msf.json",
                f"/api/sessions/{uneven}/graph",
                {"task": "info", "types": "msf"},
            )
            record(client, "quality_uneven.json", f"/api/sessions/{uneven}/quality")
            record(client, "policy_v1.json", f"/api/sessions/{uneven}/policy")

            record(
                client,
                "graph_giveup_41_game_dep0.json",
                f"/api/sessions/{giveup}/graph",
                {"task": "41", "types": "game", "dep": 0.0},
            )
            record(client, "quality_giveup.json", f"/api/sessions/{giveup}/quality")
            record(client, "overview_giveup.json", f"/api/sessions/{giveup}/overview")
            response = client.put(
                f"/api/sessions/{giveup}/policy",
                json={"included_types": ["game", "bash", "msf"], "promote": {}},
            )
            assert response.status_code == 200
            (OUT / "policy_put_response.json").write_text(response.text, encoding="utf-8")
            record(
                client,
                "graph_giveup_41_demoted.json",
                f"/api/sessions/{giveup}/graph",
                {"task": "41", "types": "game", "dep": 0.0, "v": 2},
            )
            record(client, "policy_giveup_v2.json", f"/api/sessions/{giveup}/policy", {"v": 2})
    print("fixtures written to", OUT)


if __name__ == "__main__":
    main()
