from __future__ import annotations

import sys

import pytest

from ctfmine import apply_policy, giveup_loop_fixture, parse_log, uneven_session_fixture

# Two-user, four-event snippet mirroring the native JSONL layout: a pair
# of hints, one Metasploit command and one bash command on task 41.
SNIPPET_JSONL = "\n".join(
    [
        '{"type": "game", "event": "HintTaken 41-1", "params": [], "timestamp": "2020-05-14T10:16:11+00:00", "trainee": "user 1", "task": "41"}',
        '{"type": "game", "event": "HintTaken 41-2", "params": [], "timestamp": "2020-05-14T10:16:34+00:00", "trainee": "user 1", "task": "41"}',
        '{"type": "msf", "event": "exploit", "params": ["-j"], "timestamp": "2020-05-14T10:18:23+00:00", "trainee": "user 2", "task": "41"}',
        '{"type": "bash", "event": "nmap", "params": ["-sL", "10.1.26.9:5050"], "timestamp": "2020-05-14T10:32:16+00:00", "trainee": "user 1", "task": "41"}',
    ]
)

SNIPPET_CSV = "\n".join(
    [
        "game,HintTaken 41-1,,2020-05-14 10:16:11,user 1,41",
        "game,HintTaken 41-2,,2020-05-14 10:16:34,user 1,41",
        "msf,exploit,-j,2020-05-14 10:18:23,user 2,41",
        "bash,nmap,-sL 10.1.26.9:5050,2020-05-14 10:32:16,user 1,41",
    ]
)


@pytest.fixture
def snippet_events():
    events, warnings = parse_log(SNIPPET_JSONL)
    assert not warnings
    return events


@pytest.fixture
def giveup_log():
    events, manifest = giveup_loop_fixture()
    return apply_policy(events, manifest)


@pytest.fixture
def uneven_log():
    events, manifest = uneven_session_fixture()
    return apply_policy(events, manifest)


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        outcome = "PASS" if report.passed else "FAIL"
        name = report.nodeid.split("::")[-1]
        print(f"[acceptance] {name}: {outcome}", file=sys.stderr)
