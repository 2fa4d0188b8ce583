from __future__ import annotations

import pytest

from ctfmine import (
    BehaviorProfile,
    GeneratorConfig,
    apply_policy,
    generate,
    giveup_loop_fixture,
    uneven_session_fixture,
    write_jsonl,
)
from ctfmine.ingest import GAME, TASK_COMPLETED, TRAINING_RUN_STARTED


def test_same_seed_is_byte_identical():
    a, _ = generate(GeneratorConfig(seed=42))
    b, _ = generate(GeneratorConfig(seed=42))
    assert write_jsonl(a) == write_jsonl(b)


def test_different_seeds_differ():
    a, _ = generate(GeneratorConfig(seed=1))
    b, _ = generate(GeneratorConfig(seed=2))
    assert write_jsonl(a) != write_jsonl(b)


def test_every_trainee_starts_with_training_run_started():
    events, manifest = generate(GeneratorConfig(seed=5))
    for trainee in manifest.declared_trainees:
        own = [e for e in events if e.trainee == trainee]
        assert own[0].event_type == GAME
        assert own[0].event == TRAINING_RUN_STARTED


def test_timestamps_strictly_increase_per_trainee():
    events, manifest = generate(GeneratorConfig(seed=9))
    for trainee in manifest.declared_trainees:
        times = [e.timestamp for e in events if e.trainee == trainee]
        assert all(a < b for a, b in zip(times, times[1:]))


def test_task_progression_is_legal():
    # no event of a later task before the completion of the previous one
    events, manifest = generate(GeneratorConfig(seed=3))
    order = {t: i for i, t in enumerate(manifest.puzzle_order)}
    for trainee in manifest.declared_trainees:
        completed = -1
        for e in (e for e in events if e.trainee == trainee):
            rank = order[e.task]
            assert rank <= completed + 1
            if e.event_type == GAME and e.event == TASK_COMPLETED:
                completed = max(completed, rank)


def test_degenerate_profile_is_minimal_walkthrough():
    profile = BehaviorProfile(
        hint_prob=0.0,
        wrong_flag_mean=0.0,
        giveup_prob=0.0,
        commands_per_task=(1, 1),
    )
    config = GeneratorConfig(seed=0, n_trainees=1, tasks=("41", "42"), profile=profile)
    events, _ = generate(config)
    shape = [(e.event_type == GAME, e.event if e.event_type == GAME else "cmd") for e in events]
    assert shape == [
        (True, TRAINING_RUN_STARTED),
        (False, "cmd"),
        (True, TASK_COMPLETED),
        (False, "cmd"),
        (True, TASK_COMPLETED),
    ]


def test_generated_log_maps_cleanly():
    events, manifest = generate(GeneratorConfig(seed=8))
    log = apply_policy(events, manifest)
    assert set(log.traces) == set(manifest.declared_trainees)
    assert log.event_count() == len(events)


def test_config_validation():
    with pytest.raises(ValueError):
        generate(GeneratorConfig(n_trainees=0))
    with pytest.raises(ValueError):
        generate(GeneratorConfig(tasks=()))
    with pytest.raises(ValueError):
        BehaviorProfile(hint_prob=1.5).validate()
    with pytest.raises(ValueError):
        BehaviorProfile(commands_per_task=(5, 2)).validate()


def test_giveup_fixture_shape():
    events, manifest = giveup_loop_fixture()
    assert manifest.puzzle_order == ("41",)
    assert {e.trainee for e in events} == {"user 1", "user 2", "user 3"}
    assert all(e.task == "41" for e in events)
    assert all(e.event_type == GAME for e in events)
    # two trainees loop at the solution after the correct flag
    for trainee in ("user 2", "user 3"):
        own = [e.event for e in events if e.trainee == trainee]
        assert own[-3:] == ["SolutionDisplayed", "TaskCompleted", "SolutionDisplayed"]


def test_uneven_fixture_shape():
    events, manifest = uneven_session_fixture()
    assert manifest.puzzle_order == ("43", "44", "info")
    solutions = [e for e in events if e.event == "SolutionDisplayed"]
    assert len(solutions) == 2
    assert all(e.task == "44" for e in solutions)


def test_fixtures_are_deterministic():
    assert write_jsonl(giveup_loop_fixture()[0]) == write_jsonl(giveup_loop_fixture()[0])
    assert write_jsonl(uneven_session_fixture()[0]) == write_jsonl(uneven_session_fixture()[0])
