"""Deterministic synthetic session generator plus scripted scenario
fixtures used throughout the test suite.

Randomness comes from ``random.Random`` (MT19937) seeded with the config
seed, so identical seeds reproduce identical logs on any platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

from .ingest import (
    GAME,
    BASH,
    MSF,
    HINT_TAKEN,
    SOLUTION_DISPLAYED,
    TASK_COMPLETED,
    TRAINING_RUN_STARTED,
    WRONG_FLAG_SUBMITTED,
    RawEvent,
    SessionManifest,
)

HINTS_PER_TASK = 2

BASH_COMMANDS = (
    ("nmap", ("-sL", "10.1.26.9:5050")),
    ("nmap", ("-sV", "10.1.26.9")),
    ("ssh", ("root@172.18.1.5",)),
    ("ssh", ("admin@172.18.1.5",)),
    ("ls", ("-la",)),
    ("cat", ("flag.txt",)),
    ("curl", ("http://10.1.26.9:8080",)),
)

MSF_COMMANDS = (
    ("exploit", ("-j",)),
    ("search", ("vsftpd",)),
    ("use", ("exploit/unix/ftp/vsftpd_234_backdoor",)),
    ("set", ("RHOSTS", "10.1.26.9")),
    ("sessions", ("-l",)),
)


@dataclass(frozen=True)
class BehaviorProfile:
    """Knobs shaping one simulated trainee's gameplay per task."""

    hint_prob: float = 0.5
    wrong_flag_mean: float = 0.6
    giveup_prob: float = 0.15
    commands_per_task: tuple[int, int] = (12, 22)
    think_time: tuple[float, float] = (30.0, 110.0)
    msf_share: float = 0.3

    def validate(self) -> None:
        for name in ("hint_prob", "giveup_prob", "msf_share"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if self.wrong_flag_mean < 0:
            raise ValueError("wrong_flag_mean must be >= 0")
        for name in ("commands_per_task", "think_time"):
            lo, hi = getattr(self, name)
            if lo < 0 or hi < lo:
                raise ValueError(f"{name} range must be non-negative and ordered")


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    n_trainees: int = 10
    tasks: tuple[str, ...] = ("41", "42", "43", "44", "45")
    duration_target: float = 119.0  # minutes; met by the default think_time
    profile: BehaviorProfile = BehaviorProfile()

    def validate(self) -> None:
        if self.n_trainees < 1:
            raise ValueError("n_trainees must be >= 1")
        if not self.tasks:
            raise ValueError("tasks must be non-empty")
        self.profile.validate()


_BASE_START = datetime(2020, 5, 14, 10, 0, 0, tzinfo=timezone.utc)


def _wrong_flag_count(rng: random.Random, mean: float) -> int:
    # Two Bernoulli trials with p = mean/2: bounded support {0, 1, 2}
    # whose expectation equals the configured mean (for mean <= 2).
    p = min(mean / 2.0, 1.0)
    return sum(1 for _ in range(2) if rng.random() < p)


def generate(config: GeneratorConfig | None = None) -> tuple[list[RawEvent], SessionManifest]:
    """Generate one synthetic session; a pure function of the config.

    Every trainee starts with TrainingRunStarted, progresses task by task
    (solution display allowed before the completing flag), and timestamps
    strictly increase per trainee.
    """
    config = config if config is not None else GeneratorConfig()
    config.validate()
    rng = random.Random(config.seed)
    profile = config.profile
    width = len(str(config.n_trainees))
    trainees = [f"trainee-{i + 1:0{width}d}" for i in range(config.n_trainees)]

    events: list[RawEvent] = []
    for index, trainee in enumerate(trainees):
        clock = _BASE_START + timedelta(seconds=index * 13)

        def emit(event_type: str, event: str, params: tuple[str, ...], task: str) -> None:
            nonlocal clock
            gap_ms = max(1, round(rng.uniform(*profile.think_time) * 1000))
            clock = clock + timedelta(milliseconds=gap_ms)
            events.append(RawEvent(event_type, event, params, clock, trainee, task))

        def emit_command(task: str) -> None:
            if rng.random() < profile.msf_share:
                name, args = MSF_COMMANDS[rng.randrange(len(MSF_COMMANDS))]
                emit(MSF, name, args, task)
            else:
                name, args = BASH_COMMANDS[rng.randrange(len(BASH_COMMANDS))]
                emit(BASH, name, args, task)

        emit(GAME, TRAINING_RUN_STARTED, (), config.tasks[0])
        for task in config.tasks:
            hints = [n for n in range(1, HINTS_PER_TASK + 1) if rng.random() < profile.hint_prob]
            n_commands = rng.randint(*profile.commands_per_task)
            if hints:
                emit(GAME, HINT_TAKEN, (f"{task}-{hints[0]}",), task)
            for i in range(n_commands):
                if i == n_commands // 2 and len(hints) > 1:
                    emit(GAME, HINT_TAKEN, (f"{task}-{hints[1]}",), task)
                emit_command(task)
            for _ in range(_wrong_flag_count(rng, profile.wrong_flag_mean)):
                emit(GAME, WRONG_FLAG_SUBMITTED, (), task)
            if rng.random() < profile.giveup_prob:
                emit(GAME, SOLUTION_DISPLAYED, (), task)
            emit(GAME, TASK_COMPLETED, (), task)

    events.sort(key=lambda e: (e.timestamp, e.trainee))
    manifest = SessionManifest(
        session_id=f"synth-{config.seed}",
        game_id="synthetic-ctf",
        puzzle_order=config.tasks,
        declared_trainees=tuple(trainees),
    )
    return events, manifest


def _scripted(
    trainee: str, start: datetime, script: list[tuple[str, str, tuple[str, ...], str]]
) -> list[RawEvent]:
    events = []
    clock = start
    for i, (event_type, event, params, task) in enumerate(script):
        events.append(RawEvent(event_type, event, params, clock, trainee, task))
        clock = clock + timedelta(seconds=60 + (i % 3) * 25)
    return events


def giveup_loop_fixture() -> tuple[list[RawEvent], SessionManifest]:
    """One hard puzzle, three trainees, all game events.

    Everyone takes both hints. One trainee submits a wrong flag before the
    correct one. Two give up: they display the solution, submit the
    correct flag, and the platform redirects them back to the solution
    page, so their traces end looping at the solution instead of the
    completion.
    """
    t41 = "41"

    def at(h: int, m: int, s: int) -> datetime:
        return datetime(2020, 5, 14, h, m, s, tzinfo=timezone.utc)

    events = [
        RawEvent(GAME, HINT_TAKEN, ("41-1",), at(10, 16, 11), "user 1", t41),
        RawEvent(GAME, HINT_TAKEN, ("41-2",), at(10, 16, 34), "user 1", t41),
        RawEvent(GAME, WRONG_FLAG_SUBMITTED, (), at(10, 19, 5), "user 1", t41),
        RawEvent(GAME, TASK_COMPLETED, (), at(10, 21, 40), "user 1", t41),
        RawEvent(GAME, HINT_TAKEN, ("41-1",), at(10, 15, 58), "user 2", t41),
        RawEvent(GAME, HINT_TAKEN, ("41-2",), at(10, 17, 22), "user 2", t41),
        RawEvent(GAME, SOLUTION_DISPLAYED, (), at(10, 20, 10), "user 2", t41),
        RawEvent(GAME, TASK_COMPLETED, (), at(10, 22, 31), "user 2", t41),
        RawEvent(GAME, SOLUTION_DISPLAYED, (), at(10, 22, 32), "user 2", t41),
        RawEvent(GAME, HINT_TAKEN, ("41-1",), at(10, 16, 45), "user 3", t41),
        RawEvent(GAME, HINT_TAKEN, ("41-2",), at(10, 18, 3), "user 3", t41),
        RawEvent(GAME, SOLUTION_DISPLAYED, (), at(10, 21, 15), "user 3", t41),
        RawEvent(GAME, TASK_COMPLETED, (), at(10, 23, 47), "user 3", t41),
        RawEvent(GAME, SOLUTION_DISPLAYED, (), at(10, 23, 48), "user 3", t41),
    ]
    manifest = SessionManifest(
        session_id="giveup-loop",
        game_id="junior-ctf",
        puzzle_order=(t41,),
        declared_trainees=("user 1", "user 2", "user 3"),
    )
    return events, manifest


def uneven_session_fixture() -> tuple[list[RawEvent], SessionManifest]:
    """Three puzzles of very different weight for overview drill-down.

    Task 44 carries the most distinct activities (commands included) and
    the only displayed solutions; task 43 is routine; the info puzzle is a
    single completion.
    """
    scripts = {
        "user 1": [
            (GAME, TRAINING_RUN_STARTED, (), "43"),
            (BASH, "nmap", ("-sL", "10.1.26.9:5050"), "43"),
            (GAME, TASK_COMPLETED, (), "43"),
            (BASH, "nmap", ("-sV", "10.1.26.9"), "44"),
            (BASH, "ssh", ("root@172.18.1.5",), "44"),
            (MSF, "exploit", ("-j",), "44"),
            (GAME, HINT_TAKEN, ("44-1",), "44"),
            (GAME, WRONG_FLAG_SUBMITTED, (), "44"),
            (GAME, TASK_COMPLETED, (), "44"),
            (GAME, TASK_COMPLETED, (), "info"),
        ],
        "user 2": [
            (GAME, TRAINING_RUN_STARTED, (), "43"),
            (BASH, "nmap", ("-sL", "10.1.26.9:5050"), "43"),
            (GAME, TASK_COMPLETED, (), "43"),
            (BASH, "nmap", ("-sV", "10.1.26.9"), "44"),
            (BASH, "ssh", ("admin@172.18.1.5",), "44"),
            (MSF, "search", ("vsftpd",), "44"),
            (GAME, HINT_TAKEN, ("44-1",), "44"),
            (GAME, SOLUTION_DISPLAYED, (), "44"),
            (GAME, TASK_COMPLETED, (), "44"),
            (GAME, TASK_COMPLETED, (), "info"),
        ],
        "user 3": [
            (GAME, TRAINING_RUN_STARTED, (), "43"),
            (GAME, TASK_COMPLETED, (), "43"),
            (BASH, "nmap", ("-sV", "10.1.26.9"), "44"),
            (MSF, "exploit", ("-j",), "44"),
            (GAME, SOLUTION_DISPLAYED, (), "44"),
            (GAME, TASK_COMPLETED, (), "44"),
            (GAME, TASK_COMPLETED, (), "info"),
        ],
    }
    events: list[RawEvent] = []
    for i, (trainee, script) in enumerate(scripts.items()):
        start = _BASE_START + timedelta(seconds=30 * i)
        events.extend(_scripted(trainee, start, script))
    events.sort(key=lambda e: (e.timestamp, e.trainee))
    manifest = SessionManifest(
        session_id="uneven-session",
        game_id="junior-ctf",
        puzzle_order=("43", "44", "info"),
        declared_trainees=tuple(scripts),
    )
    return events, manifest
