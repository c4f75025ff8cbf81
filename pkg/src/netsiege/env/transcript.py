"""Episode transcripts: line-delimited JSON, one step per line, plus replay.

A transcript starts with a header record (format version, episode seed,
config fingerprint) followed by one step record per tick carrying both
actions, costs, alert events, and optional belief snapshots. Replay re-runs
the engine with the logged actions and the header seed and verifies that
every stochastic event matches the log.
"""

from __future__ import annotations

import json
from typing import Iterable

import numpy as np

from .actions import (
    AttackerAction,
    AttackerActionKind,
    DefenderAction,
    DefenderActionKind,
)
from .config import EnvConfig
from .engine import GameState, StepOutcome, init_episode, step

TRANSCRIPT_FORMAT_VERSION = 1


class ReplayMismatchError(RuntimeError):
    """A replayed episode diverged from its transcript."""


def episode_seed_streams(episode_seed) -> list[np.random.SeedSequence]:
    """Fixed 4-way split of an episode seed: init, env steps, attacker, defender.

    Accepts an int or an already-spawned SeedSequence. Pure: repeated calls
    with the same seed (or an equal SeedSequence) yield the same four streams.
    """
    if isinstance(episode_seed, np.random.SeedSequence):
        # rebuild so the caller's spawn counter neither affects nor is
        # affected by the split
        ss = np.random.SeedSequence(
            entropy=episode_seed.entropy, spawn_key=episode_seed.spawn_key
        )
    else:
        ss = np.random.SeedSequence(episode_seed)
    return ss.spawn(4)


def header_record(episode_seed: int, config: EnvConfig, cost_multiplier: float = 1.0) -> dict:
    return {
        "record": "header",
        "format_version": TRANSCRIPT_FORMAT_VERSION,
        "episode_seed": int(episode_seed),
        "n_nodes": config.n_nodes,
        "config_fingerprint": config.fingerprint(),
        "cost_multiplier": cost_multiplier,
    }


def step_record(outcome: StepOutcome, beliefs: dict | None = None) -> dict:
    rec = {
        "record": "step",
        "t": outcome.t,
        "attacker": {
            "kind": outcome.attacker_action.kind.value,
            "target": outcome.attacker_action.target,
            "coerced": outcome.attacker_coerced,
        },
        "defender": {
            "kind": outcome.defender_action.kind.value,
            "target": outcome.defender_action.target,
            "coerced": outcome.defender_coerced,
        },
        "attack_succeeded": outcome.attack_succeeded,
        "alerts": list(outcome.alert_events),
        "scan_reveals": list(outcome.scan_reveals),
        "costs": {"attacker": outcome.attacker_cost, "defender": outcome.defender_cost},
        "removed_access": outcome.removed_attacker_access,
        "winner": outcome.winner.value if outcome.winner else None,
    }
    if beliefs is not None:
        rec["beliefs"] = beliefs
    return rec


def write_transcript(records: Iterable[dict], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")


def read_transcript(path) -> list[dict]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records


def _action_from_record(rec: dict, player: str):
    sub = rec[player]
    if player == "attacker":
        return AttackerAction(AttackerActionKind(sub["kind"]), sub["target"])
    return DefenderAction(DefenderActionKind(sub["kind"]), sub["target"])


def replay_episode(config: EnvConfig, records: list[dict]) -> GameState:
    """Re-run a logged episode and verify determinism against the log.

    Feeds the logged effective actions back through step() with rng streams
    rebuilt from the header seed; raises ReplayMismatchError on the first
    divergence in alerts, costs, success flags, or winner.
    """
    if not records or records[0].get("record") != "header":
        raise ReplayMismatchError("transcript missing header record")
    header = records[0]
    if header["format_version"] != TRANSCRIPT_FORMAT_VERSION:
        raise ReplayMismatchError(f"unsupported format version {header['format_version']}")
    if header["config_fingerprint"] != config.fingerprint():
        raise ReplayMismatchError("config fingerprint does not match transcript header")
    init_ss, step_ss, _, _ = episode_seed_streams(header["episode_seed"])
    state = init_episode(config, init_ss)
    rng = np.random.default_rng(step_ss)
    mult = header.get("cost_multiplier", 1.0)

    for rec in records[1:]:
        if rec.get("record") != "step":
            continue
        a = _action_from_record(rec, "attacker")
        d = _action_from_record(rec, "defender")
        state, out = step(state, a, d, config, rng, cost_multiplier=mult)
        checks = [
            ("t", out.t, rec["t"]),
            ("alerts", list(out.alert_events), rec["alerts"]),
            ("scan_reveals", list(out.scan_reveals), rec["scan_reveals"]),
            ("attack_succeeded", out.attack_succeeded, rec["attack_succeeded"]),
            ("attacker_cost", out.attacker_cost, rec["costs"]["attacker"]),
            ("defender_cost", out.defender_cost, rec["costs"]["defender"]),
            ("removed_access", out.removed_attacker_access, rec["removed_access"]),
            ("winner", out.winner.value if out.winner else None, rec["winner"]),
        ]
        for name, got, want in checks:
            if got != want:
                raise ReplayMismatchError(
                    f"step {rec['t']}: {name} diverged (replay={got!r}, log={want!r})"
                )
    return state
