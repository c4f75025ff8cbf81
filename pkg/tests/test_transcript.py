"""Transcript serialization and deterministic replay."""

from __future__ import annotations

import numpy as np
import pytest

from netsiege.agents import NSARedAttacker, NullDefender
from netsiege.env import (
    EnvConfig,
    ReplayMismatchError,
    episode_seed_streams,
    read_transcript,
    replay_episode,
    write_transcript,
)
from netsiege.episode import play_episode


def small_cfg() -> EnvConfig:
    return EnvConfig(
        n_nodes=8,
        connectivity=0.5,
        max_timesteps=60,
        detect_prob=0.5,
        false_positive_prob=0.05,
    )


def recorded_episode(seed=31):
    cfg = small_cfg()
    result = play_episode(
        cfg,
        NSARedAttacker(win_fraction=cfg.attacker_win_fraction),
        NullDefender(),
        episode_seed=seed,
        record_transcript=True,
    )
    return cfg, result


def test_seed_streams_are_stable_and_distinct():
    a = episode_seed_streams(99)
    b = episode_seed_streams(99)
    assert len(a) == 4
    states = [np.random.default_rng(s).integers(0, 2**31) for s in a]
    states_b = [np.random.default_rng(s).integers(0, 2**31) for s in b]
    assert states == states_b
    assert len(set(states)) == 4


def test_transcript_round_trip(tmp_path):
    cfg, result = recorded_episode()
    path = tmp_path / "episode.jsonl"
    write_transcript(result.transcript, path)
    loaded = read_transcript(path)
    assert loaded == result.transcript
    assert loaded[0]["record"] == "header"
    assert loaded[0]["config_fingerprint"] == cfg.fingerprint()
    assert all(rec["record"] == "step" for rec in loaded[1:])
    assert [rec["t"] for rec in loaded[1:]] == list(range(1, len(loaded)))


def test_replay_reproduces_episode():
    cfg, result = recorded_episode()
    final = replay_episode(cfg, result.transcript)
    assert final.terminated is not None
    assert final.terminated.value == result.winner.value
    assert final.t == result.length


def test_replay_detects_tampered_alerts():
    cfg, result = recorded_episode()
    records = [dict(r) for r in result.transcript]
    victim = next(r for r in records if r["record"] == "step")
    victim["alerts"] = list(victim["alerts"]) + [0] if not victim["alerts"] else []
    with pytest.raises(ReplayMismatchError):
        replay_episode(cfg, records)


def test_replay_detects_wrong_config():
    cfg, result = recorded_episode()
    other = EnvConfig(
        n_nodes=8,
        connectivity=0.5,
        max_timesteps=61,  # differs
        detect_prob=0.5,
        false_positive_prob=0.05,
    )
    with pytest.raises(ReplayMismatchError):
        replay_episode(other, result.transcript)


def test_replay_requires_header():
    cfg, result = recorded_episode()
    with pytest.raises(ReplayMismatchError):
        replay_episode(cfg, result.transcript[1:])


def test_replay_rejects_future_format():
    cfg, result = recorded_episode()
    records = [dict(result.transcript[0]), *result.transcript[1:]]
    records[0]["format_version"] = 999
    with pytest.raises(ReplayMismatchError):
        replay_episode(cfg, records)


def test_belief_snapshots_recorded_when_tracked():
    cfg = small_cfg()
    result = play_episode(
        cfg,
        NSARedAttacker(win_fraction=cfg.attacker_win_fraction),
        NullDefender(),
        episode_seed=7,
        record_transcript=True,
        track_beliefs=True,
    )
    steps = [r for r in result.transcript if r["record"] == "step"]
    assert all("beliefs" in r for r in steps)
    mus = [r["beliefs"]["defender_mu"] for r in steps]
    assert all(0.0 <= m <= 1.0 for m in mus)
