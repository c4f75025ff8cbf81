"""Evaluation harness: matchup runs, summary metrics, and the cost sweep.

Trials are embarrassingly parallel in principle: each trial's seed is
derived independently from (master seed, trial index), so aggregation is
order-independent and a subset of trials can be reproduced in isolation.
"""

from __future__ import annotations

import csv
import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .agents import PolicyAgent
from .env.actions import (
    AttackerActionKind,
    DefenderActionKind,
)
from .env.config import EnvConfig
from .env.observe import DEFENDER, FULL_KNOWLEDGE, ZERO_KNOWLEDGE, attacker_obs_len, obs_len_for
from .episode import play_episode
from .ppo.nets import PolicyParams, policy_forward

SWEEP_FLOOR = 1e-6


class EvalSetupError(ValueError):
    """Agent and environment disagree on observation shapes."""


class TooFewSamplesError(ValueError):
    """interquartile_mean needs at least 4 scores."""


def trial_seed(master_seed: int, trial: int) -> int:
    """Independent, order-free per-trial seed."""
    return int(np.random.SeedSequence([master_seed, trial]).generate_state(1)[0])


@dataclass
class EvalReport:
    matchup: str
    n_trials: int
    config_fingerprint: str
    action_costs: dict[str, float]
    trial_seeds: list[int] = field(default_factory=list)
    defender_scores: np.ndarray | None = None
    attacker_scores: np.ndarray | None = None
    winners: list[str] = field(default_factory=list)
    attacker_action_counts: list[Counter] = field(default_factory=list)
    defender_action_counts: list[Counter] = field(default_factory=list)
    episode_lengths: list[int] = field(default_factory=list)


def _check_obs_shape(agent, env_cfg: EnvConfig, who: str) -> None:
    params = getattr(agent, "params", None)
    if params is None:
        return
    expected = obs_len_for(who, agent.obs_mode, env_cfg.n_nodes) if who == "defender" \
        else attacker_obs_len(env_cfg.n_nodes, agent.obs_mode)
    if params.obs_len != expected:
        raise EvalSetupError(
            f"{who} expects observation length {params.obs_len}, "
            f"but n_nodes={env_cfg.n_nodes} with mode {agent.obs_mode!r} provides {expected}"
        )


def run_evaluation(
    defender,
    attacker,
    n_trials: int,
    env_cfg: EnvConfig,
    seed: int,
    cost_multiplier: float = 1.0,
    matchup: str = "eval",
) -> EvalReport:
    """Evaluate frozen agents over n_trials fresh random networks."""
    _check_obs_shape(defender, env_cfg, "defender")
    _check_obs_shape(attacker, env_cfg, "attacker")

    report = EvalReport(
        matchup=matchup,
        n_trials=n_trials,
        config_fingerprint=env_cfg.fingerprint(),
        action_costs=dict(env_cfg.action_costs),
    )
    d_scores = np.zeros(n_trials)
    a_scores = np.zeros(n_trials)
    for i in range(n_trials):
        ts = trial_seed(seed, i)
        result = play_episode(env_cfg, attacker, defender, ts, cost_multiplier=cost_multiplier)
        d_scores[i] = result.defender_score
        a_scores[i] = result.attacker_score
        report.trial_seeds.append(ts)
        report.winners.append(result.winner.value)
        report.attacker_action_counts.append(result.attacker_action_counts)
        report.defender_action_counts.append(result.defender_action_counts)
        report.episode_lengths.append(result.length)
    report.defender_scores = d_scores
    report.attacker_scores = a_scores
    return report


def interquartile_mean(scores) -> float:
    """Mean of the middle 50%: drop the floor(n/4) lowest and highest."""
    x = np.sort(np.asarray(scores, dtype=np.float64))
    n = x.size
    if n < 4:
        raise TooFewSamplesError(f"need at least 4 scores, got {n}")
    k = n // 4
    return float(x[k : n - k].mean())


def score_distribution(scores, bin_count: int = 30) -> tuple[np.ndarray, np.ndarray]:
    """Density histogram (edges, densities); densities integrate to 1."""
    x = np.asarray(scores, dtype=np.float64)
    if x.size == 0:
        raise ValueError("scores must be nonempty")
    if bin_count < 1:
        raise ValueError(f"bin_count must be >= 1, got {bin_count}")
    if np.ptp(x) == 0.0:
        # degenerate range: center one unit-width bin stack on the value
        edges = np.linspace(x[0] - 0.5, x[0] + 0.5, bin_count + 1)
        densities, edges = np.histogram(x, bins=edges, density=True)
        return edges, densities
    densities, edges = np.histogram(x, bins=bin_count, density=True)
    return edges, densities


def _usage_order(player: str) -> list[str]:
    kinds = AttackerActionKind if player == "attacker" else DefenderActionKind
    return [k.value for k in kinds]


def action_usage(report: EvalReport, player: str) -> dict[str, float]:
    """Percentage of actions by kind, ordered by ascending cost."""
    if player not in ("attacker", "defender"):
        raise ValueError(f"player must be attacker or defender, got {player!r}")
    counts_list = (
        report.attacker_action_counts if player == "attacker" else report.defender_action_counts
    )
    total_counts: Counter = Counter()
    for c in counts_list:
        total_counts.update(c)
    total = sum(total_counts.values())
    if total == 0:
        raise ValueError("report contains no recorded actions")
    kinds = sorted(_usage_order(player), key=lambda k: (report.action_costs[k], k))
    return {k: 100.0 * total_counts.get(k, 0) / total for k in kinds}


@dataclass
class SweepReport:
    connectivity_values: np.ndarray
    security_values: np.ndarray
    ratios: np.ndarray  # [i, j] = connectivity_i / security_j
    mean_defender_reward: np.ndarray
    mean_attacker_reward: np.ndarray
    defender_usage: list[list[dict[str, float]]]
    action_stream_digest: list[list[str]]  # first-trial action stream digest per cell
    fixture_argmax: list[list[list[int]]]  # defender argmax on fixed obs per cell
    baseline_defender_reward: float
    baseline_stream_digest: str
    fit_slope: float
    fit_intercept: float
    fit_r2: float


def _stream_digest(config: EnvConfig, defender, attacker, seed: int, mult: float) -> str:
    """Stable digest of one episode's full per-step action stream."""
    result = play_episode(
        config, attacker, defender, seed, cost_multiplier=mult, record_transcript=True
    )
    stream = []
    for rec in result.transcript:
        if rec.get("record") != "step":
            continue
        stream.append(
            (
                rec["t"],
                rec["attacker"]["kind"],
                rec["attacker"]["target"],
                rec["defender"]["kind"],
                rec["defender"]["target"],
            )
        )
    blob = json.dumps(stream).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def _axis(resolution: int) -> np.ndarray:
    vals = np.geomspace(SWEEP_FLOOR, 1.0, resolution)
    vals[-1] = 1.0
    return np.maximum(vals, SWEEP_FLOOR)


def cost_sensitivity_sweep(
    grid_resolution: int,
    base_cfg: EnvConfig,
    trained_params: tuple[PolicyParams, PolicyParams],
    seed: int,
    trials_per_cell: int = 10,
    invalid_action_mode: str = "coerce",
) -> SweepReport:
    """Scale all action costs by connectivity/security over a log grid.

    The frozen policies never observe costs, so with per-cell seeds held
    fixed every cell replays the same episodes and rewards are exactly affine
    in the ratio; the report carries enough evidence to check that (stream
    digests, argmax on a fixed observation fixture, and a linear fit of mean
    defender reward against the ratio).

    invalid_action_mode must match the mode the policies were trained under:
    "mask" evaluates the attacker on its masked distribution, "coerce" on the
    raw head with invalid picks coerced to do-nothing.
    """
    defender_params, attacker_params = trained_params
    n = base_cfg.n_nodes
    atk_mode = (
        ZERO_KNOWLEDGE
        if attacker_params.obs_len == attacker_obs_len(n, ZERO_KNOWLEDGE)
        else FULL_KNOWLEDGE
    )
    def_mode = DEFENDER if defender_params.obs_len == obs_len_for("defender", DEFENDER, n) \
        else FULL_KNOWLEDGE
    mask = invalid_action_mode == "mask"
    defender = PolicyAgent(defender_params, "defender", def_mode)
    attacker = PolicyAgent(attacker_params, "attacker", atk_mode, mask_invalid=mask)

    conn = _axis(grid_resolution)
    sec = _axis(grid_resolution)
    ratios = conn[:, None] / sec[None, :]
    mean_def = np.zeros((grid_resolution, grid_resolution))
    mean_atk = np.zeros((grid_resolution, grid_resolution))
    usage: list[list[dict[str, float]]] = []
    digests: list[list[str]] = []
    argmaxes: list[list[list[int]]] = []

    fixture_rng = np.random.default_rng(seed)
    fixture = fixture_rng.random((8, defender_params.obs_len))

    def fixture_argmax() -> list[int]:
        return [int(np.argmax(policy_forward(defender_params, row)[0].probs)) for row in fixture]

    baseline_report = run_evaluation(
        defender, attacker, trials_per_cell, base_cfg, seed,
        cost_multiplier=1.0, matchup="sweep_baseline",
    )
    baseline_def_reward = float(baseline_report.defender_scores.mean())
    baseline_digest = _stream_digest(base_cfg, defender, attacker, trial_seed(seed, 0), 1.0)

    for i in range(grid_resolution):
        row_usage, row_digest, row_argmax = [], [], []
        for j in range(grid_resolution):
            mult = float(ratios[i, j])
            rep = run_evaluation(
                defender, attacker, trials_per_cell, base_cfg, seed,
                cost_multiplier=mult, matchup=f"sweep_{i}_{j}",
            )
            mean_def[i, j] = float(rep.defender_scores.mean())
            mean_atk[i, j] = float(rep.attacker_scores.mean())
            row_usage.append(action_usage(rep, "defender"))
            row_digest.append(_stream_digest(base_cfg, defender, attacker, trial_seed(seed, 0), mult))
            row_argmax.append(fixture_argmax())
        usage.append(row_usage)
        digests.append(row_digest)
        argmaxes.append(row_argmax)

    flat_ratio = ratios.ravel()
    flat_reward = mean_def.ravel()
    slope, intercept = np.polyfit(flat_ratio, flat_reward, 1)
    pred = slope * flat_ratio + intercept
    ss_res = float(((flat_reward - pred) ** 2).sum())
    ss_tot = float(((flat_reward - flat_reward.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot

    return SweepReport(
        connectivity_values=conn,
        security_values=sec,
        ratios=ratios,
        mean_defender_reward=mean_def,
        mean_attacker_reward=mean_atk,
        defender_usage=usage,
        action_stream_digest=digests,
        fixture_argmax=argmaxes,
        baseline_defender_reward=baseline_def_reward,
        baseline_stream_digest=baseline_digest,
        fit_slope=float(slope),
        fit_intercept=float(intercept),
        fit_r2=float(r2),
    )


# -- export ------------------------------------------------------------------

CSV_COLUMNS_FIXED = ["trial", "seed", "defender_score", "attacker_score", "winner", "episode_length"]


def _csv_columns(report: EvalReport) -> list[str]:
    atk_kinds = [f"attacker_{k}" for k in _usage_order("attacker")]
    def_kinds = [f"defender_{k}" for k in _usage_order("defender")]
    return CSV_COLUMNS_FIXED + atk_kinds + def_kinds


def export_metrics(report: EvalReport, path, format: str = "csv") -> None:
    """Write an EvalReport: per-trial CSV or JSON summary."""
    try:
        if format == "csv":
            _export_csv(report, path)
        elif format == "json_summary":
            _export_json(report, path)
        else:
            raise ValueError(f"unknown format {format!r}")
    except OSError as err:
        raise OSError(f"while writing {path}: {err}") from err


def _export_csv(report: EvalReport, path) -> None:
    cols = _csv_columns(report)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(cols)
        for i in range(report.n_trials):
            row = [
                i,
                report.trial_seeds[i],
                repr(float(report.defender_scores[i])),
                repr(float(report.attacker_scores[i])),
                report.winners[i],
                report.episode_lengths[i],
            ]
            for k in _usage_order("attacker"):
                row.append(report.attacker_action_counts[i].get(k, 0))
            for k in _usage_order("defender"):
                row.append(report.defender_action_counts[i].get(k, 0))
            writer.writerow(row)


def _export_json(report: EvalReport, path) -> None:
    edges_d, dens_d = score_distribution(report.defender_scores)
    edges_a, dens_a = score_distribution(report.attacker_scores)
    winner_counts = Counter(report.winners)
    summary = {
        "matchup": report.matchup,
        "config_fingerprint": report.config_fingerprint,
        "n_trials": report.n_trials,
        "defender": {
            "mean": float(report.defender_scores.mean()),
            "iqm": interquartile_mean(report.defender_scores),
            "histogram": {"edges": edges_d.tolist(), "densities": dens_d.tolist()},
            "action_usage": action_usage(report, "defender"),
        },
        "attacker": {
            "mean": float(report.attacker_scores.mean()),
            "iqm": interquartile_mean(report.attacker_scores),
            "histogram": {"edges": edges_a.tolist(), "densities": dens_a.tolist()},
            "action_usage": action_usage(report, "attacker"),
        },
        "win_rate": {
            "defender": winner_counts.get("defender", 0) / report.n_trials,
            "attacker": winner_counts.get("attacker", 0) / report.n_trials,
        },
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


def export_sweep(report: SweepReport, path) -> None:
    """Sweep grid as CSV, one row per cell, ratio column included."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["connectivity", "security", "ratio", "mean_defender_reward", "mean_attacker_reward"]
        )
        for i, c in enumerate(report.connectivity_values):
            for j, s in enumerate(report.security_values):
                writer.writerow([
                    repr(float(c)),
                    repr(float(s)),
                    repr(float(report.ratios[i, j])),
                    repr(float(report.mean_defender_reward[i, j])),
                    repr(float(report.mean_attacker_reward[i, j])),
                ])


def read_metrics_csv(path) -> list[dict]:
    """Re-import an exported per-trial CSV (numbers parsed back to Python types)."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            parsed: dict = dict(row)
            parsed["trial"] = int(row["trial"])
            parsed["seed"] = int(row["seed"])
            parsed["defender_score"] = float(row["defender_score"])
            parsed["attacker_score"] = float(row["attacker_score"])
            parsed["episode_length"] = int(row["episode_length"])
            for key in row:
                if key.startswith(("attacker_", "defender_")) and not key.endswith("_score"):
                    parsed[key] = int(row[key])
            rows.append(parsed)
    return rows
