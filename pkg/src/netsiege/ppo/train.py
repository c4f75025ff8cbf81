"""Dual-agent training scenarios.

Four scenarios differ only in information models and in who learns:
optimistic (zero-knowledge attacker vs learning defender), pessimistic
(full-knowledge attacker vs learning defender), best_case (learning attacker
vs a do-nothing defender), worst_case (learning attacker vs a learning
defender that sees the full-knowledge view). Both learners collect their own
rollouts and update independently; nothing is shared beyond the public game
state each is allowed to observe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..env.actions import attacker_action_count, defender_action_count
from ..env.config import EnvConfig
from ..env.observe import DEFENDER, FULL_KNOWLEDGE, ZERO_KNOWLEDGE, attacker_obs_len, obs_len_for
from .nets import PolicyParams, init_policy_params
from .update import PPOConfig, ppo_update

SCENARIOS = ("optimistic", "pessimistic", "best_case", "worst_case")

# attacker information model per scenario; best/worst may be overridden
SCENARIO_ATTACKER_MODE = {
    "optimistic": ZERO_KNOWLEDGE,
    "pessimistic": FULL_KNOWLEDGE,
    "best_case": ZERO_KNOWLEDGE,
    "worst_case": ZERO_KNOWLEDGE,
}


@dataclass
class CurveRow:
    episode: int
    attacker_reward: float
    defender_reward: float
    episode_length: int
    winner: str


@dataclass
class TrainResult:
    scenario: str
    attacker: PolicyParams
    defender: PolicyParams | None
    curves: list[CurveRow]


def train_dual(
    scenario: str,
    env_cfg: EnvConfig,
    ppo_cfg: PPOConfig,
    seed: int,
    attacker_mode: str | None = None,
) -> TrainResult:
    """Train the scenario's learning agents for ppo_cfg.training_episodes.

    Returns final parameters for both sides (defender None in best_case,
    where the defender is scripted) plus per-episode reward curves. Fully
    deterministic in (seed, configs).
    """
    # imported here: agents depends on ppo.nets, so a module-level import
    # would close a cycle through the package __init__
    from ..agents import NullDefender, PolicyAgent
    from ..episode import play_episode

    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}, expected one of {SCENARIOS}")
    atk_mode = attacker_mode or SCENARIO_ATTACKER_MODE[scenario]
    if scenario == "optimistic" and atk_mode != ZERO_KNOWLEDGE:
        raise ValueError("optimistic scenario is defined by a zero-knowledge attacker")
    if scenario == "pessimistic" and atk_mode != FULL_KNOWLEDGE:
        raise ValueError("pessimistic scenario is defined by a full-knowledge attacker")

    n = env_cfg.n_nodes
    root = np.random.SeedSequence(seed)
    atk_init_ss, def_init_ss, episodes_ss, update_ss = root.spawn(4)
    update_rng = np.random.default_rng(update_ss)

    scenario_tag = scenario if attacker_mode is None else f"{scenario}:{atk_mode}"
    atk_params = init_policy_params(
        attacker_obs_len(n, atk_mode),
        attacker_action_count(n),
        np.random.default_rng(atk_init_ss),
        hidden_sizes=ppo_cfg.hidden_sizes,
        scenario=scenario_tag,
        role="attacker",
    )
    mask = ppo_cfg.invalid_action_mode == "mask"
    attacker = PolicyAgent(atk_params, "attacker", atk_mode, collect=True, mask_invalid=mask)

    defender_learns = scenario != "best_case"
    def_obs_mode = FULL_KNOWLEDGE if scenario == "worst_case" else DEFENDER
    if defender_learns:
        def_params = init_policy_params(
            obs_len_for("defender", def_obs_mode, n),
            defender_action_count(n),
            np.random.default_rng(def_init_ss),
            hidden_sizes=ppo_cfg.hidden_sizes,
            scenario=scenario_tag,
            role="defender",
        )
        defender = PolicyAgent(def_params, "defender", def_obs_mode, collect=True, mask_invalid=mask)
    else:
        def_params = None
        defender = NullDefender()

    curves: list[CurveRow] = []
    atk_batch, def_batch = [], []
    episode_seeds = episodes_ss.spawn(ppo_cfg.training_episodes)

    for ep, ep_ss in enumerate(episode_seeds):
        result = play_episode(env_cfg, attacker, defender, ep_ss)
        curves.append(
            CurveRow(
                episode=ep,
                attacker_reward=result.attacker_score,
                defender_reward=result.defender_score,
                episode_length=result.length,
                winner=result.winner.value,
            )
        )
        atk_batch.append(attacker.trajectory)
        if defender_learns:
            def_batch.append(defender.trajectory)

        if (ep + 1) % ppo_cfg.rollout_episodes == 0:
            attacker.params = ppo_update(attacker.params, atk_batch, ppo_cfg, update_rng)
            atk_batch = []
            if defender_learns:
                defender.params = ppo_update(defender.params, def_batch, ppo_cfg, update_rng)
                def_batch = []

    final_def = defender.params if defender_learns else None
    return TrainResult(
        scenario=scenario,
        attacker=attacker.params,
        defender=final_def,
        curves=curves,
    )
