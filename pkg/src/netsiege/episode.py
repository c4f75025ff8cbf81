"""Episode runner: drives one full game between two agents.

Seeds are split four ways per episode (network init, environment noise,
attacker rng, defender rng) so that episodes are reproducible and agents'
sampling never perturbs the environment's stochastic stream.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .beliefs import DefenderBelief, defender_presence_update
from .env.config import EnvConfig
from .env.engine import (
    GameState,
    Winner,
    attacker_utility,
    defender_reward,
    init_episode,
    step,
)
from .env.observe import DEFENDER, FULL_KNOWLEDGE, attacker_view, defender_view
from .env.transcript import episode_seed_streams, header_record, step_record


@dataclass
class EpisodeResult:
    winner: Winner
    length: int
    attacker_score: float
    defender_score: float
    attacker_cost_total: float
    defender_cost_total: float
    attacker_action_counts: Counter = field(default_factory=Counter)
    defender_action_counts: Counter = field(default_factory=Counter)
    final_state: GameState | None = None
    transcript: list[dict] | None = None


def _observe_defender(state: GameState, agent):
    if getattr(agent, "obs_mode", DEFENDER) == FULL_KNOWLEDGE:
        return attacker_view(state, FULL_KNOWLEDGE)
    return defender_view(state)


def play_episode(
    config: EnvConfig,
    attacker,
    defender,
    episode_seed,
    cost_multiplier: float = 1.0,
    record_transcript: bool = False,
    track_beliefs: bool = False,
    belief_threshold: float = 0.5,
) -> EpisodeResult:
    """Run one episode to termination and settle both players' rewards.

    Learning agents (PolicyAgent with collect=True) accumulate their
    trajectories internally; per-step rewards are the negated action costs,
    with the terminal step additionally carrying the win/lose settlement, so
    each trajectory's reward sum reconciles exactly with attacker_utility /
    defender_reward.
    """
    init_ss, step_ss, atk_ss, def_ss = episode_seed_streams(episode_seed)
    state = init_episode(config, init_ss)
    env_rng = np.random.default_rng(step_ss)
    attacker.reset(np.random.default_rng(atk_ss))
    defender.reset(np.random.default_rng(def_ss))

    attacker_costs: list[float] = []
    defender_costs: list[float] = []
    atk_counts: Counter = Counter()
    def_counts: Counter = Counter()
    records: list[dict] | None = None
    belief = None
    if record_transcript:
        seed_int = episode_seed if isinstance(episode_seed, int) else -1
        records = [header_record(seed_int, config, cost_multiplier)]
    if track_beliefs:
        belief = DefenderBelief(
            detect_prob=config.detect_prob,
            false_positive_prob=config.false_positive_prob,
            threshold=belief_threshold,
        )

    while state.terminated is None:
        atk_obs = attacker_view(state, attacker.obs_mode)
        def_obs = _observe_defender(state, defender)
        a_action = attacker.act(atk_obs)
        d_action = defender.act(def_obs)
        state, outcome = step(state, a_action, d_action, config, env_rng, cost_multiplier)

        attacker.notify(outcome)
        defender.notify(outcome)
        attacker_costs.append(outcome.attacker_cost)
        defender_costs.append(outcome.defender_cost)
        atk_counts[outcome.attacker_action.kind.value] += 1
        def_counts[outcome.defender_action.kind.value] += 1

        done = outcome.winner is not None
        atk_reward = -outcome.attacker_cost
        def_reward = -outcome.defender_cost
        if done:
            # settle terminal payouts on top of the final step's costs
            atk_reward += config.node_value * len(state.compromised_set)
            atk_reward += (
                config.win_reward if outcome.winner is Winner.ATTACKER else config.lose_reward
            )
            if outcome.winner is Winner.DEFENDER:
                def_reward += config.win_reward
            else:
                def_reward += config.lose_reward * (1.0 - state.t / config.max_timesteps)
        if hasattr(attacker, "record_reward"):
            attacker.record_reward(atk_reward, done)
        if hasattr(defender, "record_reward"):
            defender.record_reward(def_reward, done)

        if belief is not None:
            belief = defender_presence_update(
                belief, len(outcome.alert_events), config.n_nodes, state.t
            )
        if records is not None:
            snapshot = None
            if belief is not None:
                snapshot = {"defender_mu": belief.mu}
                agent_belief = getattr(attacker, "belief", None)
                if agent_belief is not None:
                    snapshot["attacker_mu_hat"] = agent_belief.mu_hat
                    snapshot["attacker_gamma"] = agent_belief.gamma
            records.append(step_record(outcome, snapshot))

    atk_score = attacker_utility(state, attacker_costs, config)
    def_score = defender_reward(
        state.terminated, state.t, config.max_timesteps, defender_costs, config
    )
    return EpisodeResult(
        winner=state.terminated,
        length=state.t,
        attacker_score=atk_score,
        defender_score=def_score,
        attacker_cost_total=float(np.sum(attacker_costs)),
        defender_cost_total=float(np.sum(defender_costs)),
        attacker_action_counts=atk_counts,
        defender_action_counts=def_counts,
        final_state=state,
        transcript=records,
    )
