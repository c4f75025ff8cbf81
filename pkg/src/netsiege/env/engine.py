"""Game engine: episode state, simultaneous-move step resolution, rewards.

Both players submit an action each tick. The attacker's action resolves
first, then the defender's, so a Restore lands on the post-attack state
(a same-tick Restore cleans a just-compromised node). Alert noise is
injected after both resolutions, then time advances and termination is
checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .actions import (
    AttackerAction,
    AttackerActionKind,
    DefenderAction,
    DefenderActionKind,
)
from .config import EnvConfig
from .graph import VULN_FLOOR, NetworkGraph, generate_network


class EpisodeTerminatedError(RuntimeError):
    """An action was submitted to an already-terminated episode."""


class Winner(str, Enum):
    ATTACKER = "attacker"
    DEFENDER = "defender"


@dataclass
class GameState:
    """Single-owner mutable episode state.

    compromised_set mirrors the per-node true_compromise flags exactly;
    helpers below keep the two in sync.
    """

    graph: NetworkGraph
    attacker_host: int
    compromised_set: set[int] = field(default_factory=set)
    t: int = 0
    attacker_executed: bool = False
    terminated: Winner | None = None

    @property
    def n(self) -> int:
        return self.graph.n

    def accessible_frontier(self) -> list[int]:
        """Uncompromised nodes adjacent to at least one compromised node, sorted."""
        frontier: set[int] = set()
        for v in self.compromised_set:
            frontier.update(self.graph.neighbors(v))
        frontier -= self.compromised_set
        return sorted(frontier)

    def _compromise(self, v: int) -> None:
        self.graph.nodes[v].true_compromise = True
        self.compromised_set.add(v)

    def _clear(self, v: int) -> None:
        self.graph.nodes[v].true_compromise = False
        self.compromised_set.discard(v)


@dataclass(frozen=True)
class StepOutcome:
    """Everything observable about one resolved tick.

    alert_events lists nodes whose alert process fired this tick (the sticky
    visible_alert flag may already have been set earlier); scan_reveals lists
    compromised nodes exposed by a Scan, kept separate so noise-rate
    estimators are not contaminated.
    """

    t: int
    attacker_action: AttackerAction
    defender_action: DefenderAction
    attacker_coerced: bool
    defender_coerced: bool
    attacker_cost: float
    defender_cost: float
    attack_succeeded: bool | None
    alert_events: tuple[int, ...]
    scan_reveals: tuple[int, ...]
    removed_attacker_access: bool
    winner: Winner | None


def init_episode(config: EnvConfig, rng_seed) -> GameState:
    """Generate a fresh network and seat the attacker on its entry node."""
    graph = generate_network(
        config.n_nodes, config.connectivity, rng_seed, config.initial_vuln_range
    )
    state = GameState(graph=graph, attacker_host=graph.attacker_entry)
    state._compromise(graph.attacker_entry)
    return state


def _coerce_attacker(state: GameState, action: AttackerAction) -> tuple[AttackerAction, bool]:
    """Invalid targets degrade to a flagged, zero-cost DoNothing."""
    kind = action.kind
    if kind in (AttackerActionKind.BASIC_ATTACK, AttackerActionKind.ZERO_DAY):
        frontier = state.accessible_frontier()
        if action.target not in frontier:
            return AttackerAction(AttackerActionKind.DO_NOTHING), True
    elif kind is AttackerActionKind.MOVE:
        if action.target not in state.compromised_set or action.target == state.attacker_host:
            return AttackerAction(AttackerActionKind.DO_NOTHING), True
    return action, False


def _coerce_defender(state: GameState, action: DefenderAction) -> tuple[DefenderAction, bool]:
    if action.target is not None and not (0 <= action.target < state.n):
        return DefenderAction(DefenderActionKind.DO_NOTHING), True
    return action, False


def inject_noise(
    state: GameState,
    detect_prob: float,
    false_positive_prob: float,
    attacker_acted_on: int | None,
    rng: np.random.Generator,
) -> list[int]:
    """Fire the per-tick alert processes and set sticky visible_alert flags.

    Every node raises a false positive with probability q; the node the
    attacker acted on additionally trips detection with probability p,
    for a combined p + q - pq. Mutates state in place and returns the
    indices that fired this tick (re-fires on already-flagged nodes count).
    """
    fired: list[int] = []
    u = rng.random(state.n)
    for i in range(state.n):
        hit = u[i] < false_positive_prob
        if i == attacker_acted_on:
            hit = hit or (rng.random() < detect_prob)
        if hit:
            state.graph.nodes[i].visible_alert = True
            fired.append(i)
    return fired


def check_termination(state: GameState, config: EnvConfig) -> Winner | None:
    """Termination rules, checked in precedence order.

    The adversary being eliminated outranks a same-tick Execute (an attacker
    holding nothing realizes nothing); Execute and the compromised-fraction
    threshold outrank the timeout.
    """
    if not state.compromised_set:
        return Winner.DEFENDER
    if state.attacker_executed:
        return Winner.ATTACKER
    if len(state.compromised_set) > config.attacker_win_fraction * state.n:
        return Winner.ATTACKER
    if state.t >= config.max_timesteps:
        return Winner.DEFENDER
    return None


def step(
    state: GameState,
    attacker_action: AttackerAction,
    defender_action: DefenderAction,
    config: EnvConfig,
    rng: np.random.Generator,
    cost_multiplier: float = 1.0,
) -> tuple[GameState, StepOutcome]:
    """Resolve one simultaneous tick. Mutates and returns state plus the outcome.

    rng draws happen in a fixed order (attack roll, scan rolls over sorted
    compromised nodes, per-node noise rolls), so replaying logged actions with
    the same seed reproduces the episode exactly.
    """
    if state.terminated is not None:
        raise EpisodeTerminatedError(f"episode already ended: {state.terminated.value} won")

    eff_a, a_coerced = _coerce_attacker(state, attacker_action)
    attack_succeeded: bool | None = None
    if eff_a.kind is AttackerActionKind.BASIC_ATTACK:
        node = state.graph.nodes[eff_a.target]
        attack_succeeded = bool(rng.random() < node.vulnerability)
        if attack_succeeded:
            state._compromise(eff_a.target)
    elif eff_a.kind is AttackerActionKind.ZERO_DAY:
        state._compromise(eff_a.target)
        attack_succeeded = True
    elif eff_a.kind is AttackerActionKind.MOVE:
        state.attacker_host = eff_a.target
    elif eff_a.kind is AttackerActionKind.EXECUTE:
        state.attacker_executed = True
    attacker_cost = config.cost(eff_a.kind) * cost_multiplier

    eff_d, d_coerced = _coerce_defender(state, defender_action)
    compromised_before_defense = set(state.compromised_set)
    frontier_before_defense = state.accessible_frontier()
    scan_reveals: list[int] = []
    if eff_d.kind is DefenderActionKind.REDUCE_VULNERABILITY:
        node = state.graph.nodes[eff_d.target]
        node.vulnerability = max(VULN_FLOOR, node.vulnerability - config.reduce_vuln_amount)
    elif eff_d.kind is DefenderActionKind.MAKE_NODE_SAFE:
        state.graph.nodes[eff_d.target].vulnerability = VULN_FLOOR
    elif eff_d.kind is DefenderActionKind.RESTORE_NODE:
        target = eff_d.target
        state.graph.nodes[target].reset()
        state._clear(target)
        if state.attacker_host == target and state.compromised_set:
            state.attacker_host = min(state.compromised_set)
    elif eff_d.kind is DefenderActionKind.SCAN:
        for v in sorted(state.compromised_set):
            if rng.random() < config.scan_detect_prob:
                state.graph.nodes[v].visible_alert = True
                scan_reveals.append(v)
    # "removed access": a Restore struck a held node, or the defender's move
    # left a previously nonempty frontier empty. This is the attacker-visible
    # remediation signal.
    removed_access = (
        eff_d.kind is DefenderActionKind.RESTORE_NODE
        and eff_d.target in compromised_before_defense
    ) or (
        eff_d.kind is not DefenderActionKind.DO_NOTHING
        and bool(frontier_before_defense)
        and not state.accessible_frontier()
    )
    defender_cost = config.cost(eff_d.kind) * cost_multiplier

    acted_on = eff_a.target if eff_a.kind in (
        AttackerActionKind.BASIC_ATTACK,
        AttackerActionKind.ZERO_DAY,
        AttackerActionKind.MOVE,
    ) else None
    fired = inject_noise(
        state, config.detect_prob, config.false_positive_prob, acted_on, rng
    )

    state.t += 1
    winner = check_termination(state, config)
    state.terminated = winner

    outcome = StepOutcome(
        t=state.t,
        attacker_action=eff_a,
        defender_action=eff_d,
        attacker_coerced=a_coerced,
        defender_coerced=d_coerced,
        attacker_cost=attacker_cost,
        defender_cost=defender_cost,
        attack_succeeded=attack_succeeded,
        alert_events=tuple(fired),
        scan_reveals=tuple(scan_reveals),
        removed_attacker_access=removed_access,
        winner=winner,
    )
    return state, outcome


def attacker_utility(state: GameState, cost_ledger: list[float], config: EnvConfig) -> float:
    """Terminal attacker payoff: node value held, minus spend, plus win/lose bonus."""
    if state.terminated is None:
        raise ValueError("attacker_utility requires a terminated episode")
    base = config.node_value * len(state.compromised_set) - float(np.sum(cost_ledger))
    bonus = config.win_reward if state.terminated is Winner.ATTACKER else config.lose_reward
    return base + bonus


def defender_reward(
    outcome: Winner,
    t: int,
    max_timesteps: int,
    cost_ledger: list[float],
    config: EnvConfig,
) -> float:
    """Terminal defender payoff. Losing late is penalized less than losing early."""
    spend = float(np.sum(cost_ledger))
    if outcome is Winner.DEFENDER:
        return config.win_reward - spend
    return config.lose_reward * (1.0 - t / max_timesteps) - spend
