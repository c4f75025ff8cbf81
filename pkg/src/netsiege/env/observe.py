"""Observation builders for each information model.

Three views exist: the defender sees alerts, vulnerabilities, and topology
(never true compromise); a zero-knowledge attacker sees only its own
holdings and the frontier, with everything else masked to a sentinel; a
full-knowledge attacker sees the union of both players' channels. The
worst-case defender variant trains on the full-knowledge view.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import GameState

SENTINEL = -1.0

ZERO_KNOWLEDGE = "zero_knowledge"
FULL_KNOWLEDGE = "full_knowledge"
DEFENDER = "defender"


def defender_obs_len(n: int) -> int:
    return 2 * n + n * (n - 1) // 2


def attacker_obs_len(n: int, mode: str) -> int:
    if mode == ZERO_KNOWLEDGE:
        return 3 * n
    if mode == FULL_KNOWLEDGE:
        return 4 * n + n * (n - 1) // 2
    raise ValueError(f"unknown attacker observation mode: {mode!r}")


def obs_len_for(role: str, mode: str | None, n: int) -> int:
    if role == "defender":
        if mode in (None, DEFENDER):
            return defender_obs_len(n)
        if mode == FULL_KNOWLEDGE:  # worst-case defender sees both spaces
            return attacker_obs_len(n, FULL_KNOWLEDGE)
        raise ValueError(f"unknown defender observation mode: {mode!r}")
    if role == "attacker":
        return attacker_obs_len(n, mode)
    raise ValueError(f"unknown role: {role!r}")


@dataclass(frozen=True)
class DefenderObservation:
    """Per-node [alert, vulnerability] channels plus flattened topology."""

    alerts: np.ndarray
    vulnerability: np.ndarray
    adjacency: np.ndarray

    def vector(self) -> np.ndarray:
        return np.concatenate([self.alerts, self.vulnerability, self.adjacency])


@dataclass(frozen=True)
class AttackerObservation:
    """Per-node channels under one of the two attacker information models.

    zero_knowledge: [compromised, accessible, vulnerability], where the
    vulnerability channel is always SENTINEL and nodes outside the attacker's
    view (neither held nor on the frontier) are SENTINEL in every channel.
    full_knowledge: [compromised, accessible, vulnerability, alert] plus
    the flattened adjacency, a superset of the defender's channels.
    """

    mode: str
    compromised: np.ndarray
    accessible: np.ndarray
    vulnerability: np.ndarray
    alerts: np.ndarray | None
    adjacency: np.ndarray | None

    def vector(self) -> np.ndarray:
        parts = [self.compromised, self.accessible, self.vulnerability]
        if self.mode == FULL_KNOWLEDGE:
            parts.extend([self.alerts, self.adjacency])
        return np.concatenate(parts)


def defender_view(state: GameState) -> DefenderObservation:
    """The defender's belief-free sensor readout. Never exposes true compromise."""
    if state.terminated is not None:
        raise ValueError("cannot observe a terminated episode")
    nodes = state.graph.nodes
    alerts = np.array([1.0 if nd.visible_alert else 0.0 for nd in nodes])
    vuln = np.array([nd.vulnerability for nd in nodes])
    return DefenderObservation(
        alerts=alerts, vulnerability=vuln, adjacency=state.graph.adjacency_flat()
    )


def attacker_view(state: GameState, mode: str) -> AttackerObservation:
    if state.terminated is not None:
        raise ValueError("cannot observe a terminated episode")
    if mode not in (ZERO_KNOWLEDGE, FULL_KNOWLEDGE):
        raise ValueError(f"unknown attacker observation mode: {mode!r}")
    n = state.n
    nodes = state.graph.nodes
    frontier = set(state.accessible_frontier())
    compromised = np.array([1.0 if i in state.compromised_set else 0.0 for i in range(n)])
    accessible = np.array([1.0 if i in frontier else 0.0 for i in range(n)])

    if mode == FULL_KNOWLEDGE:
        vuln = np.array([nd.vulnerability for nd in nodes])
        alerts = np.array([1.0 if nd.visible_alert else 0.0 for nd in nodes])
        return AttackerObservation(
            mode=mode,
            compromised=compromised,
            accessible=accessible,
            vulnerability=vuln,
            alerts=alerts,
            adjacency=state.graph.adjacency_flat(),
        )

    # zero knowledge: vulnerability always hidden, invisible nodes fully masked
    vuln = np.full(n, SENTINEL)
    visible = (compromised > 0) | (accessible > 0)
    comp_masked = np.where(visible, compromised, SENTINEL)
    acc_masked = np.where(visible, accessible, SENTINEL)
    return AttackerObservation(
        mode=mode,
        compromised=comp_masked,
        accessible=acc_masked,
        vulnerability=vuln,
        alerts=None,
        adjacency=None,
    )
