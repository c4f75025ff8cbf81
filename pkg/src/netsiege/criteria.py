"""Restricted Bayes/Hurwicz mixing over action distributions.

The decision maker blends a learned prior policy P_hat with best- and
worst-case policies, weighting the prior by confidence gamma and splitting
the remainder by estimated adversary presence:

    gamma * P_hat + (1 - gamma) * ((1 - mu_hat) * P_best + mu_hat * P_worst)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ActionDistribution:
    """Probability vector over a fixed action-space ordering."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", probs)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a non-empty 1-D vector")
        if np.any(probs < -_SUM_TOL):
            raise ValueError(f"negative probability entries: {probs.min()}")
        total = float(probs.sum())
        if abs(total - 1.0) > _SUM_TOL:
            raise ValueError(f"probabilities sum to {total}, expected 1")

    def __len__(self) -> int:
        return self.probs.size


def restricted_bayes_hurwicz(
    p_hat: ActionDistribution,
    p_best: ActionDistribution,
    p_worst: ActionDistribution,
    gamma: float,
    mu_hat: float,
) -> ActionDistribution:
    """Convex mix of prior, optimistic, and pessimistic action distributions."""
    if not (len(p_hat) == len(p_best) == len(p_worst)):
        raise ValueError(
            f"action-space mismatch: {len(p_hat)}, {len(p_best)}, {len(p_worst)}"
        )
    if not (0.0 <= gamma <= 1.0):
        raise ValueError(f"gamma must be in [0, 1], got {gamma}")
    if not (0.0 <= mu_hat <= 1.0):
        raise ValueError(f"mu_hat must be in [0, 1], got {mu_hat}")
    mixed = gamma * p_hat.probs + (1.0 - gamma) * (
        (1.0 - mu_hat) * p_best.probs + mu_hat * p_worst.probs
    )
    return ActionDistribution(probs=mixed)


def select_action(
    dist: ActionDistribution, mode: str = "sample", rng: np.random.Generator | None = None
) -> int:
    """Pick an action index: proportional sampling or lowest-index argmax."""
    if mode == "argmax":
        return int(np.argmax(dist.probs))  # argmax takes the first maximal index
    if mode == "sample":
        if rng is None:
            raise ValueError("sample mode requires an rng")
        # normalize away the <=1e-9 tolerance before handing to rng.choice
        p = np.clip(dist.probs, 0.0, None)
        p = p / p.sum()
        return int(rng.choice(p.size, p=p))
    raise ValueError(f"unknown selection mode: {mode!r}")
