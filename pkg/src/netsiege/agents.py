"""Agent zoo: policy-net agents, scripted baselines, and the Bayes/Hurwicz attacker.

All agents share one interface: reset(rng) at episode start, act(observation)
returning a structurally valid action, and notify(StepOutcome) for
belief-carrying agents. Agents are single-owner per episode; no state is
shared across episodes except frozen policy weights.
"""

from __future__ import annotations

import numpy as np

from .beliefs import AttackerBelief, attacker_belief_update, sample_pert, HARMONIC
from .criteria import ActionDistribution, restricted_bayes_hurwicz, select_action
from .env.actions import (
    AttackerAction,
    AttackerActionKind,
    DefenderAction,
    DefenderActionKind,
    attacker_action_from_index,
    defender_action_from_index,
)
from .env.observe import DEFENDER, FULL_KNOWLEDGE, ZERO_KNOWLEDGE
from .ppo.nets import PolicyParams, policy_forward
from .ppo.update import Trajectory


class Agent:
    """Base agent. Subclasses set role and obs_mode and implement act."""

    role: str = "agent"
    obs_mode: str = DEFENDER

    def reset(self, rng: np.random.Generator) -> None:
        self.rng = rng

    def act(self, obs):
        raise NotImplementedError

    def notify(self, outcome) -> None:
        pass


class NullDefender(Agent):
    """The best-case defender: does nothing, costs nothing."""

    role = "defender"
    obs_mode = DEFENDER

    def act(self, obs) -> DefenderAction:
        return DefenderAction(DefenderActionKind.DO_NOTHING)


class NullAttacker(Agent):
    """Inert attacker, useful as a no-pressure fixture."""

    role = "attacker"
    obs_mode = ZERO_KNOWLEDGE

    def act(self, obs) -> AttackerAction:
        return AttackerAction(AttackerActionKind.DO_NOTHING)


class NSARedAttacker(Agent):
    """Scripted attacker: skip sometimes, otherwise hammer the most
    vulnerable frontier node, with a periodic zero-day and a guaranteed
    finisher when one node from the win threshold. Never moves.

    Purely algorithmic; reads the full-knowledge structured view because its
    targeting rule ranks frontier nodes by true vulnerability.
    """

    role = "attacker"
    obs_mode = FULL_KNOWLEDGE

    def __init__(self, win_fraction: float, skip_prob: float = 0.1, zero_day_period: int = 5):
        self.win_fraction = win_fraction
        self.skip_prob = skip_prob
        self.zero_day_period = zero_day_period
        self.offensive_count = 0

    def reset(self, rng: np.random.Generator) -> None:
        super().reset(rng)
        self.offensive_count = 0

    def act(self, obs) -> AttackerAction:
        accessible = np.flatnonzero(obs.accessible == 1.0)
        if accessible.size == 0:
            return AttackerAction(AttackerActionKind.EXECUTE)
        if self.rng.random() < self.skip_prob:
            return AttackerAction(AttackerActionKind.DO_NOTHING)
        vulns = obs.vulnerability[accessible]
        target = int(accessible[int(np.argmax(vulns))])
        held = int((obs.compromised == 1.0).sum())
        n = obs.compromised.size
        self.offensive_count += 1
        if held + 1 > self.win_fraction * n:
            # one success from the threshold: spend the zero-day to finish
            return AttackerAction(AttackerActionKind.ZERO_DAY, target)
        if self.offensive_count % self.zero_day_period == 0:
            return AttackerAction(AttackerActionKind.ZERO_DAY, target)
        return AttackerAction(AttackerActionKind.BASIC_ATTACK, target)


def valid_attacker_mask(obs, action_count: int) -> np.ndarray:
    """Boolean mask of structurally valid attacker actions for this view.

    Attack and zero-day targets must be accessible, move targets must be
    compromised; the untargeted kinds are always valid.
    """
    n = (action_count - 2) // 3
    mask = np.ones(action_count, dtype=bool)
    mask[0:n] = obs.accessible == 1.0
    mask[n : 2 * n] = obs.accessible == 1.0
    mask[2 * n : 3 * n] = obs.compromised == 1.0
    return mask


def masked_distribution(dist: ActionDistribution, mask: np.ndarray) -> ActionDistribution:
    """Renormalize a distribution over the masked support (uniform fallback)."""
    p = dist.probs * mask
    total = p.sum()
    if total <= 0.0:
        p = mask / mask.sum()
    else:
        p = p / total
    return ActionDistribution(probs=p)


class PolicyAgent(Agent):
    """Wraps frozen or in-training PolicyParams as an agent.

    select mode "sample" draws from the action distribution, "argmax" is
    deterministic. With collect=True the agent records a Trajectory
    (observation, action, log-prob, value) for PPO; rewards are appended by
    the episode runner. mask_invalid filters structurally useless attacker
    actions at selection time; when combined with collect, the recorded
    log-prob is of the masked distribution and the mask itself is stored so
    the PPO update recomputes ratios against the same distribution.

    A policy trained with invalid_action_mode="mask" only ever acted through
    the masked distribution, so evaluating it must mask too — the raw head is
    untrained on invalid entries and sampling it would coerce those picks to
    do-nothing, evaluating a different (weaker) agent than was trained.
    """

    def __init__(
        self,
        params: PolicyParams,
        role: str,
        obs_mode: str,
        select_mode: str = "sample",
        collect: bool = False,
        mask_invalid: bool = False,
    ):
        self.params = params
        self.role = role
        self.obs_mode = obs_mode
        self.select_mode = select_mode
        self.collect = collect
        self.mask_invalid = mask_invalid
        self.trajectory = Trajectory()
        self._n = (params.action_count - 2) // 3

    def reset(self, rng: np.random.Generator) -> None:
        super().reset(rng)
        self.trajectory = Trajectory()

    def _valid_mask(self, obs) -> np.ndarray:
        return valid_attacker_mask(obs, self.params.action_count)

    @staticmethod
    def _apply_mask(dist: ActionDistribution, mask: np.ndarray) -> ActionDistribution:
        return masked_distribution(dist, mask)

    def act(self, obs):
        vec = obs.vector()
        dist, value = policy_forward(self.params, vec)
        pick_dist = dist
        mask = None
        if self.mask_invalid and self.role == "attacker":
            mask = self._valid_mask(obs)
            pick_dist = self._apply_mask(dist, mask)
        idx = select_action(pick_dist, self.select_mode, self.rng)
        if self.collect:
            self.trajectory.append(vec, idx, np.log(pick_dist.probs[idx] + 1e-12), value, mask=mask)
        if self.role == "attacker":
            return attacker_action_from_index(idx, self._n)
        return defender_action_from_index(idx, self._n)

    def record_reward(self, reward: float, done: bool) -> None:
        if self.collect:
            self.trajectory.record_reward(reward, done)


class BHAttacker(Agent):
    """Restricted Bayes/Hurwicz attacker over three frozen policies.

    At reset it draws mu_hat and phi_hat priors from PERT distributions over
    [0, 1] with mode 0.5, starts gamma at 1 (full confidence in pi_hat), and
    thereafter shifts weight toward the best/worst-case mix as defender
    remediations are observed via notify().

    With mask_invalid=True each policy's distribution is restricted to the
    structurally valid actions *before* mixing, so a mask-trained prior
    contributes the distribution it was actually trained to play.
    """

    role = "attacker"

    def __init__(
        self,
        pi_hat: PolicyParams,
        pi_best: PolicyParams,
        pi_worst: PolicyParams,
        obs_mode: str,
        select_mode: str = "sample",
        gamma_decay: str = HARMONIC,
        pert_mode: float = 0.5,
        pseudo_obs_weight: float = 1.0,
        mask_invalid: bool = False,
    ):
        shapes = {(p.obs_len, p.action_count) for p in (pi_hat, pi_best, pi_worst)}
        if len(shapes) != 1:
            raise ValueError(f"the three policies disagree on obs/action shape: {shapes}")
        self.pi_hat = pi_hat
        self.pi_best = pi_best
        self.pi_worst = pi_worst
        self.obs_mode = obs_mode
        self.select_mode = select_mode
        self.gamma_decay = gamma_decay
        self.pert_mode = pert_mode
        self.pseudo_obs_weight = pseudo_obs_weight
        self.mask_invalid = mask_invalid
        self._n = (pi_hat.action_count - 2) // 3
        self.belief: AttackerBelief | None = None

    def reset(self, rng: np.random.Generator) -> None:
        super().reset(rng)
        mu0 = float(sample_pert(0.0, self.pert_mode, 1.0, rng))
        phi0 = float(sample_pert(0.0, self.pert_mode, 1.0, rng))
        self.belief = AttackerBelief(
            mu_hat=mu0,
            phi_hat=phi0,
            n=self._n,
            gamma=1.0,
            k=0,
            t=0,
            gamma_decay=self.gamma_decay,
            pseudo_obs_weight=self.pseudo_obs_weight,
        )

    def action_distribution(self, obs) -> ActionDistribution:
        vec = obs.vector()
        d_hat, _ = policy_forward(self.pi_hat, vec)
        d_best, _ = policy_forward(self.pi_best, vec)
        d_worst, _ = policy_forward(self.pi_worst, vec)
        if self.mask_invalid:
            mask = valid_attacker_mask(obs, self.pi_hat.action_count)
            d_hat = masked_distribution(d_hat, mask)
            d_best = masked_distribution(d_best, mask)
            d_worst = masked_distribution(d_worst, mask)
        return restricted_bayes_hurwicz(
            d_hat, d_best, d_worst, self.belief.gamma, self.belief.mu_hat
        )

    def act(self, obs) -> AttackerAction:
        mixed = self.action_distribution(obs)
        idx = select_action(mixed, self.select_mode, self.rng)
        return attacker_action_from_index(idx, self._n)

    def notify(self, outcome) -> None:
        self.belief = attacker_belief_update(self.belief, outcome.removed_attacker_access)
