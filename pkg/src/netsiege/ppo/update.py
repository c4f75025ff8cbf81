"""Clipped-surrogate PPO update with GAE, on top of the numpy nets."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .nets import PolicyParams, forward_batch, mlp_backward


class EmptyTrajectoryError(ValueError):
    """compute_advantages needs at least one step."""


class NonFiniteLossError(RuntimeError):
    """The PPO loss went non-finite; the update was aborted."""


@dataclass(frozen=True)
class PPOConfig:
    actor_lr: float = 0.0002
    critic_lr: float = 0.0005
    training_episodes: int = 3000
    discount_factor: float = 0.99
    update_epochs: int = 5
    batch_size: int = 64
    clip_ratio: float = 0.2
    gae_lambda: float = 0.95
    entropy_coeff: float = 0.01
    hidden_sizes: tuple[int, ...] = (64, 64)
    rollout_episodes: int = 4
    invalid_action_mode: str = "coerce"  # or "mask": zero out invalid logits

    def __post_init__(self) -> None:
        errs = []
        if self.actor_lr < 0 or self.critic_lr < 0:
            errs.append("learning rates must be >= 0")
        if not (0.0 < self.discount_factor <= 1.0):
            errs.append(f"discount_factor must be in (0, 1], got {self.discount_factor}")
        if self.batch_size < 1:
            errs.append(f"batch_size must be >= 1, got {self.batch_size}")
        if self.update_epochs < 1:
            errs.append(f"update_epochs must be >= 1, got {self.update_epochs}")
        if not (0.0 <= self.gae_lambda <= 1.0):
            errs.append(f"gae_lambda must be in [0, 1], got {self.gae_lambda}")
        if not (0.0 < self.clip_ratio < 1.0):
            errs.append(f"clip_ratio must be in (0, 1), got {self.clip_ratio}")
        if self.rollout_episodes < 1:
            errs.append(f"rollout_episodes must be >= 1, got {self.rollout_episodes}")
        if self.invalid_action_mode not in ("coerce", "mask"):
            errs.append(f"invalid_action_mode must be coerce or mask, got {self.invalid_action_mode}")
        if errs:
            raise ValueError("; ".join(errs))


@dataclass
class Trajectory:
    """One agent's record of one episode.

    masks holds the per-step valid-action mask when the agent sampled from a
    masked distribution (invalid_action_mode="mask"), or None for steps drawn
    from the raw softmax; the update re-applies the stored mask so ratios are
    computed against the distribution that actually generated the action.
    """

    observations: list[np.ndarray] = field(default_factory=list)
    actions: list[int] = field(default_factory=list)
    log_probs: list[float] = field(default_factory=list)
    rewards: list[float] = field(default_factory=list)
    values: list[float] = field(default_factory=list)
    dones: list[bool] = field(default_factory=list)
    masks: list[np.ndarray | None] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.actions)

    def append(self, obs, action, log_prob, value, mask=None) -> None:
        self.observations.append(np.asarray(obs, dtype=np.float64))
        self.actions.append(int(action))
        self.log_probs.append(float(log_prob))
        self.values.append(float(value))
        self.masks.append(None if mask is None else np.asarray(mask, dtype=bool))

    def record_reward(self, reward: float, done: bool) -> None:
        self.rewards.append(float(reward))
        self.dones.append(bool(done))


def compute_advantages(traj: Trajectory, discount: float, gae_lambda: float) -> np.ndarray:
    """Raw (unnormalized) GAE for one terminated episode.

    Episode-aligned: the value after the terminal step is 0, so the
    single-step case reduces to r - v and gae_lambda=1 recovers discounted
    returns minus values. Batch-level normalization happens in ppo_update.
    """
    steps = len(traj)
    if steps == 0:
        raise EmptyTrajectoryError("trajectory has no steps")
    if len(traj.rewards) != steps or len(traj.dones) != steps:
        raise ValueError("trajectory rewards/dones incomplete")
    if not traj.dones[-1]:
        raise ValueError("compute_advantages requires a terminated trajectory")
    adv = np.zeros(steps)
    lastgaelam = 0.0
    for t in range(steps - 1, -1, -1):
        next_value = 0.0 if traj.dones[t] else traj.values[t + 1]
        nonterminal = 0.0 if traj.dones[t] else 1.0
        delta = traj.rewards[t] + discount * next_value - traj.values[t]
        lastgaelam = delta + discount * gae_lambda * nonterminal * lastgaelam
        adv[t] = lastgaelam
    return adv


class _Adam:
    """Adam over a flat list of arrays. Fresh per update call (the public
    update API is params -> params, so moments do not persist across calls)."""

    def __init__(self, shapes, lr, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr = lr
        self.beta1, self.beta2, self.eps = beta1, beta2, eps
        self.m = [np.zeros(s) for s in shapes]
        self.v = [np.zeros(s) for s in shapes]
        self.t = 0

    def step(self, arrays, grads) -> None:
        self.t += 1
        b1, b2 = self.beta1, self.beta2
        for i, (arr, g) in enumerate(zip(arrays, grads)):
            self.m[i] = b1 * self.m[i] + (1 - b1) * g
            self.v[i] = b2 * self.v[i] + (1 - b2) * g * g
            mhat = self.m[i] / (1 - b1 ** self.t)
            vhat = self.v[i] / (1 - b2 ** self.t)
            arr -= self.lr * mhat / (np.sqrt(vhat) + self.eps)


def surrogate_loss_and_grad(
    params: PolicyParams,
    obs: np.ndarray,
    actions: np.ndarray,
    logp_old: np.ndarray,
    advantages: np.ndarray,
    clip_ratio: float,
    entropy_coeff: float,
    masks: np.ndarray | None = None,
):
    """Clipped PPO surrogate (minus entropy bonus) and its actor gradients.

    Returns (loss, grads_w, grads_b). Gradient flows only through samples
    whose ratio sits inside the clip band (or is being pulled back into it),
    matching the min() in the objective.

    masks, when given, is a [batch, action_count] bool array; each row's
    probabilities are renormalized over its valid actions (a softmax over the
    masked logits), so invalid actions carry zero probability and receive
    zero gradient. Entropy is likewise the masked distribution's entropy.
    """
    batch = obs.shape[0]
    probs, _, actor_cache, _ = forward_batch(params, obs)
    if masks is not None:
        kept = probs * masks
        # always-valid actions keep the row total well away from zero
        probs = kept / np.maximum(kept.sum(axis=1, keepdims=True), 1e-300)
    eps_floor = 1e-12
    logp = np.log(probs[np.arange(batch), actions] + eps_floor)
    ratio = np.exp(logp - logp_old)
    unclipped = ratio * advantages
    clipped = np.clip(ratio, 1.0 - clip_ratio, 1.0 + clip_ratio) * advantages
    surrogate = np.minimum(unclipped, clipped)
    entropy = -(probs * np.log(probs + eps_floor)).sum(axis=1)
    loss = -surrogate.mean() - entropy_coeff * entropy.mean()

    # d(-surrogate)/d(logp): active only where the unclipped branch is the min
    use_unclipped = unclipped <= clipped
    coef = np.where(use_unclipped, ratio * advantages, 0.0)
    onehot = np.zeros_like(probs)
    onehot[np.arange(batch), actions] = 1.0
    dlogits = (-coef[:, None] / batch) * (onehot - probs)
    # entropy bonus: dH/dlogits_j = -p_j (log p_j + H)
    dlogits += (entropy_coeff / batch) * probs * (np.log(probs + eps_floor) + entropy[:, None])

    grads_w, grads_b = mlp_backward(params.actor_weights, actor_cache, dlogits)
    return loss, grads_w, grads_b, float(entropy.mean())


def critic_loss_and_grad(params: PolicyParams, obs: np.ndarray, returns: np.ndarray):
    batch = obs.shape[0]
    _, values, _, critic_cache = forward_batch(params, obs)
    err = values - returns
    loss = float((err ** 2).mean())
    dvalues = (2.0 * err / batch)[:, None]
    grads_w, grads_b = mlp_backward(params.critic_weights, critic_cache, dvalues)
    return loss, grads_w, grads_b


def ppo_update(
    params: PolicyParams,
    batch: list[Trajectory],
    cfg: PPOConfig,
    rng: np.random.Generator,
) -> PolicyParams:
    """Run update_epochs of minibatch PPO over a batch of finished episodes.

    Advantages are normalized across the assembled batch. Returns fresh
    params; the input is never mutated. A non-finite loss aborts with
    NonFiniteLossError carrying the offending components.
    """
    if not batch:
        raise EmptyTrajectoryError("ppo_update needs at least one trajectory")
    obs = np.concatenate([np.stack(t.observations) for t in batch])
    actions = np.concatenate([np.asarray(t.actions, dtype=np.int64) for t in batch])
    logp_old = np.concatenate([np.asarray(t.log_probs) for t in batch])
    values = np.concatenate([np.asarray(t.values) for t in batch])
    step_masks = [m for t in batch for m in t.masks]
    if any(m is not None for m in step_masks):
        all_valid = np.ones(params.action_count, dtype=bool)
        masks = np.stack([all_valid if m is None else m for m in step_masks])
    else:
        masks = None
    advantages = np.concatenate(
        [compute_advantages(t, cfg.discount_factor, cfg.gae_lambda) for t in batch]
    )
    returns = advantages + values
    std = advantages.std()
    advantages = (advantages - advantages.mean()) / (std + 1e-8)

    new = params.copy()
    n = obs.shape[0]
    actor_shapes = [w.shape for w in new.actor_weights] + [b.shape for b in new.actor_biases]
    critic_shapes = [w.shape for w in new.critic_weights] + [b.shape for b in new.critic_biases]
    actor_opt = _Adam(actor_shapes, cfg.actor_lr)
    critic_opt = _Adam(critic_shapes, cfg.critic_lr)

    for epoch in range(cfg.update_epochs):
        perm = rng.permutation(n)
        for start in range(0, n, cfg.batch_size):
            idx = perm[start : start + cfg.batch_size]
            a_loss, a_gw, a_gb, ent = surrogate_loss_and_grad(
                new, obs[idx], actions[idx], logp_old[idx], advantages[idx],
                cfg.clip_ratio, cfg.entropy_coeff,
                masks=None if masks is None else masks[idx],
            )
            c_loss, c_gw, c_gb = critic_loss_and_grad(new, obs[idx], returns[idx])
            if not (np.isfinite(a_loss) and np.isfinite(c_loss)):
                raise NonFiniteLossError(
                    f"epoch {epoch}: actor loss {a_loss}, critic loss {c_loss}, "
                    f"entropy {ent}, batch size {idx.size}"
                )
            actor_opt.step(new.actor_weights + new.actor_biases, a_gw + a_gb)
            critic_opt.step(new.critic_weights + new.critic_biases, c_gw + c_gb)

    new.validate()
    return new
