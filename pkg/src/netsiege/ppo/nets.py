"""Policy and value networks: plain numpy MLPs with manual backprop.

Actor and critic are separate networks (separate optimizers, per the
distinct learning rates). Weights use the [fan_in, fan_out] convention;
observations are row vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..criteria import ActionDistribution


class ShapeMismatchError(ValueError):
    """Observation or parameter shapes are inconsistent."""


@dataclass
class PolicyParams:
    """Actor/critic weights plus the metadata needed to use them safely."""

    obs_len: int
    action_count: int
    hidden_sizes: tuple[int, ...]
    scenario: str
    role: str
    actor_weights: list[np.ndarray] = field(default_factory=list)
    actor_biases: list[np.ndarray] = field(default_factory=list)
    critic_weights: list[np.ndarray] = field(default_factory=list)
    critic_biases: list[np.ndarray] = field(default_factory=list)

    def validate(self) -> None:
        for weights, biases, out_dim, name in (
            (self.actor_weights, self.actor_biases, self.action_count, "actor"),
            (self.critic_weights, self.critic_biases, 1, "critic"),
        ):
            dims = [self.obs_len, *self.hidden_sizes, out_dim]
            if len(weights) != len(dims) - 1 or len(biases) != len(dims) - 1:
                raise ShapeMismatchError(f"{name}: expected {len(dims) - 1} layers")
            for i, (w, b) in enumerate(zip(weights, biases)):
                if w.shape != (dims[i], dims[i + 1]) or b.shape != (dims[i + 1],):
                    raise ShapeMismatchError(
                        f"{name} layer {i}: got {w.shape}/{b.shape}, "
                        f"expected {(dims[i], dims[i + 1])}/{(dims[i + 1],)}"
                    )
                if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                    raise ShapeMismatchError(f"{name} layer {i}: non-finite entries")

    def copy(self) -> "PolicyParams":
        return replace(
            self,
            actor_weights=[w.copy() for w in self.actor_weights],
            actor_biases=[b.copy() for b in self.actor_biases],
            critic_weights=[w.copy() for w in self.critic_weights],
            critic_biases=[b.copy() for b in self.critic_biases],
        )

    def arrays(self) -> list[tuple[str, np.ndarray]]:
        out = []
        for i, (w, b) in enumerate(zip(self.actor_weights, self.actor_biases)):
            out.append((f"actor_w{i}", w))
            out.append((f"actor_b{i}", b))
        for i, (w, b) in enumerate(zip(self.critic_weights, self.critic_biases)):
            out.append((f"critic_w{i}", w))
            out.append((f"critic_b{i}", b))
        return out


def _init_mlp(dims: list[int], rng: np.random.Generator, final_scale: float):
    weights, biases = [], []
    for i in range(len(dims) - 1):
        scale = np.sqrt(2.0 / dims[i])
        if i == len(dims) - 2:
            scale *= final_scale
        weights.append(rng.normal(0.0, scale, size=(dims[i], dims[i + 1])))
        biases.append(np.zeros(dims[i + 1]))
    return weights, biases


def init_policy_params(
    obs_len: int,
    action_count: int,
    rng: np.random.Generator,
    hidden_sizes: tuple[int, ...] = (64, 64),
    scenario: str = "untagged",
    role: str = "agent",
) -> PolicyParams:
    """Fresh parameters. The actor's final layer starts small so the initial
    policy is near-uniform."""
    aw, ab = _init_mlp([obs_len, *hidden_sizes, action_count], rng, final_scale=0.01)
    cw, cb = _init_mlp([obs_len, *hidden_sizes, 1], rng, final_scale=1.0)
    params = PolicyParams(
        obs_len=obs_len,
        action_count=action_count,
        hidden_sizes=tuple(hidden_sizes),
        scenario=scenario,
        role=role,
        actor_weights=aw,
        actor_biases=ab,
        critic_weights=cw,
        critic_biases=cb,
    )
    params.validate()
    return params


def mlp_forward(weights, biases, x: np.ndarray):
    """Tanh MLP forward on a [B, in] batch. Returns (output, activation cache)."""
    h = x
    cache = [x]
    last = len(weights) - 1
    for i, (w, b) in enumerate(zip(weights, biases)):
        z = h @ w + b
        h = z if i == last else np.tanh(z)
        cache.append(h)
    return h, cache


def mlp_backward(weights, cache, d_out: np.ndarray):
    """Gradients of a scalar loss wrt weights/biases given d(loss)/d(output)."""
    grads_w = [None] * len(weights)
    grads_b = [None] * len(weights)
    delta = d_out
    for i in range(len(weights) - 1, -1, -1):
        h_in = cache[i]
        grads_w[i] = h_in.T @ delta
        grads_b[i] = delta.sum(axis=0)
        if i > 0:
            delta = (delta @ weights[i].T) * (1.0 - cache[i] ** 2)  # tanh'
    return grads_w, grads_b


def softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def forward_batch(params: PolicyParams, obs: np.ndarray):
    """Batched actor+critic forward. obs is [B, obs_len].

    Returns (probs [B, A], values [B], actor_cache, critic_cache).
    """
    if obs.ndim != 2 or obs.shape[1] != params.obs_len:
        raise ShapeMismatchError(
            f"observation batch has shape {obs.shape}, expected (*, {params.obs_len})"
        )
    logits, actor_cache = mlp_forward(params.actor_weights, params.actor_biases, obs)
    values, critic_cache = mlp_forward(params.critic_weights, params.critic_biases, obs)
    return softmax(logits), values[:, 0], actor_cache, critic_cache


def policy_forward(params: PolicyParams, obs: np.ndarray) -> tuple[ActionDistribution, float]:
    """Single-observation forward pass: action distribution plus value estimate."""
    obs = np.asarray(obs, dtype=np.float64)
    if obs.shape != (params.obs_len,):
        raise ShapeMismatchError(
            f"observation has shape {obs.shape}, expected ({params.obs_len},)"
        )
    probs, values, _, _ = forward_batch(params, obs[None, :])
    return ActionDistribution(probs=probs[0]), float(values[0])
