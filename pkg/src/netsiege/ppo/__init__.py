"""From-scratch numpy PPO: networks, updates, checkpoints, dual training."""

from .checkpoint import FORMAT_VERSION, CheckpointError, load_checkpoint, save_checkpoint
from .nets import (
    PolicyParams,
    ShapeMismatchError,
    forward_batch,
    init_policy_params,
    mlp_backward,
    mlp_forward,
    policy_forward,
    softmax,
)
from .train import SCENARIOS, CurveRow, TrainResult, train_dual
from .update import (
    EmptyTrajectoryError,
    NonFiniteLossError,
    PPOConfig,
    Trajectory,
    compute_advantages,
    critic_loss_and_grad,
    ppo_update,
    surrogate_loss_and_grad,
)

__all__ = [
    "FORMAT_VERSION",
    "CheckpointError",
    "load_checkpoint",
    "save_checkpoint",
    "PolicyParams",
    "ShapeMismatchError",
    "forward_batch",
    "init_policy_params",
    "mlp_backward",
    "mlp_forward",
    "policy_forward",
    "softmax",
    "SCENARIOS",
    "CurveRow",
    "TrainResult",
    "train_dual",
    "EmptyTrajectoryError",
    "NonFiniteLossError",
    "PPOConfig",
    "Trajectory",
    "compute_advantages",
    "critic_loss_and_grad",
    "ppo_update",
    "surrogate_loss_and_grad",
]
