"""Network-security game environment."""

from .actions import (
    DEFAULT_ACTION_COSTS,
    AttackerAction,
    AttackerActionKind,
    DefenderAction,
    DefenderActionKind,
    attacker_action_count,
    attacker_action_from_index,
    attacker_action_to_index,
    defender_action_count,
    defender_action_from_index,
    defender_action_to_index,
)
from .config import EnvConfig, EnvConfigError
from .engine import (
    EpisodeTerminatedError,
    GameState,
    StepOutcome,
    Winner,
    attacker_utility,
    check_termination,
    defender_reward,
    init_episode,
    inject_noise,
    step,
)
from .graph import (
    VULN_FLOOR,
    InvalidConfigError,
    NetworkGraph,
    NodeState,
    generate_network,
    round_half_up,
)
from .observe import (
    DEFENDER,
    FULL_KNOWLEDGE,
    SENTINEL,
    ZERO_KNOWLEDGE,
    AttackerObservation,
    DefenderObservation,
    attacker_obs_len,
    attacker_view,
    defender_obs_len,
    defender_view,
    obs_len_for,
)
from .transcript import (
    ReplayMismatchError,
    episode_seed_streams,
    header_record,
    read_transcript,
    replay_episode,
    step_record,
    write_transcript,
)

__all__ = [
    "DEFAULT_ACTION_COSTS",
    "AttackerAction",
    "AttackerActionKind",
    "DefenderAction",
    "DefenderActionKind",
    "attacker_action_count",
    "attacker_action_from_index",
    "attacker_action_to_index",
    "defender_action_count",
    "defender_action_from_index",
    "defender_action_to_index",
    "EnvConfig",
    "EnvConfigError",
    "EpisodeTerminatedError",
    "GameState",
    "StepOutcome",
    "Winner",
    "attacker_utility",
    "check_termination",
    "defender_reward",
    "init_episode",
    "inject_noise",
    "step",
    "VULN_FLOOR",
    "InvalidConfigError",
    "NetworkGraph",
    "NodeState",
    "generate_network",
    "round_half_up",
    "DEFENDER",
    "FULL_KNOWLEDGE",
    "SENTINEL",
    "ZERO_KNOWLEDGE",
    "AttackerObservation",
    "DefenderObservation",
    "attacker_obs_len",
    "attacker_view",
    "defender_obs_len",
    "defender_view",
    "obs_len_for",
    "ReplayMismatchError",
    "episode_seed_streams",
    "header_record",
    "read_transcript",
    "replay_episode",
    "step_record",
    "write_transcript",
]
