"""Attacker and defender action types with flat categorical encodings.

Both players pick from a 3n + 2 categorical space: three targeted action
kinds over n nodes, plus two untargeted kinds. Index layout (attacker):
[0, n) basic attack, [n, 2n) zero-day, [2n, 3n) move, 3n do-nothing,
3n + 1 execute. Defender mirrors it with its own kinds.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class AttackerActionKind(str, Enum):
    BASIC_ATTACK = "basic_attack"
    ZERO_DAY = "zero_day"
    MOVE = "move"
    DO_NOTHING = "do_nothing"
    EXECUTE = "execute"


class DefenderActionKind(str, Enum):
    REDUCE_VULNERABILITY = "reduce_vulnerability"
    MAKE_NODE_SAFE = "make_node_safe"
    RESTORE_NODE = "restore_node"
    SCAN = "scan"
    DO_NOTHING = "do_nothing"


ATTACKER_TARGETED = (
    AttackerActionKind.BASIC_ATTACK,
    AttackerActionKind.ZERO_DAY,
    AttackerActionKind.MOVE,
)
DEFENDER_TARGETED = (
    DefenderActionKind.REDUCE_VULNERABILITY,
    DefenderActionKind.MAKE_NODE_SAFE,
    DefenderActionKind.RESTORE_NODE,
)

# Per-action costs subtracted from episode reward.
DEFAULT_ACTION_COSTS: dict[str, float] = {
    AttackerActionKind.BASIC_ATTACK.value: 2.0,
    AttackerActionKind.ZERO_DAY.value: 6.0,
    AttackerActionKind.MOVE.value: 0.5,
    AttackerActionKind.DO_NOTHING.value: 0.0,
    AttackerActionKind.EXECUTE.value: 0.0,
    DefenderActionKind.REDUCE_VULNERABILITY.value: 1.5,
    DefenderActionKind.MAKE_NODE_SAFE.value: 4.0,
    DefenderActionKind.RESTORE_NODE.value: 6.0,
    DefenderActionKind.SCAN.value: 0.5,
    DefenderActionKind.DO_NOTHING.value: 0.0,
}


@dataclass(frozen=True)
class AttackerAction:
    kind: AttackerActionKind
    target: int | None = None

    def __post_init__(self) -> None:
        targeted = self.kind in ATTACKER_TARGETED
        if targeted and self.target is None:
            raise ValueError(f"{self.kind.value} requires a target node")
        if not targeted and self.target is not None:
            raise ValueError(f"{self.kind.value} takes no target")


@dataclass(frozen=True)
class DefenderAction:
    kind: DefenderActionKind
    target: int | None = None

    def __post_init__(self) -> None:
        targeted = self.kind in DEFENDER_TARGETED
        if targeted and self.target is None:
            raise ValueError(f"{self.kind.value} requires a target node")
        if not targeted and self.target is not None:
            raise ValueError(f"{self.kind.value} takes no target")


def attacker_action_count(n: int) -> int:
    return 3 * n + 2


def defender_action_count(n: int) -> int:
    return 3 * n + 2


def attacker_action_from_index(index: int, n: int) -> AttackerAction:
    if not (0 <= index < attacker_action_count(n)):
        raise ValueError(f"attacker action index {index} out of range for n={n}")
    if index < n:
        return AttackerAction(AttackerActionKind.BASIC_ATTACK, index)
    if index < 2 * n:
        return AttackerAction(AttackerActionKind.ZERO_DAY, index - n)
    if index < 3 * n:
        return AttackerAction(AttackerActionKind.MOVE, index - 2 * n)
    if index == 3 * n:
        return AttackerAction(AttackerActionKind.DO_NOTHING)
    return AttackerAction(AttackerActionKind.EXECUTE)


def attacker_action_to_index(action: AttackerAction, n: int) -> int:
    kind = action.kind
    if kind is AttackerActionKind.BASIC_ATTACK:
        return action.target
    if kind is AttackerActionKind.ZERO_DAY:
        return n + action.target
    if kind is AttackerActionKind.MOVE:
        return 2 * n + action.target
    if kind is AttackerActionKind.DO_NOTHING:
        return 3 * n
    return 3 * n + 1


def defender_action_from_index(index: int, n: int) -> DefenderAction:
    if not (0 <= index < defender_action_count(n)):
        raise ValueError(f"defender action index {index} out of range for n={n}")
    if index < n:
        return DefenderAction(DefenderActionKind.REDUCE_VULNERABILITY, index)
    if index < 2 * n:
        return DefenderAction(DefenderActionKind.MAKE_NODE_SAFE, index - n)
    if index < 3 * n:
        return DefenderAction(DefenderActionKind.RESTORE_NODE, index - 2 * n)
    if index == 3 * n:
        return DefenderAction(DefenderActionKind.SCAN)
    return DefenderAction(DefenderActionKind.DO_NOTHING)


def defender_action_to_index(action: DefenderAction, n: int) -> int:
    kind = action.kind
    if kind is DefenderActionKind.REDUCE_VULNERABILITY:
        return action.target
    if kind is DefenderActionKind.MAKE_NODE_SAFE:
        return n + action.target
    if kind is DefenderActionKind.RESTORE_NODE:
        return 2 * n + action.target
    if kind is DefenderActionKind.SCAN:
        return 3 * n
    return 3 * n + 1
