"""Environment configuration."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, asdict

from .actions import DEFAULT_ACTION_COSTS, AttackerActionKind, DefenderActionKind


class EnvConfigError(ValueError):
    """EnvConfig failed validation; message lists every violated field."""


@dataclass(frozen=True)
class EnvConfig:
    """All environment knobs.

    detect_prob (p) is the chance an attacker-touched node raises an alert
    beyond baseline noise; false_positive_prob (q) is the per-node baseline
    alert chance each step. node_value scales the per-compromised-node payout
    at termination; the shipped experiment configs raise it to 100 so that
    expanding a foothold beats cashing out immediately.
    """

    n_nodes: int = 50
    connectivity: float = 0.6
    detect_prob: float = 0.5
    false_positive_prob: float = 0.05
    attacker_win_fraction: float = 0.8
    max_timesteps: int = 500
    win_reward: float = 5000.0
    lose_reward: float = -100.0
    action_costs: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_ACTION_COSTS))
    scan_detect_prob: float = 0.7
    reduce_vuln_amount: float = 0.2
    initial_vuln_range: tuple[float, float] = (0.2, 0.8)
    node_value: float = 1.0

    def __post_init__(self) -> None:
        problems = self.validation_errors()
        if problems:
            raise EnvConfigError("; ".join(problems))

    def validation_errors(self) -> list[str]:
        errs: list[str] = []
        if self.n_nodes < 2:
            errs.append(f"n_nodes must be >= 2 (got {self.n_nodes})")
        if not (0.0 < self.connectivity <= 1.0):
            errs.append(f"connectivity must be in (0, 1] (got {self.connectivity})")
        for name in ("detect_prob", "false_positive_prob", "scan_detect_prob"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                errs.append(f"{name} must be in [0, 1] (got {v})")
        if not (0.0 < self.attacker_win_fraction <= 1.0):
            errs.append(f"attacker_win_fraction must be in (0, 1] (got {self.attacker_win_fraction})")
        if self.max_timesteps < 1:
            errs.append(f"max_timesteps must be >= 1 (got {self.max_timesteps})")
        expected_keys = set(DEFAULT_ACTION_COSTS)
        if set(self.action_costs) != expected_keys:
            missing = expected_keys - set(self.action_costs)
            extra = set(self.action_costs) - expected_keys
            if missing:
                errs.append(f"action_costs missing keys: {sorted(missing)}")
            if extra:
                errs.append(f"action_costs has unknown keys: {sorted(extra)}")
        for k, v in self.action_costs.items():
            if v < 0:
                errs.append(f"action cost {k} must be >= 0 (got {v})")
        if not (0.0 < self.reduce_vuln_amount <= 1.0):
            errs.append(f"reduce_vuln_amount must be in (0, 1] (got {self.reduce_vuln_amount})")
        lo, hi = self.initial_vuln_range
        if not (0.0 <= lo <= hi <= 1.0):
            errs.append(f"initial_vuln_range must satisfy 0 <= lo <= hi <= 1 (got {self.initial_vuln_range})")
        if self.node_value < 0:
            errs.append(f"node_value must be >= 0 (got {self.node_value})")
        return errs

    def cost(self, kind: AttackerActionKind | DefenderActionKind) -> float:
        return self.action_costs[kind.value]

    @property
    def false_positive_alert_share(self) -> float:
        """Expected share of alerts on an attacker-touched node that are spurious."""
        p, q = self.detect_prob, self.false_positive_prob
        total = p + q - p * q
        if total == 0.0:
            return 0.0
        return (1.0 - p) * q / total

    def to_dict(self) -> dict:
        d = asdict(self)
        d["initial_vuln_range"] = list(self.initial_vuln_range)
        return d

    def fingerprint(self) -> str:
        """Stable hash of the full configuration, for run provenance."""
        blob = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]
