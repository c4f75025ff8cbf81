"""Run configuration: YAML schema, strict validation, env-var overrides.

Schema (all keys optional, unknown keys rejected):

    scenario: optimistic | pessimistic | best_case | worst_case
    seed: int
    trials: int                  # evaluation trials
    out_dir: str
    env:                         # any EnvConfig field
      n_nodes: 50
      connectivity: 0.6
      ...
      action_costs: {basic_attack: 2.0, ...}
    ppo:                         # any PPOConfig field
      actor_lr: 0.0002
      ...
    belief:
      threshold: 0.5
      pert_min: 0.0
      pert_mode: 0.5
      pert_max: 1.0
      gamma_decay: harmonic | factorial
      pseudo_obs_weight: 1.0

Environment variables NETSIEGE_SEED and NETSIEGE_OUT override seed/out_dir.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field

import yaml

from .env.config import EnvConfig, EnvConfigError
from .ppo.update import PPOConfig

SEED_ENV_VAR = "NETSIEGE_SEED"
OUT_ENV_VAR = "NETSIEGE_OUT"


class ConfigError(ValueError):
    """Configuration file invalid; the message lists every violated field."""


@dataclass(frozen=True)
class BeliefConfig:
    threshold: float = 0.5
    pert_min: float = 0.0
    pert_mode: float = 0.5
    pert_max: float = 1.0
    gamma_decay: str = "harmonic"
    pseudo_obs_weight: float = 1.0

    def validation_errors(self) -> list[str]:
        errs = []
        if not (0.0 < self.threshold <= 1.0):
            errs.append(f"belief.threshold must be in (0, 1] (got {self.threshold})")
        if not (self.pert_min <= self.pert_mode <= self.pert_max):
            errs.append(
                f"belief PERT needs min <= mode <= max "
                f"(got {self.pert_min}, {self.pert_mode}, {self.pert_max})"
            )
        if self.gamma_decay not in ("harmonic", "factorial"):
            errs.append(f"belief.gamma_decay must be harmonic or factorial (got {self.gamma_decay})")
        if self.pseudo_obs_weight <= 0:
            errs.append(f"belief.pseudo_obs_weight must be > 0 (got {self.pseudo_obs_weight})")
        return errs


@dataclass(frozen=True)
class RunConfig:
    env: EnvConfig = field(default_factory=EnvConfig)
    ppo: PPOConfig = field(default_factory=PPOConfig)
    belief: BeliefConfig = field(default_factory=BeliefConfig)
    scenario: str = "optimistic"
    seed: int = 0
    trials: int = 500
    out_dir: str = "runs"

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "trials": self.trials,
            "out_dir": self.out_dir,
            "env": self.env.to_dict(),
            "ppo": dataclasses.asdict(self.ppo),
            "belief": dataclasses.asdict(self.belief),
        }


def _build_section(cls, data: dict, section: str, errors: list[str], post_process=None):
    """Instantiate a config dataclass from a dict, collecting all problems."""
    known = {f.name: f for f in dataclasses.fields(cls)}
    unknown = set(data) - set(known)
    for key in sorted(unknown):
        errors.append(f"{section}.{key}: unknown key")
    kwargs = {k: v for k, v in data.items() if k in known}
    if post_process:
        post_process(kwargs)
    try:
        return cls(**kwargs)
    except (EnvConfigError, ValueError) as err:
        errors.append(f"{section}: {err}")
        return cls()


def load_config(path) -> RunConfig:
    """Parse and validate a YAML run config; raise ConfigError listing every problem."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    except yaml.YAMLError as err:
        raise ConfigError(f"config {path} is not valid YAML: {err}") from err
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(f"config root must be a mapping, got {type(raw).__name__}")

    errors: list[str] = []
    top_known = {"scenario", "seed", "trials", "out_dir", "env", "ppo", "belief"}
    for key in sorted(set(raw) - top_known):
        errors.append(f"{key}: unknown key")

    def fix_env(kwargs: dict) -> None:
        if "initial_vuln_range" in kwargs:
            kwargs["initial_vuln_range"] = tuple(kwargs["initial_vuln_range"])

    def fix_ppo(kwargs: dict) -> None:
        if "hidden_sizes" in kwargs:
            kwargs["hidden_sizes"] = tuple(kwargs["hidden_sizes"])

    env = _build_section(EnvConfig, raw.get("env", {}) or {}, "env", errors, fix_env)
    ppo = _build_section(PPOConfig, raw.get("ppo", {}) or {}, "ppo", errors, fix_ppo)
    belief = _build_section(BeliefConfig, raw.get("belief", {}) or {}, "belief", errors)
    errors.extend(belief.validation_errors())

    scenario = raw.get("scenario", "optimistic")
    if scenario not in ("optimistic", "pessimistic", "best_case", "worst_case"):
        errors.append(f"scenario: unknown value {scenario!r}")
    seed = raw.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        errors.append(f"seed: must be an integer (got {seed!r})")
        seed = 0
    trials = raw.get("trials", 500)
    if not isinstance(trials, int) or isinstance(trials, bool) or trials < 1:
        errors.append(f"trials: must be a positive integer (got {trials!r})")
        trials = 1
    out_dir = raw.get("out_dir", "runs")
    if not isinstance(out_dir, str):
        errors.append(f"out_dir: must be a string (got {out_dir!r})")
        out_dir = "runs"

    if errors:
        raise ConfigError("; ".join(errors))

    if SEED_ENV_VAR in os.environ:
        try:
            seed = int(os.environ[SEED_ENV_VAR])
        except ValueError as err:
            raise ConfigError(f"{SEED_ENV_VAR} must be an integer: {err}") from err
    if OUT_ENV_VAR in os.environ:
        out_dir = os.environ[OUT_ENV_VAR]

    return RunConfig(
        env=env, ppo=ppo, belief=belief,
        scenario=scenario, seed=seed, trials=trials, out_dir=out_dir,
    )


def write_resolved_config(cfg: RunConfig, path) -> None:
    """Snapshot the fully resolved configuration next to a run's outputs."""
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(cfg.to_dict(), fh, sort_keys=True)
