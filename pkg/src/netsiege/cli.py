"""Command-line entry points: train, evaluate, sweep, priors.

Every command reads one YAML config (see runconfig), honors NETSIEGE_SEED /
NETSIEGE_OUT overrides, and writes a resolved-config snapshot next to its
outputs. Exit codes: 0 success, 2 configuration problems, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .agents import BHAttacker, NSARedAttacker, NullAttacker, PolicyAgent
from .env.observe import DEFENDER, FULL_KNOWLEDGE, ZERO_KNOWLEDGE, attacker_obs_len, obs_len_for
from .evals import (
    EvalSetupError,
    cost_sensitivity_sweep,
    export_metrics,
    export_sweep,
    run_evaluation,
)
from .ppo.checkpoint import CheckpointError, load_checkpoint, save_checkpoint
from .ppo.train import train_dual
from .runconfig import ConfigError, RunConfig, load_config, write_resolved_config

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def _write_curves(curves, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["episode", "attacker_reward", "defender_reward", "episode_length", "winner"])
        for row in curves:
            writer.writerow([
                row.episode,
                repr(row.attacker_reward),
                repr(row.defender_reward),
                row.episode_length,
                row.winner,
            ])


def _prepare_out(cfg: RunConfig, name: str) -> str:
    out = cfg.out_dir
    os.makedirs(out, exist_ok=True)
    write_resolved_config(cfg, os.path.join(out, f"{name}_resolved_config.yaml"))
    return out


def cmd_train(cfg: RunConfig, scenario: str | None, attacker_mode: str | None) -> int:
    scenario = scenario or cfg.scenario
    out = _prepare_out(cfg, f"train_{scenario}")
    result = train_dual(scenario, cfg.env, cfg.ppo, cfg.seed, attacker_mode=attacker_mode)
    tag = scenario if attacker_mode is None else f"{scenario}_{attacker_mode}"
    atk_path = os.path.join(out, f"attacker_{tag}.ckpt")
    save_checkpoint(result.attacker, atk_path)
    written = [atk_path]
    if result.defender is not None:
        def_path = os.path.join(out, f"defender_{tag}.ckpt")
        save_checkpoint(result.defender, def_path)
        written.append(def_path)
    curve_path = os.path.join(out, f"curves_{tag}.csv")
    _write_curves(result.curves, curve_path)
    written.append(curve_path)
    for path in written:
        print(path)
    return EXIT_OK


def cmd_priors(cfg: RunConfig) -> int:
    """Train the best/worst-case attacker models in both observation modes."""
    out = _prepare_out(cfg, "priors")
    written = []
    for scenario in ("best_case", "worst_case"):
        for mode in (ZERO_KNOWLEDGE, FULL_KNOWLEDGE):
            result = train_dual(scenario, cfg.env, cfg.ppo, cfg.seed, attacker_mode=mode)
            path = os.path.join(out, f"attacker_{scenario}_{mode}.ckpt")
            save_checkpoint(result.attacker, path)
            written.append(path)
            curve_path = os.path.join(out, f"curves_{scenario}_{mode}.csv")
            _write_curves(result.curves, curve_path)
            written.append(curve_path)
    for path in written:
        print(path)
    return EXIT_OK


def _attacker_mode_of(params, n: int) -> str:
    if params.obs_len == attacker_obs_len(n, ZERO_KNOWLEDGE):
        return ZERO_KNOWLEDGE
    return FULL_KNOWLEDGE


def _defender_mode_of(params, n: int) -> str:
    if params.obs_len == obs_len_for("defender", DEFENDER, n):
        return DEFENDER
    return FULL_KNOWLEDGE


def _build_attacker(spec: str, args, cfg: RunConfig):
    n = cfg.env.n_nodes
    # policy-backed attackers replay the action semantics they trained under
    mask = cfg.ppo.invalid_action_mode == "mask"
    if spec == "nsared":
        return NSARedAttacker(cfg.env.attacker_win_fraction)
    if spec == "null":
        return NullAttacker()
    if spec.startswith("policy:"):
        params = load_checkpoint(spec.split(":", 1)[1])
        return PolicyAgent(params, "attacker", _attacker_mode_of(params, n), mask_invalid=mask)
    if spec.startswith("bh:"):
        mode = spec.split(":", 1)[1]
        if mode not in (ZERO_KNOWLEDGE, FULL_KNOWLEDGE):
            raise ConfigError(f"bh attacker mode must be zero_knowledge or full_knowledge, got {mode!r}")
        if not (args.attacker_ckpt and args.best_ckpt and args.worst_ckpt):
            raise ConfigError(
                "bh attacker needs --attacker-ckpt (pi_hat), --best-ckpt and --worst-ckpt"
            )
        return BHAttacker(
            load_checkpoint(args.attacker_ckpt),
            load_checkpoint(args.best_ckpt),
            load_checkpoint(args.worst_ckpt),
            obs_mode=mode,
            gamma_decay=cfg.belief.gamma_decay,
            pert_mode=cfg.belief.pert_mode,
            pseudo_obs_weight=cfg.belief.pseudo_obs_weight,
            mask_invalid=mask,
        )
    raise ConfigError(
        f"unknown attacker spec {spec!r}; expected nsared, null, policy:<ckpt>, or bh:<mode>"
    )


def _attacker_tag(spec: str) -> str:
    """Filesystem-safe short name for an attacker spec."""
    if spec.startswith("policy:"):
        stem = os.path.splitext(os.path.basename(spec.split(":", 1)[1]))[0]
        return f"policy_{stem}"
    return spec.replace(":", "_")


def cmd_evaluate(cfg: RunConfig, args) -> int:
    defender_params = load_checkpoint(args.defender_ckpt)
    defender = PolicyAgent(
        defender_params, "defender", _defender_mode_of(defender_params, cfg.env.n_nodes)
    )
    attacker = _build_attacker(args.attacker, args, cfg)
    matchup = f"{defender_params.scenario}_vs_{_attacker_tag(args.attacker)}"
    out = _prepare_out(cfg, f"evaluate_{matchup}")
    report = run_evaluation(
        defender, attacker, cfg.trials, cfg.env, cfg.seed, matchup=matchup
    )
    csv_path = os.path.join(out, f"eval_{matchup}.csv")
    json_path = os.path.join(out, f"eval_{matchup}.json")
    export_metrics(report, csv_path, "csv")
    export_metrics(report, json_path, "json_summary")
    print(csv_path)
    print(json_path)
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, args) -> int:
    defender_params = load_checkpoint(args.defender_ckpt)
    attacker_params = load_checkpoint(args.attacker_ckpt)
    out = _prepare_out(cfg, "sweep")
    report = cost_sensitivity_sweep(
        args.resolution, cfg.env, (defender_params, attacker_params), cfg.seed,
        trials_per_cell=args.trials_per_cell,
        invalid_action_mode=cfg.ppo.invalid_action_mode,
    )
    sweep_path = os.path.join(out, "sweep.csv")
    export_sweep(report, sweep_path)
    fit_path = os.path.join(out, "sweep_fit.json")
    with open(fit_path, "w", encoding="utf-8") as fh:
        json.dump(
            {
                "slope": report.fit_slope,
                "intercept": report.fit_intercept,
                "r2": report.fit_r2,
                "baseline_defender_reward": report.baseline_defender_reward,
            },
            fh,
            indent=2,
            sort_keys=True,
        )
        fh.write("\n")
    print(sweep_path)
    print(fit_path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netsiege",
        description="Network-security game: train, evaluate, sweep, priors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="path to the YAML run config")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--out", default=None, help="override the output directory")

    p_train = sub.add_parser("train", help="train one scenario's agents")
    common(p_train)
    p_train.add_argument("--scenario", default=None,
                         choices=["optimistic", "pessimistic", "best_case", "worst_case"])
    p_train.add_argument("--attacker-mode", default=None,
                         choices=[ZERO_KNOWLEDGE, FULL_KNOWLEDGE],
                         help="attacker observation model for best_case/worst_case")

    p_priors = sub.add_parser("priors", help="train best/worst-case attacker models (both modes)")
    common(p_priors)

    p_eval = sub.add_parser("evaluate", help="evaluate a defender checkpoint against an attacker")
    common(p_eval)
    p_eval.add_argument("--defender-ckpt", required=True)
    p_eval.add_argument("--attacker", required=True,
                        help="nsared | null | policy:<ckpt> | bh:zero_knowledge | bh:full_knowledge")
    p_eval.add_argument("--attacker-ckpt", default=None, help="pi_hat checkpoint for bh attackers")
    p_eval.add_argument("--best-ckpt", default=None, help="pi_best checkpoint for bh attackers")
    p_eval.add_argument("--worst-ckpt", default=None, help="pi_worst checkpoint for bh attackers")
    p_eval.add_argument("--trials", type=int, default=None, help="override config trial count")

    p_sweep = sub.add_parser("sweep", help="cost-sensitivity sweep on frozen agents")
    common(p_sweep)
    p_sweep.add_argument("--defender-ckpt", required=True)
    p_sweep.add_argument("--attacker-ckpt", required=True)
    p_sweep.add_argument("--resolution", type=int, default=5)
    p_sweep.add_argument("--trials-per-cell", type=int, default=10)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        overrides = {}
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.out is not None:
            overrides["out_dir"] = args.out
        if getattr(args, "trials", None) is not None:
            overrides["trials"] = args.trials
        if overrides:
            import dataclasses

            cfg = dataclasses.replace(cfg, **overrides)

        if args.command == "train":
            return cmd_train(cfg, args.scenario, args.attacker_mode)
        if args.command == "priors":
            return cmd_priors(cfg)
        if args.command == "evaluate":
            return cmd_evaluate(cfg, args)
        if args.command == "sweep":
            return cmd_sweep(cfg, args)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, CheckpointError, EvalSetupError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as err:  # runtime failures get their own exit code
        print(f"runtime error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
