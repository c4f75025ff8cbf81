"""Head-to-head evaluation with frozen policies, plus the export formats.

Evaluation freezes both sides and plays n fresh networks, each from its own
derived trial seed, so results are reproducible and any single trial can be
replayed in isolation. The report carries scores, winners, episode lengths,
and per-action usage; exports land as CSV (one row per trial) and JSON
(summary statistics) for downstream tooling.

Run: python demos/06_evaluate_and_export.py   (~20s)
"""

import json
import tempfile
from pathlib import Path

from netsiege.agents import NSARedAttacker, PolicyAgent
from netsiege.env import DEFENDER, ZERO_KNOWLEDGE, EnvConfig
from netsiege.evals import (
    action_usage,
    export_metrics,
    interquartile_mean,
    run_evaluation,
    score_distribution,
)
from netsiege.ppo import PPOConfig, train_dual

env = EnvConfig(n_nodes=8, connectivity=0.4, max_timesteps=60, node_value=100.0)
ppo = PPOConfig(training_episodes=100, rollout_episodes=4, hidden_sizes=(32,),
                actor_lr=1e-3, critic_lr=1e-3, invalid_action_mode="mask")

# Train one optimistic pair, then freeze: the attacker plays on sampled
# actions but its weights never change during evaluation.  A mask-trained
# policy only ever acted through the renormalized valid-action distribution,
# so evaluation replays the same semantics (mask_invalid=True); without it
# the frozen attacker would leak probability onto invalid actions it never
# learned to avoid.  Defender actions are always valid, so no mask there.
trained = train_dual("optimistic", env, ppo, seed=8)
defender = PolicyAgent(trained.defender, "defender", DEFENDER)
attacker = PolicyAgent(trained.attacker, "attacker", ZERO_KNOWLEDGE, mask_invalid=True)

report = run_evaluation(defender, attacker, n_trials=60, env_cfg=env, seed=99)

# Mean vs interquartile mean: the IQM drops the top and bottom quarters, so a
# few blowout episodes cannot carry the comparison.
scores = report.defender_scores
print(f"defender vs its training adversary over {report.n_trials} trials")
print(f"  mean {scores.mean():8.1f}   IQM {interquartile_mean(scores):8.1f}   "
      f"defender wins {report.winners.count('defender')}")

# Action usage is reported as percentages of realized actions.
print(f"  defender usage: {action_usage(report, 'defender')}")
print(f"  attacker usage: {action_usage(report, 'attacker')}")

# The same harness runs scripted opponents -- swap in the NSARed baseline.
ns_report = run_evaluation(
    defender, NSARedAttacker(win_fraction=env.attacker_win_fraction),
    n_trials=60, env_cfg=env, seed=99, matchup="optimistic_vs_nsared",
)
print(f"vs NSARed: mean {ns_report.defender_scores.mean():8.1f}, "
      f"defender wins {ns_report.winners.count('defender')}")

# score_distribution bins scores as densities (the histogram integrates to 1).
edges, densities = score_distribution(scores, bin_count=10)
width = edges[1] - edges[0]
print(f"histogram over 10 bins integrates to {float((densities * width).sum()):.6f}")

# Exports: CSV is one row per trial; JSON carries the summary block.
out = Path(tempfile.mkdtemp())
export_metrics(ns_report, out / "eval.csv", format="csv")
export_metrics(ns_report, out / "eval.json", format="json_summary")
print()
print("CSV head:")
for line in (out / "eval.csv").read_text().splitlines()[:3]:
    print(f"  {line}")
summary = json.loads((out / "eval.json").read_text())
print(f"JSON keys: {sorted(summary)}")
print(f"  defender IQM from JSON: {summary['defender']['iqm']:.1f}")
