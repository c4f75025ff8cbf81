"""How much defense you lose per point of action cost.

The sweep scales every action cost by connectivity/security over a log-spaced
grid of both axes, re-evaluating one frozen matchup per cell. Two design
guarantees make the result trustworthy:

  * Stream discipline: policies never observe costs, and every cell replays
    the same derived trial seeds, so each cell's action stream is identical
    to the baseline's -- the multiplier touches the cost ledger only. The
    report carries per-cell action-stream digests to prove it.
  * Rewards are therefore exactly affine in the ratio; the summary fits mean
    defender reward against the ratio and reports slope (reward lost per unit
    of cost inflation) with its R^2.

Run: python demos/07_cost_sensitivity_sweep.py   (~20s)
"""

import tempfile
from pathlib import Path

import numpy as np

from netsiege.env import EnvConfig
from netsiege.evals import cost_sensitivity_sweep, export_sweep
from netsiege.ppo import PPOConfig, train_dual

env = EnvConfig(n_nodes=8, connectivity=0.4, max_timesteps=60, node_value=100.0)
ppo = PPOConfig(training_episodes=100, rollout_episodes=4, hidden_sizes=(32,),
                actor_lr=1e-3, critic_lr=1e-3, invalid_action_mode="mask")

trained = train_dual("optimistic", env, ppo, seed=8)

report = cost_sensitivity_sweep(
    grid_resolution=4,
    base_cfg=env,
    trained_params=(trained.defender, trained.attacker),
    seed=42,
    trials_per_cell=20,
    invalid_action_mode="mask",  # replay the semantics the pair trained under
)

# The grid: cell [i, j] multiplies costs by connectivity_i / security_j.
print("mean defender reward by cost ratio (rows: connectivity, cols: security):")
header = "        " + "  ".join(f"s={s:5.3f}" for s in report.security_values)
print(header)
for i, c in enumerate(report.connectivity_values):
    cells = "  ".join(f"{report.mean_defender_reward[i, j]:7.1f}" for j in range(len(report.security_values)))
    print(f"c={c:5.3f} {cells}")

# Every diagonal cell has ratio exactly 1.0 and must replay the baseline
# episode stream bit-for-bit.
diag_match = all(
    report.action_stream_digest[i][i] == report.baseline_stream_digest
    for i in range(len(report.connectivity_values))
)
print()
print(f"ratio-1.0 diagonal replays the baseline stream digest: {diag_match}")

# More costly defense can only hurt: sort all cells by ratio and check the
# reward never increases.
order = np.argsort(report.ratios.ravel())
rewards = report.mean_defender_reward.ravel()[order]
print(f"reward monotone non-increasing in the ratio: {bool(np.all(np.diff(rewards) <= 1e-9))}")
print(f"linear fit: slope {report.fit_slope:.2f} per unit ratio, "
      f"intercept {report.fit_intercept:.2f}, R^2 {report.fit_r2:.6f}")

out = Path(tempfile.mkdtemp()) / "sweep.csv"
export_sweep(report, out)
print()
print("sweep CSV head:")
for line in out.read_text().splitlines()[:3]:
    print(f"  {line}")
