"""Training the four scenarios, miniature edition.

A scenario fixes who learns and what each side can see:

    optimistic   zero-knowledge attacker  vs learning defender
    pessimistic  full-knowledge attacker  vs learning defender
    best_case    learning attacker        vs do-nothing defender
    worst_case   learning attacker        vs learning full-view defender

"Optimistic" and "pessimistic" name the defender's training-time assumption
about its adversary: the pessimistic defender trains against an attacker that
sees everything (true vulnerabilities, its own alert trail). The question the
evaluation suite answers is whether that paranoia helps or hurts when the
real attacker is weaker — here we just watch the training loop work.

Run: python demos/05_train_scenarios.py   (~30s)
"""

import numpy as np

from netsiege.env import EnvConfig
from netsiege.ppo import PPOConfig, train_dual

# Miniature sizes so this demo runs in seconds; see configs/reference.yaml
# for the full experiment regime.
env = EnvConfig(n_nodes=8, connectivity=0.4, max_timesteps=60, node_value=100.0)
ppo = PPOConfig(
    training_episodes=120,
    rollout_episodes=4,       # PPO update every 4 episodes
    hidden_sizes=(32,),
    actor_lr=1e-3,
    critic_lr=1e-3,
    invalid_action_mode="mask",   # sample over structurally valid actions
)

for scenario in ("optimistic", "pessimistic", "best_case"):
    result = train_dual(scenario, env, ppo, seed=5)
    rows = result.curves
    third = len(rows) // 3
    early = np.mean([r.attacker_reward for r in rows[:third]])
    late = np.mean([r.attacker_reward for r in rows[-third:]])
    lengths = np.mean([r.episode_length for r in rows[-third:]])
    atk_wins = sum(r.winner == "attacker" for r in rows[-third:])
    print(f"{scenario:<12} attacker reward {early:>8.1f} -> {late:>8.1f}   "
          f"late mean length {lengths:5.1f}   late attacker wins {atk_wins}/{third}")
    # best_case has no trained defender: the scripted null defender just watches
    print(f"{'':<12} trained params: attacker obs_len {result.attacker.obs_len}, "
          f"defender {'none' if result.defender is None else result.defender.obs_len}")

# Determinism: same seed, same configs => bit-identical curves and weights.
again = train_dual("optimistic", env, ppo, seed=5)
first = train_dual("optimistic", env, ppo, seed=5)
assert [r.attacker_reward for r in again.curves] == [r.attacker_reward for r in first.curves]
print()
print("same seed reruns reproduce the training curve exactly")
