"""Assembling the full Bayes-Hurwicz attacker from trained priors.

The BH attacker (demos 03 + 04 put together) needs three frozen policies
sharing one observation space:

    pi_hat    what it trained against expects (here: the best_case attacker)
    pi_best   trained vs no defender        (best_case scenario)
    pi_worst  trained vs a full-view defender (worst_case scenario)

At each episode start it draws mu_hat/phi_hat priors from PERT(0, 0.5, 1);
whenever the defender visibly reacts (restores away access it held), its
confidence gamma in pi_hat decays harmonically and weight shifts into the
Hurwicz best/worst blend. This is the machinery for evaluating defenders
against attackers that *adapt under uncertainty* instead of replaying their
training-time adversary.

Run: python demos/08_bayes_hurwicz_attacker.py   (~40s)
"""

from netsiege.agents import BHAttacker, PolicyAgent
from netsiege.env import DEFENDER, ZERO_KNOWLEDGE, EnvConfig
from netsiege.evals import run_evaluation
from netsiege.ppo import PPOConfig, train_dual

env = EnvConfig(n_nodes=8, connectivity=0.4, max_timesteps=60, node_value=100.0)
ppo = PPOConfig(training_episodes=100, rollout_episodes=4, hidden_sizes=(32,),
                actor_lr=1e-3, critic_lr=1e-3, invalid_action_mode="mask")

# Train the prior policies. Both use the zero-knowledge observation space so
# the three-way mix is over compatible distributions.
best = train_dual("best_case", env, ppo, seed=21)    # attacker vs nobody
worst = train_dual("worst_case", env, ppo, seed=21)  # attacker vs full-view defender
defended = train_dual("optimistic", env, ppo, seed=21)

bh = BHAttacker(
    pi_hat=best.attacker,       # assume the carefree world until told otherwise
    pi_best=best.attacker,
    pi_worst=worst.attacker,
    obs_mode=ZERO_KNOWLEDGE,
    mask_invalid=True,          # priors are mask-trained: mix their masked dists
)

defender = PolicyAgent(defended.defender, "defender", DEFENDER)

# The BH attacker drops into the same evaluation harness as any other agent.
report = run_evaluation(defender, bh, n_trials=50, env_cfg=env, seed=77,
                        matchup="optimistic_vs_bh")
print(f"defender vs BH attacker: mean {report.defender_scores.mean():8.1f}, "
      f"defender wins {report.winners.count('defender')}/50")
print(f"BH attacker mean score: {report.attacker_scores.mean():8.1f}")

# After a game, the belief state shows what the attacker concluded: k counts
# the defender reactions it felt, gamma its residual trust in pi_hat.
b = bh.belief
print(f"final-episode belief: mu_hat {b.mu_hat:.3f}, gamma {b.gamma:.3f}, "
      f"k {b.k} observed reactions over {b.t} steps")

# Sanity: the three policies must agree on obs/action shapes, and the
# constructor enforces it.
try:
    BHAttacker(pi_hat=best.attacker, pi_best=best.attacker,
               pi_worst=defended.defender, obs_mode=ZERO_KNOWLEDGE)
except ValueError as err:
    print(f"shape guard works: {err}")
