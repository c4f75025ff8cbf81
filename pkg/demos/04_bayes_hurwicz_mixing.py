"""Acting under uncertainty about the defender: restricted Bayes-Hurwicz.

An attacker trained against one defender meets a different one. Instead of
trusting its trained policy pi_hat blindly, it hedges across three frozen
policies:

    mix = gamma * pi_hat + (1 - gamma) * (mu_hat * pi_worst + (1 - mu_hat) * pi_best)

gamma is its confidence that the defender matches the one it trained against;
mu_hat is its belief that a (reactive) defender is present at all, which
doubles as the Hurwicz pessimism weight between the worst-case policy
(trained vs a strong defender) and the best-case one (trained vs none).

Run: python demos/04_bayes_hurwicz_mixing.py
"""

import numpy as np

from netsiege.criteria import ActionDistribution, restricted_bayes_hurwicz, select_action

# Three toy 4-action policies with clearly different preferences.
pi_hat = ActionDistribution(probs=np.array([0.70, 0.10, 0.10, 0.10]))    # trusts action 0
pi_best = ActionDistribution(probs=np.array([0.05, 0.85, 0.05, 0.05]))   # carefree: action 1
pi_worst = ActionDistribution(probs=np.array([0.05, 0.05, 0.05, 0.85]))  # paranoid: action 3


def show(label, dist):
    cells = "  ".join(f"{p:.3f}" for p in dist.probs)
    print(f"  {label:<34} [{cells}]")


# Corners first: the mix degenerates to exactly one input at each extreme.
print("corners:")
show("gamma=1 (full trust in pi_hat)", restricted_bayes_hurwicz(pi_hat, pi_best, pi_worst, 1.0, 0.3))
show("gamma=0, mu_hat=0 (pure best case)", restricted_bayes_hurwicz(pi_hat, pi_best, pi_worst, 0.0, 0.0))
show("gamma=0, mu_hat=1 (pure worst case)", restricted_bayes_hurwicz(pi_hat, pi_best, pi_worst, 0.0, 1.0))
print()

# The trajectory an attacker actually walks: gamma decays harmonically as it
# observes defender reactions (demo 03), so weight drains from pi_hat into
# the Hurwicz blend. Here mu_hat is held at 0.7 (fairly sure someone's home).
print("harmonic gamma decay at mu_hat = 0.7:")
print("   k  gamma   mix")
for k in range(0, 6):
    gamma = 1.0 / (k + 1)
    mixed = restricted_bayes_hurwicz(pi_hat, pi_best, pi_worst, gamma, 0.7)
    cells = "  ".join(f"{p:.3f}" for p in mixed.probs)
    print(f"  {k:>2}  {gamma:.3f}  [{cells}]")
print()

# The mix is a proper distribution (mixtures of distributions always are) and
# feeds straight into action selection: sample for play, argmax for greedy.
mixed = restricted_bayes_hurwicz(pi_hat, pi_best, pi_worst, 0.25, 0.7)
assert abs(float(mixed.probs.sum()) - 1.0) < 1e-12
rng = np.random.default_rng(4)
samples = [select_action(mixed, "sample", rng) for _ in range(4000)]
freq = np.bincount(samples, minlength=4) / len(samples)
print(f"mix at gamma=0.25, mu_hat=0.7:  {np.round(mixed.probs, 3)}")
print(f"empirical sample frequencies:   {np.round(freq, 3)}")
print(f"argmax pick: action {select_action(mixed, 'argmax', rng)} "
      "(the paranoid action wins once trust is gone)")
