"""How the defender infers compromise from noisy alert counts.

Each step the defender sees one number per tick: how many nodes alerted. True
detections fire with probability p on the node the attacker touched; every
node also false-positives with probability q. The estimator tracks the
per-step alert rate with a running (Welford) mean/variance, moment-matches a
Beta posterior, and inverts the noise channel to recover mu, the fraction of
the network it believes is compromised.

Run: python demos/02_defender_presence_belief.py
"""

import numpy as np

from netsiege.beliefs import DefenderBelief, defender_presence_update, threshold_exceeded

rng = np.random.default_rng(0)

n = 50          # network size
p = 0.5         # detection probability on attacker-touched nodes
q = 0.05        # per-node false-positive probability
true_mu = 0.30  # ground truth: 30% of nodes are compromised

# Simulate the alert channel directly: each compromised node is "touched"
# once per step and alerts with probability p + q - pq; clean nodes alert
# with probability q. The belief only ever sees the total count.
compromised = int(true_mu * n)
p_touched = p + q - p * q

belief = DefenderBelief(detect_prob=p, false_positive_prob=q, threshold=0.25)
print("   t  alerts  mu_estimate  triggered")
for t in range(1, 41):
    alerts = int(rng.binomial(compromised, p_touched) + rng.binomial(n - compromised, q))
    belief = defender_presence_update(belief, alerts, n, t)
    if t <= 10 or t % 10 == 0:
        print(f"  {t:>2}  {alerts:>6}  {belief.mu:>11.3f}  {threshold_exceeded(belief)}")

print()
print(f"true compromised fraction: {true_mu:.3f}")
print(f"estimate after 40 steps:   {belief.mu:.3f}")

# The estimate converges because inversion undoes the channel:
#   observed rate ~= mu*(p + q - pq) + (1 - mu)*q  =>  mu = (rate - q) / (p - pq)
implied = (belief.rate_mean - q) / (p * (1 - q))
print(f"direct inversion of the running mean gives the same thing: {implied:.3f}")

# Degenerate channels are handled, not crashed on: with p = 0 alerts carry no
# signal, so the update leaves mu alone and says why.
dead = DefenderBelief(detect_prob=0.0, false_positive_prob=q)
dead = defender_presence_update(dead, 3, n, 1)
print()
print(f"p=0 diagnostic: {dead.last_diagnostic}")
