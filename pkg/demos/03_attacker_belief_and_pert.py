"""The attacker's picture of the defender, built from sparse evidence.

The attacker cannot see the defender; it only notices when access it held
gets yanked away (a restore hit one of its nodes). From those rare events it
maintains mu_hat, the probability a reactive defender is present, and gamma,
its residual confidence in the "defender I trained against" — the weight
that Bayes-Hurwicz mixing (demo 04) puts on the baseline policy.

Priors are drawn from a PERT distribution: a Beta stretched over
[min, max] and peaked at a chosen mode, the classic way to encode "expert
says about 0.5, could be anything in [0, 1]".

Run: python demos/03_attacker_belief_and_pert.py
"""

import numpy as np

from netsiege.beliefs import (
    AttackerBelief,
    attacker_belief_update,
    sample_pert,
)

rng = np.random.default_rng(3)

# -- PERT priors -------------------------------------------------------------
draws = np.array([sample_pert(0.0, 0.5, 1.0, rng) for _ in range(20000)])
print("PERT(0, 0.5, 1) prior: mean {:.3f} (theory 0.5), within [0,1]: {}".format(
    draws.mean(), bool((draws >= 0).all() and (draws <= 1).all())))
# The mode parameter shifts the mass: a paranoid attacker starts high.
high = np.array([sample_pert(0.0, 0.8, 1.0, rng) for _ in range(20000)])
print(f"PERT(0, 0.8, 1) prior: mean {high.mean():.3f} (theory {(0 + 4*0.8 + 1)/6:.3f})")
print()

# -- belief trajectory ---------------------------------------------------------
# A defender that visibly reacts on ~30% of steps. Watch mu_hat climb on each
# observation and gamma decay harmonically (1/2, 1/3, 1/4, ...): confidence
# in the assumed defender model erodes as real evidence accumulates.
belief = AttackerBelief(
    mu_hat=float(sample_pert(0.0, 0.5, 1.0, rng)),
    phi_hat=float(sample_pert(0.0, 0.5, 1.0, rng)),
    n=20,
)
print(f"prior: mu_hat {belief.mu_hat:.3f}, phi_hat {belief.phi_hat:.3f}, gamma {belief.gamma:.3f}")
print()
print("   t  observed  mu_hat  gamma   k")
for t in range(1, 26):
    observed = bool(rng.random() < 0.30)
    belief = attacker_belief_update(belief, observed)
    if observed or t % 5 == 0:
        print(f"  {t:>2}  {'yes' if observed else '  .':>8}  {belief.mu_hat:.3f}  {belief.gamma:.3f}  {belief.k:>2}")

print()
print("gamma after k observations is 1/(k+1): "
      f"k={belief.k} -> gamma={belief.gamma:.4f} (expected {1/(belief.k+1):.4f})")
