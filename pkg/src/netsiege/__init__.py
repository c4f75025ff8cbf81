"""netsiege: a stochastic network-security game with belief-aware agents.

A single attacker and a single defender play simultaneous moves on a random
graph under noisy, asymmetric observation. The package provides the game
engine, Bayesian belief machinery for both sides, a from-scratch numpy PPO
trainer with optimistic/pessimistic/best/worst-case scenarios, a restricted
Bayes/Hurwicz attacker, and an evaluation harness with cost-sensitivity
sweeps.
"""

from . import agents, beliefs, criteria, env, evals, episode, ppo, runconfig

__version__ = "0.1.0"

__all__ = [
    "agents",
    "beliefs",
    "criteria",
    "env",
    "evals",
    "episode",
    "ppo",
    "runconfig",
    "__version__",
]
