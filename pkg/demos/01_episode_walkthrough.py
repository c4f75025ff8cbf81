"""One full game, narrated step by step.

The simulator plays a stochastic security game on a random graph: an attacker
expands a foothold node by node while a defender patches, restores, and scans
under noisy alerts. This script builds a small network, pits the scripted
NSARed attacker against a do-nothing defender, and prints the whole episode
transcript so you can watch compromise spread.

Run: python demos/01_episode_walkthrough.py
"""

from netsiege.agents import NSARedAttacker, NullDefender
from netsiege.env import EnvConfig
from netsiege.episode import play_episode

# A 10-node network. connectivity controls how many random edges get added on
# top of a spanning tree; detect_prob (p) is the chance the node the attacker
# touched raises an alert; false_positive_prob (q) is each node's baseline
# alert chance per step.
cfg = EnvConfig(
    n_nodes=10,
    connectivity=0.4,
    detect_prob=0.5,
    false_positive_prob=0.05,
    max_timesteps=100,
    node_value=100.0,
)

# NSARed is the scripted red-team baseline: it attacks the most vulnerable
# accessible node, fires a guaranteed zero-day every fifth offensive action,
# sometimes skips a turn, and cashes out when it holds enough of the network.
attacker = NSARedAttacker(win_fraction=cfg.attacker_win_fraction)
defender = NullDefender()  # does nothing, costs nothing

# Everything is reproducible from one integer: the episode seed is split four
# ways (network init, environment noise, attacker rng, defender rng).
result = play_episode(cfg, attacker, defender, episode_seed=7, record_transcript=True)

print(f"winner: {result.winner.value} after {result.length} steps")
print(f"attacker score: {result.attacker_score:.1f} "
      f"(costs {result.attacker_cost_total:.1f})")
print(f"defender score: {result.defender_score:.1f}")
print()

# The transcript's first record is the header (config fingerprint, seed);
# each following record is one simultaneous move with its outcome.
header, *steps = result.transcript
print(f"config fingerprint {header['config_fingerprint']}, seed {header['episode_seed']}")
print()
print(" t  attacker action     ok  alerts  winner")
for rec in steps:
    act = rec["attacker"]
    tgt = "" if act["target"] is None else f"->{act['target']}"
    label = f"{act['kind']}{tgt}"
    print(f"{rec['t']:>2}  {label:<19} {'y' if rec['attack_succeeded'] else '.':>2}"
          f"  {len(rec['alerts']):>5}  {rec['winner'] or ''}")

# The final state is inspectable: which nodes ended up compromised, and what
# the sticky alert flags looked like when the game ended.
state = result.final_state
flagged = [i for i, node in enumerate(state.graph.nodes) if node.visible_alert]
print()
print(f"compromised at the end: {sorted(state.compromised_set)}")
print(f"sticky alert flags:     {flagged}")
