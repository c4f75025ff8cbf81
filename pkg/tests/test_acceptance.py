"""Acceptance gate: one test per top-level requirement.

Every test carries ``@pytest.mark.acceptance(criterion=...)``; the conftest
hook prints one ``[ACCEPTANCE] <criterion>: PASS/FAIL`` line per criterion in
the terminal summary.  The formula/belief/PPO/environment criteria re-assert
the oracle properties compactly with their stated tolerances and runtime
bounds.  The three experiment criteria (defender comparison, NSARed
robustness, restore-share directionality) share one session-scoped fixture
that trains both scenarios across three master seeds from ``configs/desk.yaml``
— a few minutes of real PPO training.  ``pytest -m "not acceptance"`` skips
the whole gate.
"""

from __future__ import annotations

import subprocess
import sys
import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest

from conftest import path_state
from test_ppo import run_bandit, surrogate_finite_difference_errors

from netsiege.agents import NSARedAttacker, PolicyAgent
from netsiege.beliefs import (
    AttackerBelief,
    DefenderBelief,
    alert_probability,
    attacker_belief_update,
    beta_from_moments,
    defender_presence_update,
    expected_alerts,
    false_positive_probability,
    sample_pert,
)
from netsiege.criteria import ActionDistribution, restricted_bayes_hurwicz
from netsiege.env import (
    AttackerAction,
    AttackerActionKind,
    DefenderAction,
    DefenderActionKind,
    EnvConfig,
    Winner,
    check_termination,
    init_episode,
    step,
)
from netsiege.env.observe import DEFENDER, ZERO_KNOWLEDGE
from netsiege.evals import cost_sensitivity_sweep, interquartile_mean, run_evaluation
from netsiege.ppo import train_dual
from netsiege.runconfig import load_config

REPO_ROOT = Path(__file__).resolve().parents[1]
DESK_CONFIG = REPO_ROOT / "configs" / "desk.yaml"
DESK_SEEDS = (101, 202, 303)
EVAL_SEED_OFFSET = 7  # evaluation streams must not replay training streams

ATTACK = AttackerActionKind
DEFEND = DefenderActionKind


# ---------------------------------------------------------------------------
# Formula suite
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(criterion="formula suite")
def test_formula_suite_properties_within_one_minute():
    start = time.perf_counter()
    rng = np.random.default_rng(20260816)

    # alert-channel algebra: exact closed forms on a parameter grid
    for mu in (0.0, 0.25, 0.5, 1.0):
        for p in (0.0, 0.3, 0.9):
            for q in (0.0, 0.05, 0.5):
                combined = p + q - p * q
                assert alert_probability(mu, p, q) == pytest.approx(
                    (1 - mu) * q + mu * combined, abs=1e-15
                )
                assert false_positive_probability(mu, p, q) == pytest.approx(
                    (1 - mu) * q + mu * (1 - p) * q, abs=1e-15
                )
                assert expected_alerts(40, 25, mu, p, q) == pytest.approx(
                    1000 * alert_probability(mu, p, q), abs=1e-9
                )

    # Beta moment fit: round-trips mean/variance to 1e-9 on feasible pairs
    for _ in range(10_000):
        mean = float(rng.uniform(0.01, 0.99))
        variance = float(rng.uniform(1e-8, 1.0)) * mean * (1 - mean) * 0.999
        fit = beta_from_moments(mean, variance)
        assert fit.alpha > 0 and fit.beta > 0
        assert abs(fit.mean - mean) < 1e-9
        assert abs(fit.variance - variance) < 1e-9

    # PERT sampling: empirical mean within 3 standard errors over 1e5 draws
    for lo, mode, hi in [(0.0, 0.5, 1.0), (0.0, 0.2, 1.0), (0.1, 0.7, 0.9)]:
        draws = sample_pert(lo, mode, hi, rng, size=100_000)
        se = draws.std(ddof=1) / np.sqrt(draws.size)
        assert abs(draws.mean() - (lo + 4 * mode + hi) / 6) < 3 * se
        assert draws.min() >= lo and draws.max() <= hi

    # restricted Bayes-Hurwicz: output is a distribution and the mix is exact
    for _ in range(2_000):
        k = int(rng.integers(2, 8))
        mk = lambda: ActionDistribution(probs=rng.dirichlet(np.ones(k)))
        prior, best, worst = mk(), mk(), mk()
        gamma = float(rng.uniform(0, 1))
        mu_hat = float(rng.uniform(0, 1))
        out = restricted_bayes_hurwicz(prior, best, worst, gamma=gamma, mu_hat=mu_hat)
        expected = gamma * prior.probs + (1 - gamma) * (
            mu_hat * worst.probs + (1 - mu_hat) * best.probs
        )
        np.testing.assert_allclose(out.probs, expected, atol=1e-12)
        assert out.probs.sum() == pytest.approx(1.0, abs=1e-9)
        assert (out.probs >= 0).all()

    assert time.perf_counter() - start < 60.0


# ---------------------------------------------------------------------------
# Belief consistency
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(criterion="belief consistency")
def test_presence_belief_recovers_known_mu_within_one_minute():
    """Monte-Carlo alert streams at known mu recover mu within +/-0.05.

    n * t = 100 * 100 = 1e4 Bernoulli draws per level.
    """
    start = time.perf_counter()
    p, q = 0.5, 0.05
    n, ticks = 100, 100
    rng = np.random.default_rng(9)
    for mu_true in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
        rate = alert_probability(mu_true, p, q)
        belief = DefenderBelief(detect_prob=p, false_positive_prob=q, threshold=0.5)
        for t in range(1, ticks + 1):
            alerts = int(rng.binomial(n, rate))
            belief = defender_presence_update(belief, alerts, n=n, t=t)
        assert abs(belief.mu - mu_true) < 0.05, f"mu={mu_true}: estimated {belief.mu}"
    assert time.perf_counter() - start < 60.0


# ---------------------------------------------------------------------------
# Decision-rule corners and confidence decay
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(criterion="decision-rule corners and confidence decay")
def test_mixing_corners_exact_and_harmonic_gamma():
    prior = ActionDistribution(probs=np.array([0.2, 0.3, 0.5]))
    best = ActionDistribution(probs=np.array([1.0, 0.0, 0.0]))
    worst = ActionDistribution(probs=np.array([0.0, 0.0, 1.0]))

    # full confidence: the mix IS the prior
    out = restricted_bayes_hurwicz(prior, best, worst, gamma=1.0, mu_hat=0.7)
    assert np.array_equal(out.probs, prior.probs)
    # no confidence, no presence: the best-case distribution, exactly
    out = restricted_bayes_hurwicz(prior, best, worst, gamma=0.0, mu_hat=0.0)
    assert np.array_equal(out.probs, best.probs)
    # no confidence, certain presence: the worst-case distribution, exactly
    out = restricted_bayes_hurwicz(prior, best, worst, gamma=0.0, mu_hat=1.0)
    assert np.array_equal(out.probs, worst.probs)

    # harmonic confidence decay: gamma == 1/(k+1) exactly after k observations
    belief = AttackerBelief(mu_hat=0.5, phi_hat=0.5, n=50)
    assert belief.gamma == 1.0
    for k in range(1, 11):
        belief = attacker_belief_update(belief, True)
        assert belief.k == k
        assert belief.gamma == 1.0 / (k + 1)


# ---------------------------------------------------------------------------
# PPO sanity oracle
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(criterion="ppo sanity oracle")
def test_bandit_convergence_and_gradient_check_within_two_minutes():
    start = time.perf_counter()
    history = run_bandit(updates=200)
    assert history[-1] > 0.9, f"P(optimal arm) after 200 updates: {history[-1]:.4f}"
    errors = surrogate_finite_difference_errors()
    assert max(errors) < 1e-4, f"worst relative gradient error: {max(errors):.2e}"
    assert time.perf_counter() - start < 120.0


# ---------------------------------------------------------------------------
# Environment oracles
# ---------------------------------------------------------------------------


def _quiet(**overrides) -> EnvConfig:
    defaults = dict(
        n_nodes=4, connectivity=0.5, detect_prob=0.0,
        false_positive_prob=0.0, max_timesteps=50,
    )
    defaults.update(overrides)
    return EnvConfig(**defaults)


@pytest.mark.acceptance(criterion="environment oracles")
def test_environment_semantics():
    rng = np.random.default_rng(7)
    nothing_a = AttackerAction(ATTACK.DO_NOTHING)
    nothing_d = DefenderAction(DEFEND.DO_NOTHING)

    # zero-day determinism: succeeds at every vulnerability level
    cfg = _quiet(n_nodes=3)
    for _ in range(2_000):
        state = path_state(3, vuln=float(rng.uniform(0.0, 1.0)))
        target = state.accessible_frontier()[0]
        state, outcome = step(
            state, AttackerAction(ATTACK.ZERO_DAY, target), nothing_d, cfg, rng
        )
        assert outcome.attack_succeeded is True
        assert target in state.compromised_set

    # basic attack: empirical success rate within +/-0.02 of v_p over 1e4 trials
    for vuln in (0.37, 0.72):
        trial_rng = np.random.default_rng(int(vuln * 1000))
        successes = 0
        for _ in range(10_000):
            state = path_state(3, vuln=vuln)
            target = state.accessible_frontier()[0]
            _, outcome = step(
                state, AttackerAction(ATTACK.BASIC_ATTACK, target),
                nothing_d, cfg, trial_rng,
            )
            successes += outcome.attack_succeeded
        assert abs(successes / 10_000 - vuln) < 0.02

    # restore is a true reset: pristine vulnerability, eviction, cleared alert
    pound_cfg = _quiet(detect_prob=0.5, false_positive_prob=0.2)
    for _ in range(100):
        state = path_state(4, vuln=float(rng.uniform(0.3, 0.9)))
        initial = state.graph.nodes[1].initial_vulnerability
        for _ in range(int(rng.integers(1, 6))):
            a = (
                AttackerAction(ATTACK.ZERO_DAY, 1)
                if 1 in state.accessible_frontier()
                else nothing_a
            )
            kinds = (DEFEND.REDUCE_VULNERABILITY, DEFEND.MAKE_NODE_SAFE)
            d = DefenderAction(kinds[int(rng.integers(2))], 1)
            state, _ = step(state, a, d, pound_cfg, rng)
            if state.terminated:
                break
        if state.terminated:
            continue
        state, _ = step(
            state, nothing_a, DefenderAction(DEFEND.RESTORE_NODE, 1), pound_cfg, rng
        )
        node = state.graph.nodes[1]
        assert node.vulnerability == initial
        assert node.true_compromise is False

    # termination rules: strict fraction boundary, elimination, timeout
    big = EnvConfig(n_nodes=50, connectivity=0.5, attacker_win_fraction=0.8)
    state = init_episode(big, 0)
    state.compromised_set = set(range(40))
    assert check_termination(state, big) is None  # 40 == 0.8 * 50: not yet a win
    state.compromised_set = set(range(41))
    assert check_termination(state, big) is Winner.ATTACKER

    state = path_state(5)
    state.compromised_set = set()
    state.graph.nodes[0].true_compromise = False
    assert check_termination(state, _quiet()) is Winner.DEFENDER

    # elimination outranks a same-tick Execute
    state = path_state(5)
    state, outcome = step(
        state, AttackerAction(ATTACK.EXECUTE),
        DefenderAction(DEFEND.RESTORE_NODE, 0), _quiet(n_nodes=5), rng,
    )
    assert outcome.winner is Winner.DEFENDER

    to_cfg = _quiet(n_nodes=5, max_timesteps=4)
    state = path_state(5)
    for _ in range(4):
        assert state.terminated is None
        state, outcome = step(state, nothing_a, nothing_d, to_cfg, rng)
    assert outcome.winner is Winner.DEFENDER

    # cost ledger reconciliation: per-step costs match the table exactly
    ledger_cfg = _quiet(max_timesteps=20)
    state = path_state(4, vuln=1.0)
    ledger_rng = np.random.default_rng(0)
    plan = [
        (AttackerAction(ATTACK.BASIC_ATTACK, 1), DefenderAction(DEFEND.SCAN)),
        (AttackerAction(ATTACK.ZERO_DAY, 2), DefenderAction(DEFEND.REDUCE_VULNERABILITY, 3)),
        (AttackerAction(ATTACK.MOVE, 2), DefenderAction(DEFEND.MAKE_NODE_SAFE, 3)),
        (nothing_a, DefenderAction(DEFEND.RESTORE_NODE, 1)),
    ]
    atk_costs, def_costs = [], []
    for a, d in plan:
        state, outcome = step(state, a, d, ledger_cfg, ledger_rng)
        atk_costs.append(outcome.attacker_cost)
        def_costs.append(outcome.defender_cost)
    assert atk_costs == [2.0, 6.0, 0.5, 0.0]
    assert def_costs == [0.5, 1.5, 4.0, 6.0]
    assert sum(atk_costs) == 8.5 and sum(def_costs) == 12.0


# ---------------------------------------------------------------------------
# Desk-scale experiment: shared fixture for the three directional criteria
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeedOutcome:
    seed: int
    opt_mean_zk: float
    pes_mean_zk: float
    opt_iqm_zk: float
    pes_iqm_zk: float
    opt_mean_nsared: float
    pes_mean_nsared: float
    opt_restore_share: float
    pes_restore_share: float


@dataclass(frozen=True)
class DeskRun:
    outcomes: tuple[SeedOutcome, ...]
    trained_defender: object  # optimistic seed-101 policy params, reused by the sweep
    trained_attacker: object
    env_cfg: EnvConfig
    elapsed_seconds: float


def _restore_share(reports) -> float:
    """Restore-action share (percent) pooled over the given evaluations."""
    totals: Counter = Counter()
    for report in reports:
        for counts in report.defender_action_counts:
            totals.update(counts)
    n = sum(totals.values())
    return 100.0 * totals.get("restore_node", 0) / n if n else 0.0


@pytest.fixture(scope="session")
def desk_run() -> DeskRun:
    """Train optimistic + pessimistic across three master seeds, then evaluate.

    Per seed: both defenders are evaluated against the same zero-knowledge
    attacker (the one the optimistic defender co-trained with, so the
    comparison differs only in the defender) and against the scripted NSARed
    attacker, 100 fresh trials each at a shifted evaluation seed.
    """
    cfg = load_config(DESK_CONFIG)
    mask = cfg.ppo.invalid_action_mode == "mask"  # evaluate trained semantics
    start = time.perf_counter()
    outcomes = []
    first_params = None
    for seed in DESK_SEEDS:
        optimistic = train_dual("optimistic", cfg.env, cfg.ppo, seed=seed)
        pessimistic = train_dual("pessimistic", cfg.env, cfg.ppo, seed=seed)
        if first_params is None:
            first_params = (optimistic.defender, optimistic.attacker)
        zk_attacker = PolicyAgent(
            optimistic.attacker, "attacker", ZERO_KNOWLEDGE, mask_invalid=mask
        )
        d_opt = PolicyAgent(optimistic.defender, "defender", DEFENDER)
        d_pes = PolicyAgent(pessimistic.defender, "defender", DEFENDER)
        nsared = NSARedAttacker(cfg.env.attacker_win_fraction)
        eval_seed = seed + EVAL_SEED_OFFSET

        r_opt_zk = run_evaluation(d_opt, zk_attacker, cfg.trials, cfg.env, eval_seed)
        r_pes_zk = run_evaluation(d_pes, zk_attacker, cfg.trials, cfg.env, eval_seed)
        r_opt_ns = run_evaluation(d_opt, nsared, cfg.trials, cfg.env, eval_seed)
        r_pes_ns = run_evaluation(d_pes, nsared, cfg.trials, cfg.env, eval_seed)

        outcomes.append(SeedOutcome(
            seed=seed,
            opt_mean_zk=float(r_opt_zk.defender_scores.mean()),
            pes_mean_zk=float(r_pes_zk.defender_scores.mean()),
            opt_iqm_zk=float(interquartile_mean(r_opt_zk.defender_scores)),
            pes_iqm_zk=float(interquartile_mean(r_pes_zk.defender_scores)),
            opt_mean_nsared=float(r_opt_ns.defender_scores.mean()),
            pes_mean_nsared=float(r_pes_ns.defender_scores.mean()),
            opt_restore_share=_restore_share([r_opt_zk, r_opt_ns]),
            pes_restore_share=_restore_share([r_pes_zk, r_pes_ns]),
        ))
    return DeskRun(
        outcomes=tuple(outcomes),
        trained_defender=first_params[0],
        trained_attacker=first_params[1],
        env_cfg=cfg.env,
        elapsed_seconds=time.perf_counter() - start,
    )


@pytest.mark.acceptance(
    criterion="optimistic defender outperforms pessimistic vs zero-knowledge attacker"
)
def test_optimistic_beats_pessimistic_vs_zero_knowledge(desk_run):
    hits = [
        o for o in desk_run.outcomes
        if o.opt_mean_zk > o.pes_mean_zk and o.opt_iqm_zk > o.pes_iqm_zk
    ]
    detail = "; ".join(
        f"seed {o.seed}: mean {o.opt_mean_zk:.1f} vs {o.pes_mean_zk:.1f}, "
        f"IQM {o.opt_iqm_zk:.1f} vs {o.pes_iqm_zk:.1f}"
        for o in desk_run.outcomes
    )
    assert desk_run.elapsed_seconds < 1800.0, (
        f"desk experiment took {desk_run.elapsed_seconds:.0f}s (budget 1800s)"
    )
    assert len(hits) >= 2, f"optimistic > pessimistic in {len(hits)}/3 seeds ({detail})"


@pytest.mark.acceptance(criterion="both defenders positive vs NSARed")
def test_both_defenders_positive_against_nsared(desk_run):
    hits = [
        o for o in desk_run.outcomes
        if o.opt_mean_nsared > 0.0 and o.pes_mean_nsared > 0.0
    ]
    detail = "; ".join(
        f"seed {o.seed}: optimistic {o.opt_mean_nsared:.1f}, "
        f"pessimistic {o.pes_mean_nsared:.1f}"
        for o in desk_run.outcomes
    )
    assert len(hits) >= 2, f"both positive vs NSARed in {len(hits)}/3 seeds ({detail})"


@pytest.mark.acceptance(criterion="pessimistic restore share exceeds optimistic")
def test_pessimistic_defender_restores_more(desk_run):
    hits = [
        o for o in desk_run.outcomes if o.pes_restore_share > o.opt_restore_share
    ]
    detail = "; ".join(
        f"seed {o.seed}: pessimistic {o.pes_restore_share:.1f}% "
        f"vs optimistic {o.opt_restore_share:.1f}%"
        for o in desk_run.outcomes
    )
    assert len(hits) >= 2, f"restore share higher in {len(hits)}/3 seeds ({detail})"


# ---------------------------------------------------------------------------
# Cost-sensitivity sweep
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(criterion="cost sweep replay, monotonicity, linear fit")
def test_sweep_replay_monotonicity_and_fit(desk_run):
    report = cost_sensitivity_sweep(
        grid_resolution=5,
        base_cfg=desk_run.env_cfg,
        trained_params=(desk_run.trained_defender, desk_run.trained_attacker),
        seed=424242,
        trials_per_cell=8,
        invalid_action_mode="mask",
    )

    # ratio-1 cells (the diagonal) replay the baseline action stream exactly
    for i in range(len(report.connectivity_values)):
        assert report.ratios[i, i] == 1.0
        assert report.action_stream_digest[i][i] == report.baseline_stream_digest
        assert report.mean_defender_reward[i, i] == report.baseline_defender_reward

    # monotone non-increasing as the cost ratio rises along either axis:
    # rows ascend in connectivity (ratio up), columns ascend in security
    # (ratio down), so rewards fall along rows and rise along columns.
    rows = np.diff(report.mean_defender_reward, axis=0)
    cols = np.diff(report.mean_defender_reward, axis=1)
    assert (rows <= 1e-9).all(), "reward increased while the cost ratio rose"
    assert (cols >= -1e-9).all(), "reward fell while the cost ratio fell"

    # frozen policies never see costs, so reward is affine in the ratio and
    # the reported linear fit must be near-perfect with non-positive slope
    assert report.fit_slope <= 0.0
    assert report.fit_r2 > 0.999, f"linear fit R^2 = {report.fit_r2:.6f}"


# ---------------------------------------------------------------------------
# The core library must not depend on the plotting layer
# ---------------------------------------------------------------------------


@pytest.mark.acceptance(criterion="core suite independent of plot layer")
def test_core_imports_pull_no_plotting_dependency():
    """Importing every netsiege module must not import any plotting stack."""
    code = (
        "import sys\n"
        "import netsiege, netsiege.agents, netsiege.beliefs, netsiege.criteria, "
        "netsiege.episode, netsiege.evals, netsiege.runconfig, netsiege.cli, "
        "netsiege.ppo, netsiege.env\n"
        "bad = [m for m in sys.modules if 'matplotlib' in m or 'plotsuite' in m]\n"
        "sys.exit(1 if bad else 0)\n"
    )
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
