"""Bayes/Hurwicz mixing and action selection."""

from __future__ import annotations

import numpy as np
import pytest

from netsiege.criteria import ActionDistribution, restricted_bayes_hurwicz, select_action


def dist(*probs) -> ActionDistribution:
    return ActionDistribution(np.array(probs, dtype=np.float64))


def random_dist(rng, k) -> ActionDistribution:
    raw = rng.uniform(0, 1, size=k) + 1e-9
    return ActionDistribution(raw / raw.sum())


# ---------------------------------------------------------------------------
# ActionDistribution validation
# ---------------------------------------------------------------------------


def test_distribution_validation():
    with pytest.raises(ValueError):
        ActionDistribution(np.array([0.5, 0.6]))  # sums to 1.1
    with pytest.raises(ValueError):
        ActionDistribution(np.array([1.5, -0.5]))  # negative entry
    with pytest.raises(ValueError):
        ActionDistribution(np.array([]))  # empty
    with pytest.raises(ValueError):
        ActionDistribution(np.ones((2, 2)) / 4)  # not 1-D
    ok = dist(0.25, 0.75)
    assert len(ok) == 2


# ---------------------------------------------------------------------------
# restricted_bayes_hurwicz
# ---------------------------------------------------------------------------


def test_corner_gamma_one_returns_prior():
    p_hat = dist(0.2, 0.3, 0.5)
    p_best = dist(1.0, 0.0, 0.0)
    p_worst = dist(0.0, 0.0, 1.0)
    out = restricted_bayes_hurwicz(p_hat, p_best, p_worst, gamma=1.0, mu_hat=0.7)
    assert np.array_equal(out.probs, p_hat.probs)


def test_corner_pure_optimism():
    p_hat = dist(0.2, 0.8)
    p_best = dist(0.9, 0.1)
    p_worst = dist(0.1, 0.9)
    out = restricted_bayes_hurwicz(p_hat, p_best, p_worst, gamma=0.0, mu_hat=0.0)
    assert np.array_equal(out.probs, p_best.probs)


def test_corner_pure_pessimism():
    p_hat = dist(0.2, 0.8)
    p_best = dist(0.9, 0.1)
    p_worst = dist(0.1, 0.9)
    out = restricted_bayes_hurwicz(p_hat, p_best, p_worst, gamma=0.0, mu_hat=1.0)
    assert np.array_equal(out.probs, p_worst.probs)


def test_worked_mix_example():
    """gamma=0.5, mu=0.25: 0.5 [1,0] + 0.5 (0.75 [0,1] + 0.25 [1,0]) = [0.625, 0.375]."""
    out = restricted_bayes_hurwicz(
        dist(1.0, 0.0), dist(0.0, 1.0), dist(1.0, 0.0), gamma=0.5, mu_hat=0.25
    )
    assert out.probs == pytest.approx([0.625, 0.375], abs=1e-12)


def test_output_always_valid_distribution():
    rng = np.random.default_rng(0)
    for _ in range(2000):
        k = int(rng.integers(2, 8))
        out = restricted_bayes_hurwicz(
            random_dist(rng, k),
            random_dist(rng, k),
            random_dist(rng, k),
            gamma=float(rng.uniform(0, 1)),
            mu_hat=float(rng.uniform(0, 1)),
        )
        assert np.all(out.probs >= -1e-12)
        assert abs(out.probs.sum() - 1.0) < 1e-9


def test_affine_in_each_distribution_argument():
    """Superposition: mixing inputs commutes with the operator."""
    rng = np.random.default_rng(1)
    for _ in range(300):
        k = int(rng.integers(2, 6))
        gamma = float(rng.uniform(0, 1))
        mu = float(rng.uniform(0, 1))
        lam = float(rng.uniform(0, 1))
        a1, a2 = random_dist(rng, k), random_dist(rng, k)
        b, w = random_dist(rng, k), random_dist(rng, k)

        blended_prior = ActionDistribution(lam * a1.probs + (1 - lam) * a2.probs)
        lhs = restricted_bayes_hurwicz(blended_prior, b, w, gamma, mu).probs
        rhs = (
            lam * restricted_bayes_hurwicz(a1, b, w, gamma, mu).probs
            + (1 - lam) * restricted_bayes_hurwicz(a2, b, w, gamma, mu).probs
        )
        assert np.allclose(lhs, rhs, atol=1e-12)

        blended_best = ActionDistribution(lam * a1.probs + (1 - lam) * a2.probs)
        lhs = restricted_bayes_hurwicz(b, blended_best, w, gamma, mu).probs
        rhs = (
            lam * restricted_bayes_hurwicz(b, a1, w, gamma, mu).probs
            + (1 - lam) * restricted_bayes_hurwicz(b, a2, w, gamma, mu).probs
        )
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_convexity_fixed_point():
    rng = np.random.default_rng(2)
    common = random_dist(rng, 5)
    for gamma in (0.0, 0.3, 1.0):
        for mu in (0.0, 0.5, 1.0):
            out = restricted_bayes_hurwicz(common, common, common, gamma, mu)
            assert np.allclose(out.probs, common.probs, atol=1e-12)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        restricted_bayes_hurwicz(dist(1.0), dist(0.5, 0.5), dist(0.5, 0.5), 0.5, 0.5)


def test_gamma_mu_range_checked():
    d = dist(0.5, 0.5)
    with pytest.raises(ValueError):
        restricted_bayes_hurwicz(d, d, d, gamma=1.5, mu_hat=0.5)
    with pytest.raises(ValueError):
        restricted_bayes_hurwicz(d, d, d, gamma=0.5, mu_hat=-0.1)


# ---------------------------------------------------------------------------
# select_action
# ---------------------------------------------------------------------------


def test_argmax_basic():
    assert select_action(dist(0.0, 1.0, 0.0), mode="argmax") == 1
    assert select_action(dist(0.3, 0.3, 0.4), mode="argmax") == 2


def test_argmax_lowest_index_tie_break():
    assert select_action(dist(0.4, 0.4, 0.2), mode="argmax") == 0
    assert select_action(dist(0.25, 0.25, 0.25, 0.25), mode="argmax") == 0


def test_argmax_invariant_under_full_confidence():
    rng = np.random.default_rng(3)
    for _ in range(200):
        k = int(rng.integers(2, 7))
        p_hat = random_dist(rng, k)
        out = restricted_bayes_hurwicz(
            p_hat, random_dist(rng, k), random_dist(rng, k), gamma=1.0,
            mu_hat=float(rng.uniform(0, 1)),
        )
        assert select_action(out, mode="argmax") == int(np.argmax(p_hat.probs))


def test_sample_binomial_concentration():
    """[0.5, 0.5] over 10^4 draws: each side 5000 +/- 150."""
    rng = np.random.default_rng(4)
    d = dist(0.5, 0.5)
    counts = [0, 0]
    for _ in range(10_000):
        counts[select_action(d, mode="sample", rng=rng)] += 1
    assert abs(counts[0] - 5000) <= 150
    assert abs(counts[1] - 5000) <= 150


def test_sample_respects_zero_probability():
    rng = np.random.default_rng(5)
    d = dist(0.0, 1.0, 0.0)
    for _ in range(100):
        assert select_action(d, mode="sample", rng=rng) == 1


def test_sample_requires_rng():
    with pytest.raises(ValueError):
        select_action(dist(0.5, 0.5), mode="sample")


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        select_action(dist(0.5, 0.5), mode="greedy")
