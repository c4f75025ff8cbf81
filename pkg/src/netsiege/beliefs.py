"""Belief formation under noisy alerts.

Defender side: invert the aggregate alert rate through the known noise
channel to estimate the fraction of compromised nodes. Attacker side:
maintain a Beta-moment estimate of the defender's presence and decay the
weight placed on the prior-free policy as observations accumulate.

Alert channel, per node per tick: an attacker-touched node alerts with
p + q - pq, any other node with q, so a network with compromised fraction
mu alerts at rate (1 - mu) q + mu (p + q - pq) = q + mu p (1 - q).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

HARMONIC = "harmonic"
FACTORIAL = "factorial"


class InfeasibleMomentsError(ValueError):
    """No Beta distribution has the requested mean/variance pair."""


def alert_probability(mu: float, p: float, q: float) -> float:
    """Per-node alert probability when a fraction mu of nodes is compromised."""
    return (1.0 - mu) * q + mu * (p + q - p * q)


def false_positive_probability(mu: float, p: float, q: float) -> float:
    """Probability a given node raises a spurious alert this tick."""
    return (1.0 - mu) * q + mu * (1.0 - p) * q


def expected_alerts(n: int, t: int, mu: float, p: float, q: float) -> float:
    """Expected total alert count over n nodes and t ticks."""
    return n * t * alert_probability(mu, p, q)


@dataclass(frozen=True)
class BetaParams:
    alpha: float
    beta: float

    @property
    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    @property
    def variance(self) -> float:
        s = self.alpha + self.beta
        return self.alpha * self.beta / (s * s * (s + 1.0))


def beta_from_moments(mean: float, variance: float) -> BetaParams:
    """Moment-match a Beta distribution to a given mean and variance.

    alpha = ((1 - m) / v - 1 / m) * m^2, beta = alpha (1/m - 1). Feasible
    only for 0 < m < 1 and 0 < v < m (1 - m); anything else raises
    InfeasibleMomentsError.
    """
    if not (0.0 < mean < 1.0):
        raise InfeasibleMomentsError(f"mean must be in (0, 1), got {mean}")
    if not (0.0 < variance < mean * (1.0 - mean)):
        raise InfeasibleMomentsError(
            f"variance {variance} infeasible for mean {mean} "
            f"(needs 0 < v < {mean * (1.0 - mean)})"
        )
    alpha = ((1.0 - mean) / variance - 1.0 / mean) * mean * mean
    beta = alpha * (1.0 / mean - 1.0)
    return BetaParams(alpha=alpha, beta=beta)


def pert_shape_params(minimum: float, mode: float, maximum: float, lam: float = 4.0) -> tuple[float, float]:
    span = maximum - minimum
    a = 1.0 + lam * (mode - minimum) / span
    b = 1.0 + lam * (maximum - mode) / span
    return a, b


def sample_pert(
    minimum: float,
    mode: float,
    maximum: float,
    rng: np.random.Generator,
    lam: float = 4.0,
    size=None,
):
    """Draw from a PERT distribution (Beta reshaped onto [minimum, maximum]).

    Mean is (minimum + lam * mode + maximum) / (lam + 2). A degenerate range
    returns the point mass at minimum.
    """
    if not (minimum <= mode <= maximum):
        raise ValueError(f"need min <= mode <= max, got ({minimum}, {mode}, {maximum})")
    if maximum == minimum:
        return minimum if size is None else np.full(size, float(minimum))
    a, b = pert_shape_params(minimum, mode, maximum, lam)
    draw = rng.beta(a, b, size=size)
    return minimum + (maximum - minimum) * draw


# -- defender side ----------------------------------------------------------


@dataclass(frozen=True)
class DefenderBelief:
    """Running estimate of the compromised fraction from aggregate alerts.

    Tracks per-tick alert rates with a Welford accumulator (Bessel-corrected;
    at t=1 the variance is seeded with the binomial variance r(1-r)/n since a
    single sample has none of its own). mu is the current estimate; crossing
    `threshold` is the presence trigger.
    """

    detect_prob: float
    false_positive_prob: float
    mu: float = 0.0
    threshold: float = 0.5
    t: int = 0
    alert_total: int = 0
    rate_mean: float = 0.0
    rate_m2: float = 0.0
    last_diagnostic: str | None = None


def defender_presence_update(
    belief: DefenderBelief, alerts_this_step: int, n: int, t: int
) -> DefenderBelief:
    """Fold one tick's alert count into the defender's compromise estimate.

    t is the timestep this count belongs to; updates must arrive in order
    (t = belief.t + 1). The observed mean alert rate is moment-matched to a
    Beta posterior (the fit preserves the mean; infeasible moments fall back
    to the raw mean with a diagnostic), then inverted through the noise
    channel: mu = (rate - q) / (p - pq), clamped to [0, 1]. With p = 0 or
    q = 1 the channel carries no signal and mu is left unchanged.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if t != belief.t + 1:
        raise ValueError(f"updates must be sequential: belief at t={belief.t}, got t={t}")
    p = belief.detect_prob
    q = belief.false_positive_prob
    x = alerts_this_step / n
    delta = x - belief.rate_mean
    mean = belief.rate_mean + delta / t
    m2 = belief.rate_m2 + delta * (x - mean)
    total = belief.alert_total + alerts_this_step

    if t == 1:
        variance = mean * (1.0 - mean) / n
    else:
        variance = m2 / (t - 1)

    denom = p * (1.0 - q)
    if denom == 0.0:
        return replace(
            belief,
            t=t,
            alert_total=total,
            rate_mean=mean,
            rate_m2=m2,
            last_diagnostic="noise channel uninformative (p=0 or q=1); mu unchanged",
        )

    diagnostic = None
    try:
        fit = beta_from_moments(mean, variance)
        rate_hat = fit.mean
    except InfeasibleMomentsError as err:
        rate_hat = mean
        diagnostic = f"moment fit infeasible, using raw mean: {err}"

    mu = min(1.0, max(0.0, (rate_hat - q) / denom))
    return replace(
        belief,
        mu=mu,
        t=t,
        alert_total=total,
        rate_mean=mean,
        rate_m2=m2,
        last_diagnostic=diagnostic,
    )


def threshold_exceeded(belief: DefenderBelief) -> bool:
    """Inclusive: mu exactly at threshold counts as exceeded."""
    return belief.mu >= belief.threshold


# -- attacker side -----------------------------------------------------------


@dataclass(frozen=True)
class AttackerBelief:
    """Attacker's joint estimate of defender presence and reactivity.

    mu_hat estimates the probability a defender is present; phi_hat is the
    assumed probability that a present defender acts visibly in a tick. gamma
    weights the prior-free policy in the Bayes-Hurwicz mix and decays as
    defender actions are observed (k observations so far). n and t size the
    pseudo-sample for the Beta moment fit.
    """

    mu_hat: float
    phi_hat: float
    n: int
    gamma: float = 1.0
    k: int = 0
    t: int = 0
    gamma_decay: str = HARMONIC
    pseudo_obs_weight: float = 1.0
    last_diagnostic: str | None = None


def attacker_belief_update(belief: AttackerBelief, observed_defender_action: bool) -> AttackerBelief:
    """Advance the attacker's belief by one tick.

    Without an observation only t advances. With one: treat the current
    (mu_hat, phi_hat) as an expected action rate mu*phi with pseudo-sample
    size n*t, moment-match a Beta, add the observation as pseudo-evidence on
    alpha, map the posterior mean back through phi_hat, and shrink gamma
    (harmonic: 1/(k+1); factorial: gamma/(k+1)).
    """
    t = belief.t + 1
    if not observed_defender_action:
        return replace(belief, t=t)

    k = belief.k + 1
    if belief.gamma_decay == HARMONIC:
        gamma = 1.0 / (k + 1.0)
    elif belief.gamma_decay == FACTORIAL:
        gamma = belief.gamma / (k + 1.0)
    else:
        raise ValueError(f"unknown gamma decay mode: {belief.gamma_decay!r}")

    nt = belief.n * t
    w = belief.pseudo_obs_weight
    rate = min(1.0, max(0.0, belief.mu_hat * belief.phi_hat))
    variance = rate * (1.0 - rate) / nt if nt > 0 else 0.0

    diagnostic = None
    try:
        if belief.phi_hat <= 0.0:
            raise InfeasibleMomentsError("phi_hat is zero; rate carries no signal")
        fit = beta_from_moments(rate, variance)
        alpha = fit.alpha + w
        posterior_rate = alpha / (alpha + fit.beta)
        mu = min(1.0, max(0.0, posterior_rate / belief.phi_hat))
    except InfeasibleMomentsError as err:
        # counting fallback: blend the pseudo-count prior with the observation
        mu = min(1.0, max(0.0, (belief.mu_hat * nt + w) / (nt + w)))
        diagnostic = f"moment fit unavailable, counting fallback: {err}"

    return replace(
        belief, mu_hat=mu, gamma=gamma, k=k, t=t, last_diagnostic=diagnostic
    )
