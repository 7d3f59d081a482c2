"""Exact anti-concentration oracles and the regret-to-switching inequality.

Every oracle here enumerates all sign assignments of a short random walk,
so results are exact up to float rounding (and exactly dyadic when
alpha = 1/2). They exist to be compared against the closed-form bounds:
exact_small_ball against erdos_bound/corollary_bound, the exact binomial
pmf maximum against binomial_pmf_max_bound, and exact_expected_regret
against regret2switches_rhs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from .bounds import c_lo, q_alpha
from .game import as_payoff_matrix
from .learners import sfp_action_distribution, _subset_chunks

__all__ = [
    "SignedSumInstance",
    "exact_small_ball",
    "erdos_bound",
    "corollary_bound",
    "binomial_pmf_max_bound",
    "exact_binomial_pmf_max",
    "exact_switch_probability",
    "regret2switches_rhs",
    "exact_expected_regret",
    "SMALL_BALL_GUARD",
    "SWITCH_GUARD",
]

SMALL_BALL_GUARD = 24
SWITCH_GUARD = 20


@dataclass(frozen=True)
class SignedSumInstance:
    """A signed sum sum_i eps_i * x_i and a closed target interval.

    erdos mode additionally requires min |x_i| >= 1.
    """

    weights: np.ndarray
    ball_center: float = 0.0
    ball_radius: float = 0.0
    erdos_mode: bool = False

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("weights must be a nonempty vector")
        if self.ball_radius < 0:
            raise ValueError("ball radius must be nonnegative")
        if self.erdos_mode and np.min(np.abs(w)) < 1.0:
            raise ValueError("erdos-mode instances need |x_i| >= 1 for all i")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.size


def exact_small_ball(instance: SignedSumInstance) -> float:
    """P(sum eps_i x_i in [center - radius, center + radius]), eps uniform.

    Enumerates all 2**n sign vectors; the interval is closed on both ends.
    """
    n = instance.n
    if n > SMALL_BALL_GUARD:
        raise ValueError(f"n = {n} exceeds enumeration guard {SMALL_BALL_GUARD}")
    lo = instance.ball_center - instance.ball_radius
    hi = instance.ball_center + instance.ball_radius
    hits = 0
    for bits, _ in _subset_chunks(n):
        sums = (2.0 * bits - 1.0) @ instance.weights
        hits += int(np.count_nonzero((sums >= lo) & (sums <= hi)))
    return hits / float(1 << n)


def erdos_bound(n: int, delta: float) -> float:
    """Littlewood-Offord ceiling S(n)/2**n * (floor(delta) + 1).

    S(n) is the largest binomial coefficient of n. Valid whenever every
    |x_i| >= 1 and the target is a closed interval of radius delta.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    return comb(n, n // 2) / float(2 ** n) * (int(delta) + 1)


def corollary_bound(n: int, delta: float) -> float:
    """Relaxed ceiling C_LO * (floor(delta) + 1) / sqrt(n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    return c_lo() * (int(delta) + 1) / sqrt(n)


def _check_pmf_precondition(t: int, alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly in (0, 1)")
    if t <= max(2.0 / (1.0 - alpha), 2.0 / alpha):
        raise ValueError("need t > max(2/(1-alpha), 2/alpha)")


def binomial_pmf_max_bound(t: int, alpha: float) -> float:
    """Ceiling Q_alpha / sqrt(t) on max_k P(Binomial(t, alpha) = k)."""
    _check_pmf_precondition(t, alpha)
    return q_alpha(alpha) / sqrt(t)


def exact_binomial_pmf_max(t: int, alpha: float) -> float:
    """max_k P(Binomial(t, alpha) = k), attained at k = floor((t+1) alpha)."""
    from scipy.stats import binom

    if t < 1:
        raise ValueError("t must be >= 1")
    khat = min(int((t + 1) * alpha), t)
    # guard against float slop in (t+1)*alpha by scanning the neighborhood
    ks = [k for k in (khat - 1, khat, khat + 1) if 0 <= k <= t]
    return float(max(binom.pmf(k, t, alpha) for k in ks))


def exact_switch_probability(diffs, t: int, alpha: float) -> float:
    """Probability the perturbed difference walk crosses downward at round t.

    Enumerates eps_1..eps_t (each +1 with probability alpha) and sums the
    weight of assignments with sum_{tau<t} (1+eps_tau) d_tau >= 0 and
    sum_{tau<=t} (1+eps_tau) d_tau <= 0, both inequalities non-strict.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly in (0, 1)")
    d = np.asarray(diffs, dtype=np.float64)
    if t < 1 or d.ndim != 1 or d.size < t:
        raise ValueError("need diffs of length >= t >= 1")
    if t > SWITCH_GUARD:
        raise ValueError(f"t = {t} exceeds enumeration guard {SWITCH_GUARD}")
    d = d[:t]
    prob = 0.0
    for bits, pc in _subset_chunks(t):
        weights = alpha ** pc * (1.0 - alpha) ** (t - pc)
        walk = 2.0 * bits @ d  # (1 + eps) = 2 * indicator(eps = +1)
        prev = walk - 2.0 * bits[:, t - 1] * d[t - 1]
        prob += float(weights[(prev >= 0.0) & (walk <= 0.0)].sum())
    return prob


def regret2switches_rhs(payoffs, alpha: float) -> float:
    """Right-hand side of the regret-to-switching inequality.

    (N**2 / alpha) * max over ordered pairs i != j of
    sum_t |d_t| * P(switch at t), with d the pairwise payoff difference.
    Equals 2 N^2 max ... at alpha = 1/2. N = 1 has no pair and returns 0.
    """
    m = as_payoff_matrix(payoffs)
    t, n = m.shape
    if t > SWITCH_GUARD:
        raise ValueError(f"T = {t} exceeds enumeration guard {SWITCH_GUARD}")
    if n > 4:
        raise ValueError("enumeration guard: N <= 4")
    best = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = m[:, i] - m[:, j]
            total = sum(
                abs(d[s - 1]) * exact_switch_probability(d, s, alpha)
                for s in range(1, t + 1) if d[s - 1] != 0.0)
            best = max(best, total)
    return n ** 2 / alpha * best


def exact_expected_regret(payoffs, alpha: float) -> float:
    """Exact expected regret of sampled fictitious play on a fixed sequence.

    max_k sum_t g[t, k] minus the expected realized payoff, the latter from
    the exact per-round action distribution oracle.
    """
    m = as_payoff_matrix(payoffs)
    t = m.shape[0]
    if t > SWITCH_GUARD:
        raise ValueError(f"T = {t} exceeds enumeration guard {SWITCH_GUARD}")
    if t == 0:
        return 0.0
    expected_realized = sum(
        float(sfp_action_distribution(m[:s], alpha) @ m[s])
        for s in range(t))
    return float(m.sum(axis=0).max()) - expected_realized
