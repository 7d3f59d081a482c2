"""Closed-form constants, regret bounds, and the multi-scale partition."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

import numpy as np

__all__ = [
    "c_lo",
    "q_alpha",
    "scale_count",
    "scale_partition",
    "ScalePartition",
    "oblivious_regret_bound",
    "high_prob_regret_bound",
    "asymmetric_regret_bound",
]


def c_lo() -> float:
    """The Littlewood-Offord constant 2 * sqrt(2) * e / pi (< 3)."""
    return 2.0 * math.sqrt(2.0) * math.e / math.pi


def q_alpha(alpha: float) -> float:
    """Binomial pmf-maximum constant (e / 2pi) * sqrt(2 / (alpha (1-alpha)))."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly in (0, 1)")
    return (math.e / (2.0 * math.pi)) * math.sqrt(2.0 / (alpha * (1.0 - alpha)))


def scale_count(horizon: int) -> int:
    """Smallest K >= 0 with horizon**(-1 / 2**K) >= 1/2.

    Satisfies K <= log2(log2 T) + 1. T < 4 is rejected: there K = 0 and the
    innermost and outermost scale classes would overlap.
    """
    t = int(horizon)
    if t < 4:
        raise ValueError("scale partition requires horizon >= 4")
    k = 0
    while t ** (-1.0 / 2 ** k) < 0.5:
        k += 1
    return k


@dataclass(frozen=True)
class ScalePartition:
    """Round indices split by payoff-difference magnitude.

    classes[k] holds the 1-based rounds t whose |diff_t| falls in scale k:
    class 0 up to T**-(1/2), class k in (T**(-1/2**k), T**(-1/2**(k+1))],
    class K up to 2. thresholds[k] = T**(-1 / 2**k) for k = 0..K.
    """

    num_scales: int
    classes: tuple
    thresholds: tuple


def scale_partition(diffs, horizon: int) -> ScalePartition:
    """Assign each round's |diff| to its scale class."""
    t = int(horizon)
    k_max = scale_count(t)
    d = np.abs(np.asarray(diffs, dtype=np.float64))
    if d.ndim != 1 or d.size != t:
        raise ValueError(f"need exactly {t} diffs")
    if np.any(d > 2.0):
        raise ValueError("payoff differences must lie in [-2, 2]")
    # scale_count guarantees k_max >= 1 for t >= 4, so thresholds[1] exists.
    thresholds = tuple(t ** (-1.0 / 2 ** k) for k in range(k_max + 1))
    classes: List[List[int]] = [[] for _ in range(k_max + 1)]
    for idx, val in enumerate(d, start=1):
        if val <= thresholds[1]:
            classes[0].append(idx)
            continue
        k = k_max
        for j in range(1, k_max):
            if thresholds[j] < val <= thresholds[j + 1]:
                k = j
                break
        classes[k].append(idx)
    return ScalePartition(k_max + 1, tuple(tuple(c) for c in classes), thresholds)


def oblivious_regret_bound(n: int, horizon: int) -> float:
    """Expected-regret ceiling 40 * C_LO * N^2 * sqrt(T * log2(4 log2 T))."""
    if n < 2:
        raise ValueError("bound requires n >= 2")
    if horizon < 4:
        raise ValueError("bound requires horizon >= 4")
    t = float(horizon)
    return 40.0 * c_lo() * n ** 2 * math.sqrt(t * math.log2(4.0 * math.log2(t)))


def high_prob_regret_bound(n: int, horizon: int, delta: float) -> float:
    """Adaptive-opponent regret ceiling holding with probability 1 - delta."""
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must lie in (0, 1]")
    return oblivious_regret_bound(n, horizon) + math.sqrt(
        (horizon / 2.0) * math.log(1.0 / delta))


def asymmetric_regret_bound(n: int, horizon: int, alpha: float) -> float:
    """Expected-regret ceiling 40 N^2 Q_alpha / alpha * sqrt(T).

    Valid for {-1, 0, 1}-valued payoffs and T > max(2/(1-alpha), 2/alpha).
    """
    q = q_alpha(alpha)
    if horizon <= max(2.0 / (1.0 - alpha), 2.0 / alpha):
        raise ValueError("horizon must exceed max(2/(1-alpha), 2/alpha)")
    if n < 1:
        raise ValueError("n must be positive")
    return 40.0 * n ** 2 * q / alpha * math.sqrt(horizon)
