"""Fictitious play and its Bernoulli-sampled variants.

Two randomization schemes are provided. The fresh variant draws a new
random subset of past rounds at every step. The single-stream variant fixes
one sign sequence eps_1, eps_2, ... and scores strategy k at round t by
sum_{tau < t} (1 + eps_tau) * g[tau, k], which equals twice the subset sum
over {tau : eps_tau = +1}. Against a fixed payoff sequence the two induce
identical action distributions; sfp_action_distribution is the exact
enumeration oracle for that distribution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Set

import numpy as np

from .game import as_payoff_matrix

__all__ = [
    "KINDS",
    "LearnerConfig",
    "RademacherStream",
    "argmax_set",
    "tie_break",
    "fp_scores",
    "sfp_sample_subset",
    "sfp_step_fresh",
    "sfp_step_single_stream",
    "sfp_action_distribution",
    "single_stream_action_distribution",
    "ENUMERATION_GUARD",
]

KINDS = ("fp", "sfp-fresh", "sfp-single", "uniform")

# Largest history length the exact oracles will enumerate (2**24 subsets).
ENUMERATION_GUARD = 24


@dataclass(frozen=True)
class LearnerConfig:
    kind: str
    alpha: float = 0.5
    num_strategies: int = 2

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown learner kind {self.kind!r}; expected one of {KINDS}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie strictly in (0, 1), got {self.alpha}")
        if self.num_strategies < 1:
            raise ValueError("num_strategies must be positive")


@dataclass
class RademacherStream:
    """A lazily realized sign stream with P(eps = +1) = alpha.

    Entry tau (1-based), once drawn, never changes; every round of a
    single-stream learner reuses the same prefix.
    """

    seed: int
    alpha: float = 0.5
    realized: List[int] = field(default_factory=list)

    def __post_init__(self):
        self._rng = np.random.default_rng(self.seed)

    def prefix(self, length: int) -> np.ndarray:
        """Signs eps_1..eps_length, drawing new entries as needed."""
        while len(self.realized) < length:
            self.realized.append(1 if self._rng.random() < self.alpha else -1)
        return np.asarray(self.realized[:length], dtype=np.float64)


def argmax_set(scores) -> Set[int]:
    """All 1-based strategies attaining the maximum score, exact equality."""
    scores = np.asarray(scores, dtype=np.float64)
    if scores.ndim != 1 or scores.size < 1:
        raise ValueError("scores must be a nonempty vector")
    return set((np.flatnonzero(scores == scores.max()) + 1).tolist())


def tie_break(candidates, rng: np.random.Generator) -> int:
    """Pick one candidate uniformly at random.

    Consumes no randomness when the set is a singleton, so traces only touch
    the tie-break stream at genuinely tied rounds.
    """
    candidates = sorted(candidates)
    if not candidates:
        raise ValueError("cannot tie-break an empty candidate set")
    if len(candidates) == 1:
        return candidates[0]
    return candidates[int(rng.integers(len(candidates)))]


def fp_scores(history) -> np.ndarray:
    """Fictitious-play scores: cumulative payoff of each strategy."""
    m = as_payoff_matrix(history)
    return m.sum(axis=0)


def sfp_sample_subset(rng: np.random.Generator, t: int, alpha: float) -> Set[int]:
    """Bernoulli(alpha) sample of past rounds {1..t-1}; empty for t = 1."""
    if t < 1:
        raise ValueError("round index must be >= 1")
    mask = rng.random(t - 1) < alpha
    return set((np.flatnonzero(mask) + 1).tolist())


def sfp_step_fresh(history, rng: np.random.Generator, alpha: float,
                   tie_rng: np.random.Generator = None) -> int:
    """One fresh-randomization step over a (t-1, N) history.

    An empty sample leaves all scores at zero, so the argmax is the full
    strategy set and the move is uniform.
    """
    m = _shaped_history(history)
    mask = (rng.random(m.shape[0]) < alpha).astype(np.float64)
    scores = mask @ m
    return tie_break(argmax_set(scores), tie_rng if tie_rng is not None else rng)


def sfp_step_single_stream(history, stream: RademacherStream,
                           rng: np.random.Generator) -> int:
    """One single-stream step: argmax of sum (1 + eps_tau) * g_tau."""
    m = _shaped_history(history)
    eps = stream.prefix(m.shape[0])
    scores = (1.0 + eps) @ m
    return tie_break(argmax_set(scores), rng)


def _shaped_history(history) -> np.ndarray:
    """History as (t-1, N); an empty history must already be shaped (0, N)."""
    m = as_payoff_matrix(history)
    if m.shape[1] == 0:
        raise ValueError("empty history must be passed as an array shaped (0, N)")
    return m


def _subset_chunks(m: int, chunk: int = 1 << 16):
    """Yield (bits, popcount) for all 2**m inclusion vectors, chunked."""
    total = 1 << m
    shifts = np.arange(m, dtype=np.uint64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        bits = ((idx[:, None] >> shifts) & np.uint64(1)).astype(np.float64)
        yield bits, bits.sum(axis=1)


def sfp_action_distribution(history, alpha: float) -> np.ndarray:
    """Exact action distribution of one sampled-fictitious-play step.

    Sums over all 2**(t-1) subsets of the history, weighting each by
    alpha**|S| * (1-alpha)**(t-1-|S|) and splitting its mass uniformly over
    the tied argmax set (the whole strategy set when S is empty). History
    length is capped at ENUMERATION_GUARD; use Monte Carlo beyond that.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly in (0, 1)")
    hist = _shaped_history(history)
    m, n = hist.shape
    if m == 0:
        return np.full(n, 1.0 / n)
    if m > ENUMERATION_GUARD:
        raise ValueError(
            f"history length {m} exceeds enumeration guard {ENUMERATION_GUARD}; "
            "estimate the distribution by Monte Carlo instead")
    dist = np.zeros(n)
    for bits, pc in _subset_chunks(m):
        scores = bits @ hist
        weights = alpha ** pc * (1.0 - alpha) ** (m - pc)
        ties = scores == scores.max(axis=1, keepdims=True)
        dist += (weights / ties.sum(axis=1)) @ ties
    return dist


def single_stream_action_distribution(history, alpha: float) -> np.ndarray:
    """Exact round-t action distribution of the single-stream variant.

    Enumerates sign vectors and scores by sum (1 + eps_tau) * g_tau; kept as
    a separate computation path so the fresh/single-stream equivalence can
    be checked between two independent routes.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly in (0, 1)")
    hist = _shaped_history(history)
    m, n = hist.shape
    if m == 0:
        return np.full(n, 1.0 / n)
    if m > ENUMERATION_GUARD:
        raise ValueError(f"history length {m} exceeds enumeration guard {ENUMERATION_GUARD}")
    dist = np.zeros(n)
    for bits, pc in _subset_chunks(m):
        eps = 2.0 * bits - 1.0
        scores = (1.0 + eps) @ hist
        weights = alpha ** pc * (1.0 - alpha) ** (m - pc)
        ties = scores == scores.max(axis=1, keepdims=True)
        dist += (weights / ties.sum(axis=1)) @ ties
    return dist
