"""Payoff-generating environments.

Oblivious kinds (fixed_sequence, iid_uniform, leader_set) ignore the
player's moves. The tie_exploiter is adaptive: on even rounds it reads the
player's previous move and rewards only the other strategy, defeating the
single-stream learner, whose move repeats deterministically after a (0, 0)
round unless the sampled history is empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .game import as_payoff_matrix

__all__ = [
    "ADVERSARY_KINDS",
    "TIE_EXPLOITER_MAX_HORIZON",
    "AdversarySpec",
    "next_payoff",
    "tie_exploiter_payoff",
    "leader_set_matrix",
    "iid_uniform_payoffs",
]

ADVERSARY_KINDS = ("fixed_sequence", "iid_uniform", "leader_set", "tie_exploiter")

# 0.1**t underflows to 0 past ~300 rounds, which would create exact ties the
# construction relies on avoiding.
TIE_EXPLOITER_MAX_HORIZON = 300


@dataclass(frozen=True)
class AdversarySpec:
    kind: str
    n: int
    horizon: int
    sequence: Optional[np.ndarray] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ADVERSARY_KINDS:
            raise ValueError(f"unknown adversary kind {self.kind!r}")
        if self.n < 1 or self.horizon < 1:
            raise ValueError("n and horizon must be positive")
        if self.kind == "fixed_sequence":
            if self.sequence is None:
                raise ValueError("fixed_sequence requires a payoff sequence")
            seq = as_payoff_matrix(self.sequence, self.n)
            if seq.shape[0] != self.horizon:
                raise ValueError(
                    f"fixed_sequence carries {seq.shape[0]} rounds, expected {self.horizon}")
            object.__setattr__(self, "sequence", seq)
        elif self.sequence is not None:
            raise ValueError(f"{self.kind} does not take a payoff sequence")
        if self.kind == "leader_set":
            if self.n < 2:
                raise ValueError("leader_set requires n >= 2")
            if self.horizon != 2 * self.n:
                raise ValueError("leader_set requires horizon = 2 * n")
        if self.kind == "tie_exploiter":
            if self.n != 2:
                raise ValueError("tie_exploiter requires n = 2")
            if self.horizon > TIE_EXPLOITER_MAX_HORIZON:
                raise ValueError(
                    f"tie_exploiter horizon capped at {TIE_EXPLOITER_MAX_HORIZON}")


def tie_exploiter_payoff(t: int, prev_move: Optional[int] = None) -> np.ndarray:
    """Round-t payoffs of the adaptive tie-exploiting environment.

    Odd rounds pay (0, 0). Even rounds pay 1 - 0.1**t on whichever strategy
    the player did NOT just play, so a learner locked to its previous move
    never collects.
    """
    if t < 1:
        raise ValueError("round index must be >= 1")
    if t % 2 == 1:
        return np.zeros(2)
    if prev_move not in (1, 2):
        raise ValueError("even rounds require the player's previous move (1 or 2)")
    reward = 1.0 - 0.1 ** t
    return np.array([0.0, reward]) if prev_move == 1 else np.array([reward, 0.0])


def leader_set_matrix(n: int) -> np.ndarray:
    """The N x 2N leader-set payoff matrix, returned as 2N round rows.

    Round 2m-1 pays 0 to strategy m and -1 to the rest; round 2m pays -1 to
    strategies 1..m and 0 to strategies m+1..N. Strategy N is the best
    constant strategy with total payoff -N.
    """
    if n < 2:
        raise ValueError("leader_set requires n >= 2")
    rows = np.full((2 * n, n), -1.0)
    for m in range(1, n + 1):
        rows[2 * m - 2] = -1.0
        rows[2 * m - 2, m - 1] = 0.0
        rows[2 * m - 1, :m] = -1.0
        rows[2 * m - 1, m:] = 0.0
    return rows


def iid_uniform_payoffs(rng: np.random.Generator, n: int, horizon: int) -> np.ndarray:
    """horizon x n payoffs drawn i.i.d. uniform on [-1, 1]."""
    if n < 1 or horizon < 1:
        raise ValueError("n and horizon must be positive")
    return rng.uniform(-1.0, 1.0, size=(horizon, n))


def next_payoff(spec: AdversarySpec, state: Optional[np.ndarray], t: int,
                player_history: Sequence[int], rng: Optional[np.random.Generator] = None,
                ) -> np.ndarray:
    """The round-t payoff vector for a spec.

    `state` carries the materialized oblivious matrix for iid_uniform (built
    once per episode from the adversary rng); pass None to build it here.
    Oblivious kinds ignore player_history.
    """
    if not 1 <= t <= spec.horizon:
        raise ValueError(f"round {t} outside 1..{spec.horizon}")
    if len(player_history) < t - 1:
        raise ValueError("player history shorter than t - 1")
    if spec.kind == "fixed_sequence":
        return spec.sequence[t - 1]
    if spec.kind == "leader_set":
        return leader_set_matrix(spec.n)[t - 1]
    if spec.kind == "iid_uniform":
        if state is None:
            if rng is None:
                rng = np.random.default_rng(spec.seed)
            state = iid_uniform_payoffs(rng, spec.n, spec.horizon)
        return state[t - 1]
    # tie_exploiter
    prev = int(player_history[t - 2]) if t % 2 == 0 else None
    return tie_exploiter_payoff(t, prev)
