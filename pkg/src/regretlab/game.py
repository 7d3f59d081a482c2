"""Repeated-game data model: payoff vectors, cumulative state, regret.

Payoff vectors are plain numpy float64 arrays of length N with entries in
[-1, 1]. Strategy indices are 1-based in every public interface; a choice
``k`` refers to entry ``g[k - 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "as_payoff_vector",
    "as_payoff_matrix",
    "StrategicGame",
    "CumulativeState",
    "RegretTrace",
    "opponent_payoff_vector",
    "append_round",
    "external_regret",
    "pairwise_diff",
    "load_game",
    "load_payoff_sequence",
    "save_payoff_sequence",
]


def as_payoff_vector(values, n: Optional[int] = None, ternary: bool = False) -> np.ndarray:
    """Validate and convert one round's payoffs to a float64 array.

    Entries must lie in [-1, 1]; with ternary=True they must be in {-1, 0, 1}.
    """
    g = np.asarray(values, dtype=np.float64)
    if g.ndim != 1 or g.size < 1:
        raise ValueError("payoff vector must be a nonempty 1-d sequence")
    if n is not None and g.size != n:
        raise ValueError(f"payoff vector has length {g.size}, expected {n}")
    if np.any(np.abs(g) > 1.0):
        raise ValueError("payoff entries must lie in [-1, 1]")
    if ternary and not np.all(np.isin(g, (-1.0, 0.0, 1.0))):
        raise ValueError("payoff entries must lie in {-1, 0, 1}")
    return g


def as_payoff_matrix(rows, n: Optional[int] = None) -> np.ndarray:
    """Validate a (T, N) stack of payoff vectors."""
    m = np.asarray(rows, dtype=np.float64)
    if m.ndim == 1:
        m = m.reshape(0, 0) if m.size == 0 else m.reshape(1, -1)
    if m.ndim != 2:
        raise ValueError("payoff sequence must be a (T, N) array")
    if n is not None and m.size and m.shape[1] != n:
        raise ValueError(f"payoff rows have length {m.shape[1]}, expected {n}")
    if np.any(np.abs(m) > 1.0):
        raise ValueError("payoff entries must lie in [-1, 1]")
    return m


@dataclass(frozen=True)
class StrategicGame:
    """M-player strategic-form game with a common strategy count N.

    payoff_tensor has shape (N,) * M + (M,): the trailing axis indexes the
    player receiving the payoff. All entries lie in [-1, 1].
    """

    num_players: int
    num_strategies: int
    payoff_tensor: np.ndarray

    def __post_init__(self):
        if self.num_players < 1 or self.num_strategies < 1:
            raise ValueError("num_players and num_strategies must be positive")
        expected = (self.num_strategies,) * self.num_players + (self.num_players,)
        tensor = np.asarray(self.payoff_tensor, dtype=np.float64)
        if tensor.shape != expected:
            raise ValueError(f"payoff tensor shape {tensor.shape}, expected {expected}")
        if np.any(np.abs(tensor) > 1.0):
            raise ValueError("payoff entries must lie in [-1, 1]")
        object.__setattr__(self, "payoff_tensor", tensor)

    def payoff(self, profile: Sequence[int], player: int) -> float:
        """Payoff of `player` (1-based) at a full 1-based strategy profile."""
        self._check_player(player)
        idx = self._profile_index(profile, self.num_players)
        return float(self.payoff_tensor[idx + (player - 1,)])

    def _check_player(self, player: int) -> None:
        if not 1 <= player <= self.num_players:
            raise ValueError(f"player {player} out of range 1..{self.num_players}")

    def _profile_index(self, profile: Sequence[int], arity: int) -> tuple:
        profile = tuple(int(s) for s in profile)
        if len(profile) != arity:
            raise ValueError(f"profile has {len(profile)} entries, expected {arity}")
        for s in profile:
            if not 1 <= s <= self.num_strategies:
                raise ValueError(f"strategy {s} out of range 1..{self.num_strategies}")
        return tuple(s - 1 for s in profile)


def opponent_payoff_vector(game: StrategicGame, player: int, opp_profile: Sequence[int]) -> np.ndarray:
    """Payoffs of `player` for each own strategy, opponents' moves fixed.

    Entry k-1 is the payoff of playing strategy k against opp_profile, the
    1-based strategies of the other M-1 players in player order.
    """
    game._check_player(player)
    opp = game._profile_index(opp_profile, game.num_players - 1)
    out = np.empty(game.num_strategies, dtype=np.float64)
    for k in range(game.num_strategies):
        idx = opp[: player - 1] + (k,) + opp[player - 1:]
        out[k] = game.payoff_tensor[idx + (player - 1,)]
    return out


@dataclass
class CumulativeState:
    """Running cumulative payoffs of one learner episode.

    `perturbed_cumulative` tracks sums of (1 + eps_t) * g_t and is only
    advanced when append_round receives a sign; fresh-randomization runs
    leave it at zero.
    """

    num_strategies: int
    round: int = 0
    cumulative: np.ndarray = None
    perturbed_cumulative: np.ndarray = None
    realized_payoff_sum: float = 0.0

    def __post_init__(self):
        if self.cumulative is None:
            self.cumulative = np.zeros(self.num_strategies)
        if self.perturbed_cumulative is None:
            self.perturbed_cumulative = np.zeros(self.num_strategies)


def append_round(state: CumulativeState, g, chosen: int, eps: Optional[int] = None) -> CumulativeState:
    """Advance a cumulative state by one round (in place, returns state).

    eps, when given, is the round's Rademacher sign in {-1, +1} and updates
    the perturbed sums by (1 + eps) * g.
    """
    g = as_payoff_vector(g, state.num_strategies)
    if not 1 <= chosen <= state.num_strategies:
        raise ValueError(f"chosen strategy {chosen} out of range")
    if eps is not None and eps not in (-1, 1):
        raise ValueError("eps must be -1 or +1")
    state.round += 1
    state.cumulative += g
    if eps is not None:
        state.perturbed_cumulative += (1 + eps) * g
    state.realized_payoff_sum += float(g[chosen - 1])
    return state


def external_regret(payoffs, choices: Sequence[int]) -> float:
    """Regret against the best constant strategy in hindsight.

    Returns max_k sum_t g[t, k] - sum_t g[t, choices[t]]. May be negative;
    empty input gives 0.
    """
    m = as_payoff_matrix(payoffs)
    choices = list(choices)
    if m.shape[0] != len(choices):
        raise ValueError("payoffs and choices must have equal length")
    if not choices:
        return 0.0
    idx = np.asarray(choices, dtype=np.int64)
    if np.any(idx < 1) or np.any(idx > m.shape[1]):
        raise ValueError("choice out of strategy range")
    realized = float(m[np.arange(m.shape[0]), idx - 1].sum())
    return float(m.sum(axis=0).max()) - realized


def pairwise_diff(g, i: int, j: int) -> float:
    """g[i] - g[j] with 1-based strategies; lies in [-2, 2]."""
    g = as_payoff_vector(g)
    n = g.size
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"strategy pair ({i}, {j}) out of range 1..{n}")
    return float(g[i - 1] - g[j - 1])


@dataclass
class RegretTrace:
    """Per-round record of one episode.

    payoffs is (T, N); choices are 1-based; regret_curve[t-1] is the regret
    after round t against the best constant strategy.
    """

    payoffs: np.ndarray
    choices: np.ndarray
    regret_curve: np.ndarray
    realized_payoffs: np.ndarray = field(default=None)

    def __post_init__(self):
        self.payoffs = as_payoff_matrix(self.payoffs)
        self.choices = np.asarray(self.choices, dtype=np.int64)
        self.regret_curve = np.asarray(self.regret_curve, dtype=np.float64)
        t = self.payoffs.shape[0]
        if not (len(self.choices) == len(self.regret_curve) == t):
            raise ValueError("trace sequences must share one horizon")
        if self.realized_payoffs is None and t:
            self.realized_payoffs = self.payoffs[np.arange(t), self.choices - 1]

    @property
    def horizon(self) -> int:
        return self.payoffs.shape[0]

    def recompute_regret_curve(self) -> np.ndarray:
        """Regret curve rebuilt from payoffs and choices alone."""
        cum = np.cumsum(self.payoffs, axis=0)
        realized = np.cumsum(self.payoffs[np.arange(self.horizon), self.choices - 1])
        return cum.max(axis=1) - realized


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def _load_toml(path):
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def load_game(path) -> StrategicGame:
    """Read a game definition file (TOML).

    Fields: players (M), strategies (N), payoffs (flattened tensor, row-major
    over profiles, innermost axis the receiving player).
    """
    doc = _load_toml(path)
    try:
        m = int(doc["players"])
        n = int(doc["strategies"])
        flat = np.asarray(doc["payoffs"], dtype=np.float64)
    except KeyError as exc:
        raise ValueError(f"game file missing field {exc}") from exc
    shape = (n,) * m + (m,)
    if flat.size != np.prod(shape):
        raise ValueError(f"payoffs has {flat.size} entries, expected {np.prod(shape)}")
    return StrategicGame(m, n, flat.reshape(shape))


def load_payoff_sequence(path) -> np.ndarray:
    """Read an oblivious payoff-sequence file.

    Line 1: ``horizon <T>``; line 2: ``n <N>``; then T whitespace-separated
    rows of N reals in [-1, 1].
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if len(lines) < 2 or not lines[0].startswith("horizon") or not lines[1].startswith("n"):
        raise ValueError("payoff-sequence file must start with 'horizon T' and 'n N' lines")
    t = int(lines[0].split()[1])
    n = int(lines[1].split()[1])
    rows = lines[2:]
    if len(rows) != t:
        raise ValueError(f"expected {t} payoff rows, found {len(rows)}")
    m = np.array([[float(x) for x in row.split()] for row in rows], dtype=np.float64)
    if t == 0:
        m = m.reshape(0, n)
    return as_payoff_matrix(m, n)


def save_payoff_sequence(path, payoffs) -> None:
    m = as_payoff_matrix(payoffs)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"horizon {m.shape[0]}\n")
        fh.write(f"n {m.shape[1]}\n")
        for row in m:
            fh.write(" ".join(format(x, ".17g") for x in row) + "\n")
