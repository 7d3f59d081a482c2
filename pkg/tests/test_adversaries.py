import numpy as np
import pytest

from regretlab.adversaries import (AdversarySpec, TIE_EXPLOITER_MAX_HORIZON,
                                   iid_uniform_payoffs, leader_set_matrix, next_payoff,
                                   tie_exploiter_payoff)


class TestTieExploiter:
    def test_odd_rounds_are_flat(self):
        np.testing.assert_array_equal(tie_exploiter_payoff(1), [0.0, 0.0])
        np.testing.assert_array_equal(tie_exploiter_payoff(7), [0.0, 0.0])

    def test_even_rounds_reward_the_other_strategy(self):
        np.testing.assert_array_equal(tie_exploiter_payoff(2, prev_move=1), [0.0, 0.99])
        np.testing.assert_array_equal(tie_exploiter_payoff(4, prev_move=2), [0.9999, 0.0])

    def test_even_round_requires_previous_move(self):
        with pytest.raises(ValueError):
            tie_exploiter_payoff(2)
        with pytest.raises(ValueError):
            tie_exploiter_payoff(2, prev_move=3)

    @pytest.mark.parametrize("horizon", [2, 10, 100, 200])
    def test_total_available_payoff(self, horizon):
        # sum over even t of (1 - 0.1**t) is at least 0.45 * T
        total = sum(1.0 - 0.1 ** t for t in range(2, horizon + 1, 2))
        assert total >= 0.45 * horizon

    def test_horizon_cap(self):
        AdversarySpec("tie_exploiter", 2, TIE_EXPLOITER_MAX_HORIZON)
        with pytest.raises(ValueError):
            AdversarySpec("tie_exploiter", 2, TIE_EXPLOITER_MAX_HORIZON + 1)

    def test_requires_two_strategies(self):
        with pytest.raises(ValueError):
            AdversarySpec("tie_exploiter", 3, 10)


class TestLeaderSet:
    def test_n2_rounds(self):
        np.testing.assert_array_equal(
            leader_set_matrix(2),
            [[0, -1], [-1, 0], [-1, 0], [-1, -1]])

    def test_first_round_n3(self):
        np.testing.assert_array_equal(leader_set_matrix(3)[0], [0, -1, -1])

    @pytest.mark.parametrize("n", [2, 3, 8, 32])
    def test_structure(self, n):
        rows = leader_set_matrix(n)
        assert rows.shape == (2 * n, n)
        assert set(np.unique(rows)) <= {-1.0, 0.0}
        for m in range(1, n + 1):
            odd = rows[2 * m - 2]
            assert np.count_nonzero(odd == 0.0) == 1 and odd[m - 1] == 0.0
            even = rows[2 * m - 1]
            assert np.count_nonzero(even == 0.0) == n - m
        totals = rows.sum(axis=0)
        assert totals[-1] == -n
        assert np.all(totals[:-1] < totals[-1])

    def test_requires_double_horizon(self):
        AdversarySpec("leader_set", 4, 8)
        with pytest.raises(ValueError):
            AdversarySpec("leader_set", 4, 9)
        with pytest.raises(ValueError):
            leader_set_matrix(1)


class TestIidUniform:
    def test_deterministic_given_seed(self):
        a = iid_uniform_payoffs(np.random.default_rng(5), 3, 100)
        b = iid_uniform_payoffs(np.random.default_rng(5), 3, 100)
        np.testing.assert_array_equal(a, b)

    def test_range_and_mean(self):
        m = iid_uniform_payoffs(np.random.default_rng(1), 3, 10_000)
        assert np.all(np.abs(m) <= 1.0)
        # uniform on [-1, 1]: sd = 2 / sqrt(12)
        se = (2 / np.sqrt(12)) / np.sqrt(m.size)
        assert abs(m.mean()) <= 3 * se


class TestNextPayoff:
    def test_fixed_sequence_lookup(self):
        seq = np.array([[0.0, 0.0], [0.25, -0.25], [0.5, -0.5]])
        spec = AdversarySpec("fixed_sequence", 2, 3, sequence=seq)
        np.testing.assert_array_equal(next_payoff(spec, None, 3, [1, 2]), [0.5, -0.5])

    def test_round_out_of_range(self):
        spec = AdversarySpec("tie_exploiter", 2, 10)
        with pytest.raises(ValueError):
            next_payoff(spec, None, 11, [1] * 10)

    def test_tie_exploiter_reads_previous_move(self):
        spec = AdversarySpec("tie_exploiter", 2, 10)
        np.testing.assert_array_equal(next_payoff(spec, None, 1, []), [0.0, 0.0])
        np.testing.assert_array_equal(next_payoff(spec, None, 2, [1]), [0.0, 0.99])
        np.testing.assert_array_equal(next_payoff(spec, None, 2, [2]), [0.99, 0.0])

    def test_leader_set_first_round(self):
        spec = AdversarySpec("leader_set", 3, 6)
        np.testing.assert_array_equal(next_payoff(spec, None, 1, []), [0, -1, -1])

    @pytest.mark.parametrize("kind,n,horizon", [
        ("fixed_sequence", 2, 4), ("leader_set", 3, 6), ("iid_uniform", 2, 4)])
    def test_oblivious_kinds_ignore_history(self, kind, n, horizon):
        seq = np.eye(n)[np.zeros(horizon, dtype=int)] if kind == "fixed_sequence" else None
        spec = AdversarySpec(kind, n, horizon, sequence=seq,
                             seed=3 if kind == "iid_uniform" else None)
        state = None
        if kind == "iid_uniform":
            state = iid_uniform_payoffs(np.random.default_rng(3), n, horizon)
        for t in range(1, horizon + 1):
            a = next_payoff(spec, state, t, [1] * (t - 1))
            b = next_payoff(spec, state, t, [n] * (t - 1))
            np.testing.assert_array_equal(a, b)

    def test_fixed_sequence_requires_matching_horizon(self):
        with pytest.raises(ValueError):
            AdversarySpec("fixed_sequence", 2, 3, sequence=np.zeros((2, 2)))
