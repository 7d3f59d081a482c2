import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regretlab.learners import (ENUMERATION_GUARD, LearnerConfig, RademacherStream,
                                argmax_set, fp_scores, sfp_action_distribution,
                                sfp_sample_subset, sfp_step_fresh,
                                sfp_step_single_stream,
                                single_stream_action_distribution, tie_break)

dyadic = st.integers(-8, 8).map(lambda k: k / 8.0)


def brute_force_distribution(history, alpha):
    """Independent oracle: Fraction-weighted enumeration over subsets."""
    hist = [list(map(Fraction, row)) for row in history]
    m = len(hist)
    n = len(hist[0])
    a = Fraction(alpha).limit_denominator(10 ** 6)
    dist = [Fraction(0)] * n
    for include in itertools.product([0, 1], repeat=m):
        weight = a ** sum(include) * (1 - a) ** (m - sum(include))
        scores = [sum(hist[t][k] for t in range(m) if include[t]) for k in range(n)]
        best = max(scores)
        tied = [k for k in range(n) if scores[k] == best]
        for k in tied:
            dist[k] += weight / len(tied)
    return np.array([float(p) for p in dist])


class TestArgmaxSet:
    def test_examples(self):
        assert argmax_set([2, 0, 2]) == {1, 3}
        assert argmax_set([0, 0]) == {1, 2}
        assert argmax_set([-1, -0.5]) == {2}

    def test_single_strategy(self):
        assert argmax_set([0.0]) == {1}


class TestTieBreak:
    def test_singleton(self):
        rng = np.random.default_rng(0)
        assert all(tie_break({2}, rng) == 2 for _ in range(10))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            tie_break(set(), np.random.default_rng(0))

    def test_two_way_frequency(self):
        rng = np.random.default_rng(7)
        draws = 100_000
        ones = sum(tie_break({1, 2}, rng) == 1 for _ in range(draws))
        assert abs(ones / draws - 0.5) <= 3 * np.sqrt(0.25 / draws)

    def test_three_way_frequency(self):
        rng = np.random.default_rng(11)
        draws = 90_000
        counts = np.zeros(3)
        for _ in range(draws):
            counts[tie_break({1, 2, 3}, rng) - 1] += 1
        se = np.sqrt((1 / 3) * (2 / 3) / draws)
        assert np.all(np.abs(counts / draws - 1 / 3) <= 3 * se)


class TestFpScores:
    def test_examples(self):
        np.testing.assert_array_equal(fp_scores([[1, 0], [1, 0]]), [2.0, 0.0])
        np.testing.assert_array_equal(fp_scores(np.empty((0, 4))), np.zeros(4))
        np.testing.assert_array_equal(fp_scores([[1, -1], [-1, 1]]), [0.0, 0.0])


class TestSampleSubset:
    def test_round_one_always_empty(self):
        rng = np.random.default_rng(0)
        assert all(sfp_sample_subset(rng, 1, 0.5) == set() for _ in range(20))

    def test_empty_probability_half(self):
        rng = np.random.default_rng(3)
        draws = 65_536
        empties = sum(not sfp_sample_subset(rng, 5, 0.5) for _ in range(draws))
        p = 2.0 ** -4
        assert abs(empties / draws - p) <= 3 * np.sqrt(p * (1 - p) / draws)

    def test_full_subset_probability_asymmetric(self):
        rng = np.random.default_rng(4)
        draws = 50_000
        hits = sum(sfp_sample_subset(rng, 3, 0.75) == {1, 2} for _ in range(draws))
        p = 0.5625
        assert abs(hits / draws - p) <= 3 * np.sqrt(p * (1 - p) / draws)


class TestStepFresh:
    def test_exact_distribution_one_round_history(self):
        np.testing.assert_allclose(
            sfp_action_distribution(np.array([[1.0, 0.0]]), 0.5), [0.75, 0.25],
            atol=1e-15)

    def test_empirical_matches_exact(self):
        rng = np.random.default_rng(5)
        hist = np.array([[1.0, 0.0]])
        draws = 40_000
        ones = sum(sfp_step_fresh(hist, rng, 0.5) == 1 for _ in range(draws))
        assert abs(ones / draws - 0.75) <= 3 * np.sqrt(0.75 * 0.25 / draws)


class TestStepSingleStream:
    def _stream(self, signs):
        s = RademacherStream(seed=0)
        s.realized = list(signs)
        return s

    def test_unique_argmax(self):
        rng = np.random.default_rng(0)
        hist = np.array([[1.0, 0.0], [0.0, 1.0]])
        assert sfp_step_single_stream(hist, self._stream([1, -1]), rng) == 1

    def test_empty_effective_sample_is_uniform(self):
        rng = np.random.default_rng(2)
        hist = np.array([[1.0, 0.0]])
        draws = 20_000
        ones = sum(sfp_step_single_stream(hist, self._stream([-1]), rng) == 1
                   for _ in range(draws))
        assert abs(ones / draws - 0.5) <= 3 * np.sqrt(0.25 / draws)

    def test_tied_scores_tie_break(self):
        rng = np.random.default_rng(9)
        hist = np.array([[1.0, 0.0], [0.0, 1.0]])
        picks = {sfp_step_single_stream(hist, self._stream([1, 1]), rng)
                 for _ in range(100)}
        assert picks == {1, 2}

    def test_short_stream_extends_deterministically(self):
        s = RademacherStream(seed=42, alpha=0.5)
        first = s.prefix(10).copy()
        np.testing.assert_array_equal(s.prefix(10), first)


class TestActionDistribution:
    def test_empty_history_uniform(self):
        np.testing.assert_array_equal(
            sfp_action_distribution(np.empty((0, 5)), 0.3), np.full(5, 0.2))

    def test_symmetric_two_rounds(self):
        hist = np.array([[1.0, -1.0], [-1.0, 1.0]])
        np.testing.assert_allclose(
            sfp_action_distribution(hist, 0.5), [0.5, 0.5], atol=1e-15)

    def test_guard(self):
        with pytest.raises(ValueError):
            sfp_action_distribution(np.zeros((ENUMERATION_GUARD + 1, 2)), 0.5)

    @given(st.integers(1, 6), st.integers(2, 3),
           st.sampled_from([0.25, 0.5, 0.75]), st.integers(0, 10 ** 6))
    @settings(max_examples=40, deadline=None)
    def test_matches_brute_force(self, m, n, alpha, seed):
        hist = np.random.default_rng(seed).integers(-8, 9, size=(m, n)) / 8.0
        got = sfp_action_distribution(hist.reshape(m, n), alpha)
        want = brute_force_distribution(hist.reshape(m, n), alpha)
        np.testing.assert_allclose(got, want, atol=1e-12)
        assert np.all(got >= 0) and abs(got.sum() - 1.0) <= 1e-12

    def test_variant_equivalence_small(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            m, n = int(rng.integers(0, 9)), int(rng.integers(2, 4))
            hist = (rng.integers(-8, 9, size=(m, n)) / 8.0).reshape(m, n)
            for alpha in (0.25, 0.5, 0.75):
                fresh = sfp_action_distribution(hist, alpha)
                single = single_stream_action_distribution(hist, alpha)
                assert 0.5 * np.abs(fresh - single).sum() <= 1e-12


class TestLearnerConfig:
    def test_alpha_bounds(self):
        LearnerConfig("sfp-fresh", 0.5, 2)
        with pytest.raises(ValueError):
            LearnerConfig("sfp-fresh", 1.0, 2)
        with pytest.raises(ValueError):
            LearnerConfig("sfp-fresh", 0.0, 2)

    def test_kind_strings(self):
        for kind in ("fp", "sfp-fresh", "sfp-single", "uniform"):
            LearnerConfig(kind, 0.5, 2)
        with pytest.raises(ValueError):
            LearnerConfig("ftl", 0.5, 2)


@given(st.lists(st.tuples(dyadic, dyadic, dyadic), min_size=1, max_size=14),
       st.data())
@settings(max_examples=60)
def test_subset_and_perturbation_forms_agree(rows, data):
    payoffs = np.array(rows)
    eps = np.array([data.draw(st.sampled_from([-1.0, 1.0])) for _ in rows])
    subset_scores = payoffs[eps > 0].sum(axis=0)
    half_scores = ((1.0 + eps) / 2.0) @ payoffs
    np.testing.assert_array_equal(subset_scores, half_scores)
    assert argmax_set((1.0 + eps) @ payoffs) == argmax_set(subset_scores)
    # follow-the-perturbed-leader identity, at the argmax-set level
    assert (argmax_set((1.0 + eps) @ payoffs)
            == argmax_set(payoffs.sum(axis=0) + eps @ payoffs))
