import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import binom

from regretlab.smallball import (SignedSumInstance, binomial_pmf_max_bound,
                                 corollary_bound, erdos_bound, exact_binomial_pmf_max,
                                 exact_expected_regret, exact_small_ball,
                                 exact_switch_probability, regret2switches_rhs)


def brute_force_small_ball(x, center, radius):
    hits = sum(
        center - radius <= sum(e * xi for e, xi in zip(eps, x)) <= center + radius
        for eps in itertools.product([-1, 1], repeat=len(x)))
    return hits / 2 ** len(x)


def brute_force_switch(diffs, t, alpha):
    a = Fraction(alpha).limit_denominator(10 ** 6)
    d = [Fraction(v).limit_denominator(10 ** 6) for v in diffs[:t]]
    prob = Fraction(0)
    for eps in itertools.product([-1, 1], repeat=t):
        prev = sum((1 + e) * v for e, v in zip(eps[:-1], d[:-1]))
        full = prev + (1 + eps[-1]) * d[-1]
        if prev >= 0 and full <= 0:
            plus = sum(e == 1 for e in eps)
            prob += a ** plus * (1 - a) ** (t - plus)
    return float(prob)


class TestExactSmallBall:
    def test_corner(self):
        inst = SignedSumInstance([1.0, 1.0, 1.0], 3.0, 0.0, erdos_mode=True)
        assert exact_small_ball(inst) == 1 / 8

    def test_center_hit(self):
        inst = SignedSumInstance([1.0, 1.0], 0.0, 0.0, erdos_mode=True)
        assert exact_small_ball(inst) == 1 / 2

    def test_whole_range(self):
        x = [1.5, 2.0, 1.0]
        inst = SignedSumInstance(x, 0.0, sum(x), erdos_mode=True)
        assert exact_small_ball(inst) == 1.0

    def test_closed_boundary(self):
        # the ball [2, 3] touches the achievable sum 2
        assert exact_small_ball(SignedSumInstance([1.0, 1.0], 2.5, 0.5)) == 0.25
        assert exact_small_ball(SignedSumInstance([1.0, 1.0], 2.5, 0.4)) == 0.0

    def test_guard(self):
        with pytest.raises(ValueError):
            exact_small_ball(SignedSumInstance(np.ones(25)))

    def test_erdos_mode_validation(self):
        with pytest.raises(ValueError):
            SignedSumInstance([0.5, 1.0], erdos_mode=True)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            n = int(rng.integers(1, 11))
            x = rng.choice([-1, 1], n) * (1 + 2 * rng.random(n))
            center, radius = float(rng.normal(0, 2)), float(2 * rng.random())
            inst = SignedSumInstance(x, center, radius, erdos_mode=True)
            assert exact_small_ball(inst) == brute_force_small_ball(x, center, radius)


class TestErdosAndCorollaryBounds:
    def test_erdos_examples(self):
        assert erdos_bound(3, 0.5) == 3 / 8
        assert erdos_bound(4, 1.0) == 0.75
        assert erdos_bound(1, 0.0) == 0.5

    def test_corollary_examples(self):
        assert abs(corollary_bound(100, 0.0) - 0.2447) < 1e-4
        assert corollary_bound(1, 0.0) > 1.0  # vacuous for tiny n

    def test_corollary_dominates_erdos(self):
        for n in range(1, 1001):
            for delta in (0.0, 0.5, 1.0, 2.0):
                assert erdos_bound(n, delta) <= corollary_bound(n, delta) + 1e-12

    def test_sandwich_random_instances(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            n = int(rng.integers(1, 15))
            x = rng.choice([-1, 1], n) * (1 + 3 * rng.random(n))
            center, radius = float(rng.normal(0, n)), float(3 * rng.random())
            inst = SignedSumInstance(x, center, radius, erdos_mode=True)
            assert exact_small_ball(inst) <= erdos_bound(n, radius) + 1e-12


class TestBinomialPmfBound:
    def test_symmetric_case(self):
        bound = binomial_pmf_max_bound(100, 0.5)
        assert abs(bound - 0.12237) < 1e-4
        exact = math.comb(100, 50) / 2 ** 100
        assert abs(exact - 0.0796) < 1e-3
        assert exact <= bound

    def test_skewed_case(self):
        exact = float(binom.pmf(15, 50, 0.3))
        assert exact == pytest.approx(exact_binomial_pmf_max(50, 0.3), abs=1e-12)
        assert exact <= binomial_pmf_max_bound(50, 0.3)

    def test_scaling(self):
        assert binomial_pmf_max_bound(400, 0.5) == binomial_pmf_max_bound(100, 0.5) / 2

    def test_precondition(self):
        with pytest.raises(ValueError):
            binomial_pmf_max_bound(20, 0.1)

    def test_exact_max_is_really_the_max(self):
        rng = np.random.default_rng(4)
        for _ in range(25):
            t = int(rng.integers(5, 200))
            alpha = float(rng.uniform(0.05, 0.95))
            full_scan = float(binom.pmf(np.arange(t + 1), t, alpha).max())
            assert exact_binomial_pmf_max(t, alpha) == pytest.approx(full_scan, abs=1e-15)


class TestExactSwitchProbability:
    def test_all_zero_diffs(self):
        assert exact_switch_probability(np.zeros(5), 5, 0.5) == 1.0
        assert exact_switch_probability(np.zeros(3), 3, 0.3) == pytest.approx(1.0, abs=1e-12)

    def test_single_round(self):
        assert exact_switch_probability(np.array([1.0]), 1, 0.5) == 0.5

    def test_two_rounds(self):
        assert exact_switch_probability(np.array([-1.0, 1.0]), 2, 0.5) == 0.25

    def test_guard(self):
        with pytest.raises(ValueError):
            exact_switch_probability(np.zeros(21), 21, 0.5)

    def test_scale_invariance(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            t = int(rng.integers(1, 12))
            d = rng.integers(-8, 9, size=t) / 8.0
            a = float(rng.choice([0.25, 0.5, 0.75]))
            assert (exact_switch_probability(d, t, a)
                    == exact_switch_probability(2.0 * d, t, a))

    def test_matches_brute_force(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            t = int(rng.integers(1, 9))
            d = rng.integers(-4, 5, size=t) / 4.0
            for alpha in (0.25, 0.5, 0.75):
                got = exact_switch_probability(d, t, alpha)
                assert got == pytest.approx(brute_force_switch(d, t, alpha), abs=1e-12)


class TestRegretToSwitches:
    def test_zero_payoffs(self):
        assert regret2switches_rhs(np.zeros((6, 3)), 0.5) == 0.0

    def test_single_round_two_strategies(self):
        # pair (2, 1) has diff -1 and switches surely; max term is 1
        assert regret2switches_rhs(np.array([[1.0, 0.0]]), 0.5) == 8.0

    def test_single_strategy_has_no_pairs(self):
        assert regret2switches_rhs(np.ones((4, 1)), 0.5) == 0.0

    def test_guards(self):
        with pytest.raises(ValueError):
            regret2switches_rhs(np.zeros((21, 2)), 0.5)
        with pytest.raises(ValueError):
            regret2switches_rhs(np.zeros((4, 5)), 0.5)


class TestExactExpectedRegret:
    def test_zero_payoffs(self):
        assert exact_expected_regret(np.zeros((5, 3)), 0.5) == 0.0

    def test_one_round(self):
        assert exact_expected_regret(np.array([[1.0, 0.0]]), 0.5) == 0.5

    def test_two_rounds(self):
        assert exact_expected_regret(np.array([[1.0, 0.0], [1.0, 0.0]]), 0.5) == 0.75

    def test_dominated_by_switching_rhs(self):
        rng = np.random.default_rng(7)
        for _ in range(40):
            t = int(rng.integers(1, 13))
            payoffs = rng.integers(-8, 9, size=(t, 2)) / 8.0
            for alpha in (0.25, 0.5, 0.75):
                lhs = exact_expected_regret(payoffs, alpha)
                rhs = regret2switches_rhs(payoffs, alpha)
                assert lhs <= rhs + 1e-9
