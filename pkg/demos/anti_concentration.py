"""Exact small-ball probabilities of random signed sums vs their bounds.

For sums of the form sum_i eps_i * x_i with Rademacher signs and |x_i| >= 1,
the chance of landing in any closed ball of radius delta is at most
C(n, n/2) / 2^n * (floor(delta) + 1), which itself sits under a clean
c / sqrt(n) envelope. This script enumerates the exact probability for
random instances and prints the sandwich, then shows the binomial analogue:
the largest pmf value of Binomial(t, alpha) stays under q(alpha) / sqrt(t).
"""

import numpy as np

from regretlab import (SignedSumInstance, binomial_pmf_max_bound, corollary_bound,
                       erdos_bound, exact_binomial_pmf_max, exact_small_ball)

rng = np.random.default_rng(3)

print("signed-sum small-ball sandwich (exact <= combinatorial <= envelope)")
print(f"{'n':>3}  {'radius':>6}  {'exact':>8}  {'combinatorial':>13}  {'envelope':>8}")
for _ in range(8):
    n = int(rng.integers(4, 15))
    x = rng.choice([-1.0, 1.0], n) * (1.0 + 2.0 * rng.random(n))
    radius = float(2.0 * rng.random())
    center = float(rng.normal(0.0, n / 2))
    inst = SignedSumInstance(x, center, radius, erdos_mode=True)
    print(f"{n:>3}  {radius:>6.2f}  {exact_small_ball(inst):>8.4f}  "
          f"{erdos_bound(n, radius):>13.4f}  {corollary_bound(n, radius):>8.4f}")

print()
print("binomial pmf maximum under its 1/sqrt(t) envelope")
print(f"{'t':>5}  {'alpha':>5}  {'max pmf':>8}  {'envelope':>8}")
for t in (25, 100, 400, 1600):
    for alpha in (0.3, 0.5):
        print(f"{t:>5}  {alpha:>5.2f}  {exact_binomial_pmf_max(t, alpha):>8.4f}  "
              f"{binomial_pmf_max_bound(t, alpha):>8.4f}")
