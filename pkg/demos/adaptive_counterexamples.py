"""Two adversaries that keep sampled fictitious play away from no-regret.

First, an adaptive opponent that feeds flat payoffs on odd rounds (forcing
a coin-flip move) and then rewards whichever strategy the learner did NOT
just play. Against the single-stream variant this pins average regret near
a constant instead of letting it vanish.

Second, an oblivious payoff matrix that walks the "current leader" through
all N strategies, costing the learner about N/2 - H_N in expectation --
regret that grows linearly in N even at the modest horizon T = 2N.
"""

import numpy as np

from regretlab import (AdversarySpec, ExperimentConfig, LearnerConfig,
                       monte_carlo_regret)

# --- adaptive tie exploiter -------------------------------------------------
T = 200
config = ExperimentConfig(
    learner=LearnerConfig("sfp-single", 0.5, 2),
    adversary=AdversarySpec("tie_exploiter", 2, T),
    horizon=T, replications=500, master_seed=0)
summary = monte_carlo_regret(config)
print("adaptive tie exploiter, single-stream learner, T =", T)
print(f"  mean regret      = {summary.mean_regret:.2f} "
      f"+- {summary.std_error:.2f}")
print(f"  linear reference = 0.225*T - 2 = {0.225 * T - 2:.2f}")
print(f"  mean R_T / T     = {summary.mean_regret / T:.3f}  (does not vanish)")
print()

# --- oblivious leader walk ---------------------------------------------------
print("oblivious leader walk, fresh-sample learner")
print(f"{'N':>4}  {'T':>4}  {'mean regret':>11}  {'N/2 - H_N':>9}")
for n in (4, 8, 16, 32):
    reference = n / 2 - sum(1 / m for m in range(1, n + 1))
    config = ExperimentConfig(
        learner=LearnerConfig("sfp-fresh", 0.5, n),
        adversary=AdversarySpec("leader_set", n, 2 * n),
        horizon=2 * n, replications=1000, master_seed=0)
    summary = monte_carlo_regret(config)
    print(f"{n:>4}  {2 * n:>4}  {summary.mean_regret:>11.2f}  {reference:>9.2f}")
