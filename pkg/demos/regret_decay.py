"""Average regret of sampled fictitious play shrinks as the horizon grows.

Runs the sampled learner against i.i.d. uniform payoffs at a few horizons
and prints R_T / T next to the closed-form ceiling divided by T. The
empirical rate falls much faster than the (loose) ceiling.
"""

import numpy as np

from regretlab import (AdversarySpec, ExperimentConfig, LearnerConfig,
                       monte_carlo_regret, oblivious_regret_bound)

N = 4
REPS = 200

print(f"sampled fictitious play vs i.i.d. uniform payoffs, N={N}, {REPS} reps")
print(f"{'T':>6}  {'mean R_T':>10}  {'R_T / T':>9}  {'ceiling / T':>11}")
for horizon in (64, 256, 1024, 4096):
    config = ExperimentConfig(
        learner=LearnerConfig("sfp-fresh", 0.5, N),
        adversary=AdversarySpec("iid_uniform", N, horizon, seed=12),
        horizon=horizon, replications=REPS, master_seed=7)
    summary = monte_carlo_regret(config)
    ceiling = oblivious_regret_bound(N, horizon)
    print(f"{horizon:>6}  {summary.mean_regret:>10.2f}  "
          f"{summary.mean_regret / horizon:>9.4f}  {ceiling / horizon:>11.1f}")
