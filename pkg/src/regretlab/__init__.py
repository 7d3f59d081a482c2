"""regretlab: a laboratory for no-regret learning in repeated games.

Implements sampled fictitious play with Bernoulli sampling in both
randomization variants, the adversary constructions that separate them,
Monte Carlo experiment machinery with deterministic seeding, closed-form
regret bounds, and exact enumeration oracles for the anti-concentration
facts the regret analysis rests on.
"""

from .adversaries import (AdversarySpec, iid_uniform_payoffs, leader_set_matrix,
                          next_payoff, tie_exploiter_payoff)
from .bounds import (ScalePartition, asymmetric_regret_bound, c_lo,
                     high_prob_regret_bound, oblivious_regret_bound, q_alpha,
                     scale_count, scale_partition)
from .game import (CumulativeState, RegretTrace, StrategicGame, append_round,
                   external_regret, load_game, load_payoff_sequence,
                   opponent_payoff_vector, pairwise_diff, save_payoff_sequence)
from .harness import (ExperimentConfig, RunSummary, derive_seed,
                      load_experiment_config, monte_carlo_regret, run_episode)
from .learners import (LearnerConfig, RademacherStream, argmax_set, fp_scores,
                       sfp_action_distribution, sfp_sample_subset, sfp_step_fresh,
                       sfp_step_single_stream, single_stream_action_distribution,
                       tie_break)
from .smallball import (SignedSumInstance, binomial_pmf_max_bound, corollary_bound,
                        erdos_bound, exact_binomial_pmf_max, exact_expected_regret,
                        exact_small_ball, exact_switch_probability,
                        regret2switches_rhs)

__version__ = "0.1.0"
