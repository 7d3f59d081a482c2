"""Episode runner and Monte Carlo aggregation.

Each replication derives its own sampling, tie-break, and adversary seeds
from (master_seed, replication, label) through a SHA-256 mix, so runs are
bitwise reproducible and replications can execute in any order or in
parallel. REGRETLAB_THREADS > 1 fans replications out to worker processes;
the final reduction always happens in replication order.
"""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import bounds
from .adversaries import AdversarySpec, iid_uniform_payoffs, leader_set_matrix, next_payoff
from .game import RegretTrace, load_payoff_sequence
from .learners import KINDS, LearnerConfig, RademacherStream

__all__ = [
    "ExperimentConfig",
    "RunSummary",
    "derive_seed",
    "run_episode",
    "monte_carlo_regret",
    "load_experiment_config",
    "write_trace_csv",
    "read_trace_csv",
    "write_summary",
    "worker_count",
]

SEED_LABELS = ("sampling", "tie_break", "adversary")


@dataclass(frozen=True)
class ExperimentConfig:
    learner: LearnerConfig
    adversary: AdversarySpec
    horizon: int
    replications: int
    master_seed: int

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.horizon != self.adversary.horizon:
            raise ValueError("experiment horizon must match the adversary's")
        if self.learner.num_strategies != self.adversary.n:
            raise ValueError("learner and adversary must agree on N")


@dataclass
class RunSummary:
    mean_regret: float
    std_error: float
    ci95: Tuple[float, float]
    mean_regret_curve: np.ndarray
    mean_avg_regret_curve: np.ndarray
    bound_value: Optional[float]
    replications: int


def derive_seed(master_seed: int, replication_index: int, stream_label: str) -> int:
    """Stable 64-bit stream seed for one (replication, label) pair."""
    msg = f"{int(master_seed)}|{int(replication_index)}|{stream_label}".encode()
    return int.from_bytes(hashlib.sha256(msg).digest()[:8], "big")


def _episode_rngs(config: ExperimentConfig, rep: int):
    adv_base = config.adversary.seed if config.adversary.seed is not None else config.master_seed
    return (
        np.random.default_rng(derive_seed(config.master_seed, rep, "sampling")),
        np.random.default_rng(derive_seed(config.master_seed, rep, "tie_break")),
        np.random.default_rng(derive_seed(adv_base, rep, "adversary")),
    )


def run_episode(config: ExperimentConfig, replication_index: int) -> RegretTrace:
    """Play one learner-vs-adversary episode of T rounds.

    The learner sees only past payoff vectors (full information); the
    adversary sees the learner's moves only after each round completes.
    The trace is fully determined by (config, replication_index).
    """
    t_max = config.horizon
    n = config.adversary.n
    kind = config.learner.kind
    alpha = config.learner.alpha
    rng_samp, rng_tie, rng_adv = _episode_rngs(config, replication_index)

    adv_state = None
    if config.adversary.kind == "iid_uniform":
        adv_state = iid_uniform_payoffs(rng_adv, n, t_max)
    elif config.adversary.kind == "leader_set":
        adv_state = leader_set_matrix(n)

    stream = None
    if kind == "sfp-single":
        stream = RademacherStream(derive_seed(config.master_seed, replication_index, "sampling"),
                                  alpha)

    hist = np.zeros((t_max, n))
    cum = np.zeros(n)
    cum_tilde = np.zeros(n)  # single-stream perturbed sums
    zeros = np.zeros(n)
    choices = np.zeros(t_max, dtype=np.int64)
    regret_curve = np.zeros(t_max)
    realized = 0.0

    def choose(scores: np.ndarray) -> int:
        # fast inline of tie_break(argmax_set(scores), rng_tie)
        tied = np.flatnonzero(scores == scores.max())
        if tied.size == 1:
            return int(tied[0]) + 1
        return int(tied[int(rng_tie.integers(tied.size))]) + 1

    for t in range(1, t_max + 1):
        g = next_payoff(config.adversary, adv_state, t, choices[: t - 1], rng_adv)
        if kind == "fp":
            k = choose(cum)
        elif kind == "uniform":
            k = choose(zeros)
        elif kind == "sfp-fresh":
            if t > 1:
                mask = (rng_samp.random(t - 1) < alpha).astype(np.float64)
                scores = mask @ hist[: t - 1]
            else:
                scores = zeros
            k = choose(scores)
        else:  # sfp-single
            if t > 1:
                eps = stream.prefix(t - 1)[t - 2]
                cum_tilde += (1.0 + eps) * hist[t - 2]
            k = choose(cum_tilde)
        hist[t - 1] = g
        cum += g
        realized += g[k - 1]
        choices[t - 1] = k
        regret_curve[t - 1] = cum.max() - realized
    return RegretTrace(hist, choices, regret_curve)


def _ternary_payoffs(spec: AdversarySpec) -> bool:
    if spec.kind == "leader_set":
        return True
    if spec.kind == "fixed_sequence":
        return bool(np.all(np.isin(spec.sequence, (-1.0, 0.0, 1.0))))
    return False


def matched_bound(config: ExperimentConfig) -> Optional[float]:
    """The theoretical ceiling that applies to a configuration, if any.

    alpha = 1/2 uses the oblivious expected-regret bound; other alphas are
    only covered for {-1, 0, 1}-valued payoffs by the asymmetric bound.
    """
    lrn, t, n = config.learner, config.horizon, config.adversary.n
    if lrn.kind not in ("sfp-fresh", "sfp-single"):
        return None
    if lrn.alpha == 0.5:
        if t >= 4 and n >= 2:
            return bounds.oblivious_regret_bound(n, t)
        return None
    if _ternary_payoffs(config.adversary) and t > max(2.0 / (1.0 - lrn.alpha), 2.0 / lrn.alpha):
        return bounds.asymmetric_regret_bound(n, t, lrn.alpha)
    return None


def worker_count() -> int:
    """Worker processes from REGRETLAB_THREADS (0 or unset = run serially)."""
    raw = os.environ.get("REGRETLAB_THREADS", "0")
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(f"REGRETLAB_THREADS must be an integer, got {raw!r}")
    return max(val, 0)


def _episode_curve(args) -> np.ndarray:
    config, rep = args
    return run_episode(config, rep).regret_curve


def monte_carlo_regret(config: ExperimentConfig) -> RunSummary:
    """Aggregate final regrets and regret curves over all replications."""
    reps = config.replications
    workers = worker_count()
    jobs = [(config, rep) for rep in range(reps)]
    if workers > 1 and reps > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            curves = list(pool.map(_episode_curve, jobs, chunksize=max(1, reps // (4 * workers))))
    else:
        curves = [_episode_curve(job) for job in jobs]
    curves = np.asarray(curves)  # (reps, T), in replication order
    finals = curves[:, -1]
    mean = float(finals.mean())
    se = float(finals.std(ddof=1) / np.sqrt(reps)) if reps > 1 else 0.0
    ts = np.arange(1, config.horizon + 1)
    return RunSummary(
        mean_regret=mean,
        std_error=se,
        ci95=(mean - 1.96 * se, mean + 1.96 * se),
        mean_regret_curve=curves.mean(axis=0),
        mean_avg_regret_curve=(curves / ts).mean(axis=0),
        bound_value=matched_bound(config),
        replications=reps,
    )


# ---------------------------------------------------------------------------
# Experiment config files and outputs
# ---------------------------------------------------------------------------

def _load_toml(path):
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def load_experiment_config(path, seed_override: Optional[int] = None) -> ExperimentConfig:
    """Parse a TOML experiment file.

    Sections: learner = {kind, alpha?}, adversary = {kind, n?, seed?, file?},
    horizon, replications, seed. Validation failures raise ValueError naming
    the offending field.
    """
    doc = _load_toml(path)
    for key in ("learner", "adversary", "horizon", "replications"):
        if key not in doc:
            raise ValueError(f"config missing field '{key}'")
    horizon = int(doc["horizon"])
    replications = int(doc["replications"])
    master_seed = int(seed_override if seed_override is not None else doc.get("seed", 0))

    adv = dict(doc["adversary"])
    adv_kind = adv.get("kind")
    sequence = None
    if adv_kind == "fixed_sequence":
        if "file" not in adv:
            raise ValueError("config field 'adversary.file' required for fixed_sequence")
        base = os.path.dirname(os.path.abspath(path))
        sequence = load_payoff_sequence(os.path.join(base, adv["file"]))
        adv.setdefault("n", sequence.shape[1])
    if "n" not in adv:
        raise ValueError("config missing field 'adversary.n'")
    try:
        adversary = AdversarySpec(kind=adv_kind, n=int(adv["n"]), horizon=horizon,
                                  sequence=sequence, seed=adv.get("seed"))
    except ValueError as exc:
        raise ValueError(f"config field 'adversary': {exc}") from exc

    lrn = dict(doc["learner"])
    if lrn.get("kind") not in KINDS:
        raise ValueError(f"config field 'learner.kind' must be one of {KINDS}")
    try:
        learner = LearnerConfig(kind=lrn["kind"], alpha=float(lrn.get("alpha", 0.5)),
                                num_strategies=adversary.n)
    except ValueError as exc:
        raise ValueError(f"config field 'learner.alpha': {exc}") from exc
    return ExperimentConfig(learner=learner, adversary=adversary, horizon=horizon,
                            replications=replications, master_seed=master_seed)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_trace_csv(path, summary: RunSummary) -> None:
    """CSV columns t, mean_regret, mean_avg_regret at round-trip precision."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t,mean_regret,mean_avg_regret\n")
        for t, (mr, mar) in enumerate(
                zip(summary.mean_regret_curve, summary.mean_avg_regret_curve), start=1):
            fh.write(f"{t},{_fmt(mr)},{_fmt(mar)}\n")


def read_trace_csv(path) -> Tuple[np.ndarray, np.ndarray]:
    """(mean_regret_curve, mean_avg_regret_curve) back from a trace file."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "t,mean_regret,mean_avg_regret":
            raise ValueError(f"unexpected trace header {header!r}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    mean = np.array([float(r[1]) for r in rows])
    avg = np.array([float(r[2]) for r in rows])
    return mean, avg


def write_summary(path, summary: RunSummary, config: ExperimentConfig) -> None:
    """Structured-text summary embedding the fully resolved configuration."""
    import json

    doc = {
        "mean_regret": summary.mean_regret,
        "std_error": summary.std_error,
        "ci95": list(summary.ci95),
        "bound_value": summary.bound_value,
        "replications": summary.replications,
        "config": {
            "learner": {"kind": config.learner.kind, "alpha": config.learner.alpha},
            "adversary": {"kind": config.adversary.kind, "n": config.adversary.n,
                          "seed": config.adversary.seed},
            "horizon": config.horizon,
            "replications": config.replications,
            "seed": config.master_seed,
        },
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
