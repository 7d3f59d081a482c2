"""Command-line front end.

Subcommands: simulate (experiment from a config file), bounds (table of
closed-form bounds), counterexample (one-command reproductions of the two
negative results), distribution (exact action-distribution oracle on a
payoff file), verify (invariant suite), plot-data (plottable two-column
export of a trace).

Exit codes: 0 success, 2 validation/parse error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import bounds
from .adversaries import AdversarySpec
from .game import load_payoff_sequence
from .harness import (ExperimentConfig, load_experiment_config, monte_carlo_regret,
                      read_trace_csv, write_summary, write_trace_csv)
from .learners import LearnerConfig, sfp_action_distribution
from .verification import run_checks

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3


class ValidationError(Exception):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def cmd_simulate(args) -> int:
    try:
        config = load_experiment_config(args.config, seed_override=args.seed)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError, KeyError) as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.reps is not None:
        config = ExperimentConfig(config.learner, config.adversary, config.horizon,
                                  args.reps, config.master_seed)
    summary = monte_carlo_regret(config)
    try:
        os.makedirs(args.out, exist_ok=True)
        write_trace_csv(os.path.join(args.out, "trace.csv"), summary)
        write_summary(os.path.join(args.out, "summary.json"), summary, config)
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"seed = {config.master_seed}")
    print(f"mean_regret = {_fmt(summary.mean_regret)} +- {_fmt(summary.std_error)} "
          f"({summary.replications} replications)")
    if summary.bound_value is not None:
        print(f"bound_value = {_fmt(summary.bound_value)}")
    print(f"wrote {args.out}/trace.csv and {args.out}/summary.json")
    return EXIT_OK


def cmd_bounds(args) -> int:
    try:
        rows = [
            ("c_lo", bounds.c_lo()),
            ("q_alpha", bounds.q_alpha(args.alpha)),
            ("scale_count", bounds.scale_count(args.horizon)),
            ("oblivious_regret_bound", bounds.oblivious_regret_bound(args.n, args.horizon)),
            ("high_prob_regret_bound",
             bounds.high_prob_regret_bound(args.n, args.horizon, args.delta)),
        ]
        t_floor = max(2.0 / (1.0 - args.alpha), 2.0 / args.alpha)
        if args.horizon > t_floor:
            rows.append(("asymmetric_regret_bound",
                         bounds.asymmetric_regret_bound(args.n, args.horizon, args.alpha)))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    header = f"# n={args.n} horizon={args.horizon} alpha={args.alpha} delta={args.delta}"
    if args.format == "csv":
        print("quantity,value")
        for name, value in rows:
            print(f"{name},{_fmt(value)}")
    else:
        print(header)
        width = max(len(name) for name, _ in rows)
        for name, value in rows:
            print(f"{name:<{width}}  {_fmt(value)}")
    return EXIT_OK


def _harmonic(n: int) -> float:
    return sum(1.0 / m for m in range(1, n + 1))


def cmd_counterexample(args) -> int:
    try:
        if args.name == "tie-exploiter":
            n = args.n if args.n is not None else 2
            if n != 2:
                raise ValidationError("tie-exploiter requires n = 2")
            horizon = args.horizon if args.horizon is not None else 200
            spec = AdversarySpec("tie_exploiter", n, horizon)
            learner = LearnerConfig("sfp-single", 0.5, n)
            reference = 0.225 * horizon - 2.0
            ref_label = "0.225*T - 2"
        else:  # leader-set
            n = args.n if args.n is not None else 32
            horizon = args.horizon if args.horizon is not None else 2 * n
            if horizon != 2 * n:
                raise ValidationError("leader-set requires horizon = 2 * n")
            spec = AdversarySpec("leader_set", n, horizon)
            learner = LearnerConfig("sfp-fresh", 0.5, n)
            reference = n / 2.0 - _harmonic(n)
            ref_label = "N/2 - H_N"
        config = ExperimentConfig(learner, spec, horizon, args.reps, args.seed)
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    summary = monte_carlo_regret(config)
    print(f"seed = {args.seed}")
    print(f"{args.name}: n={n} horizon={horizon} replications={args.reps} "
          f"learner={learner.kind}")
    print(f"mean_regret = {_fmt(summary.mean_regret)} +- {_fmt(summary.std_error)}")
    print(f"lower-bound reference {ref_label} = {_fmt(reference)}")
    return EXIT_OK


def cmd_distribution(args) -> int:
    try:
        payoffs = load_payoff_sequence(args.payoff_file)
    except OSError as exc:
        print(f"error: cannot read payoff file: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: invalid payoff file: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        dist = sfp_action_distribution(payoffs, args.alpha)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print("strategy,probability")
    for k, p in enumerate(dist, start=1):
        print(f"{k},{_fmt(p)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_checks(args.filter, seed=args.seed)
    if not results:
        print(f"error: no check matches filter {args.filter!r}", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"seed = {args.seed}")
    failures = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {name}: {detail}")
        failures += not ok
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return EXIT_OK if failures == 0 else 1


def cmd_plot_data(args) -> int:
    try:
        mean_curve, avg_curve = read_trace_csv(args.trace)
    except OSError as exc:
        print(f"error: cannot read trace: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: invalid trace: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    bound = None
    if args.overlay:
        summary_path = args.summary or os.path.join(os.path.dirname(args.trace), "summary.json")
        try:
            import json
            with open(summary_path, "r", encoding="utf-8") as fh:
                bound = json.load(fh).get("bound_value")
        except OSError:
            bound = None
        if bound is None:
            print("warning: no bound attached to this run; overlay column omitted",
                  file=sys.stderr)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            if bound is not None:
                fh.write("# t mean_avg_regret bound_over_t\n")
                for t, v in enumerate(avg_curve, start=1):
                    fh.write(f"{t} {_fmt(v)} {_fmt(bound / t)}\n")
            else:
                fh.write("# t mean_avg_regret\n")
                for t, v in enumerate(avg_curve, start=1):
                    fh.write(f"{t} {_fmt(v)}\n")
    except OSError as exc:
        print(f"error: cannot write plot data: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.out} ({avg_curve.size} rows)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regretlab",
        description="No-regret learning lab: sampled fictitious play, adversaries, "
                    "bounds, and exact enumeration oracles.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run an experiment from a config file")
    p.add_argument("--config", required=True, help="TOML experiment config")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--reps", type=int, default=None, help="override replication count")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="print the closed-form bound table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("counterexample", help="reproduce a negative result")
    p.add_argument("name", choices=("tie-exploiter", "leader-set"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("distribution", help="exact action distribution on a payoff file")
    p.add_argument("--payoff-file", required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--filter", default=None, help="substring filter on check names")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot-data", help="export a trace as plottable columns")
    p.add_argument("--trace", required=True, help="trace.csv from simulate")
    p.add_argument("--out", required=True)
    p.add_argument("--overlay", action="store_true",
                   help="add a bound_value / t overlay column when a bound is attached")
    p.add_argument("--summary", default=None, help="summary.json carrying the bound")
    p.set_defaults(func=cmd_plot_data)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
