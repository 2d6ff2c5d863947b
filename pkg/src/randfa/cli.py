"""``randfa`` command line.

Exit codes: 0 success, 2 invalid parameters, 3 DFA parse error, 4 no positive
alpha root. Without ``--seed``, the master seed comes from ``RANDFA_SEED``,
then 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import dfa_io
from .alpha import lambert_w_check, solve_alpha
from .errors import InvalidParameterError, RandfaError
from .experiment import ExperimentConfig, format_records, notices, run_experiment
from .minimize import state_complexity
from .process import run_chain
from .random_gen import sample_dfa, split_seed
from .reachability import dud_census, reach_from, small_threshold, spectrum_census
from .stats import OBSERVABLES, describe


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("RANDFA_SEED")
    if env is None or not env.strip():
        return 0
    try:
        return int(env, 0)
    except ValueError:
        raise InvalidParameterError(f"RANDFA_SEED is not an integer: {env!r}") from None


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w", encoding="ascii", newline="\n") as fp:
            fp.write(text + "\n")
    else:
        print(text)


def _dfa_from_args(args):
    if args.file:
        return dfa_io.read_file(args.file)
    if args.n is None or args.k is None:
        raise InvalidParameterError("give a DFA file or --n and --k to sample one")
    return sample_dfa(args.n, args.k, args.accept_prob, _seed(args))


def cmd_gen(args) -> int:
    d = sample_dfa(args.n, args.k, args.accept_prob, _seed(args))
    text = dfa_io.dumps(d)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_minimize(args) -> int:
    d = _dfa_from_args(args)
    report = state_complexity(d, method=args.method)
    out = {"n": d.n, "k": d.k, **report.summary()}
    if args.emit_dfa:
        out["dfa"] = dfa_io.dumps(report.minimal_dfa)
    _emit(out, args.out)
    return 0


def cmd_reach(args) -> int:
    d = _dfa_from_args(args)
    res = reach_from(d, d.start)
    census = spectrum_census(d, small_threshold(d.n, args.small_c))
    _emit(
        {
            "n": d.n,
            "k": d.k,
            "r": res.r,
            "visit_order": res.visit_order.tolist() if args.verbose else None,
            "small_threshold": census.threshold,
            "small": census.small_count,
        },
        args.out,
    )
    return 0


def cmd_duds(args) -> int:
    d = _dfa_from_args(args)
    census = dud_census(d)
    _emit(
        {"n": d.n, "k": d.k, "count": census.count, "duds": [list(p) for p in census.duds]},
        args.out,
    )
    return 0


def cmd_alpha(args) -> int:
    res = solve_alpha(args.k)
    _emit(
        {
            "k": res.k,
            "alpha": res.alpha,
            "residual": res.residual,
            "lambert_w": lambert_w_check(args.k),
        },
        args.out,
    )
    return 0


def cmd_chain(args) -> int:
    if args.trials < 1:
        raise InvalidParameterError("--trials must be >= 1")
    master = _seed(args)
    rows = []
    for i in range(args.trials):
        seed = split_seed(master, i)
        traj = run_chain(args.n, args.k, seed)
        rows.append((i, seed, traj.tau, traj.nu_tau))
    out = {
        "n": args.n,
        "k": args.k,
        "trials": args.trials,
        "tau": describe([r[2] for r in rows]),
        "nu_tau": describe([r[3] for r in rows]),
    }
    if args.k >= 2:
        out["alpha_n"] = solve_alpha(args.k).alpha * args.n
    if args.trials == 1:
        traj = run_chain(args.n, args.k, rows[0][1])
        out["trajectory"] = {"nu": traj.nu.tolist(), "omega": traj.omega.tolist()}
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="") as fp:
            fp.write("trial,seed,tau,nu_tau\n")
            fp.writelines(f"{i},{s},{t},{v}\n" for i, s, t, v in rows)
    _emit(out)
    return 0


def cmd_experiment(args) -> int:
    obs = tuple(o.strip() for o in args.observables.split(",") if o.strip())
    config = ExperimentConfig(
        n=args.n,
        k=args.k,
        trials=args.trials,
        master_seed=_seed(args),
        accept_prob=args.accept_prob,
        observables=obs,
        small_c=args.small_c,
        output_format=args.format,
        output_path=args.out,
        parallel=args.parallel,
    )
    records, summ = run_experiment(config)
    for note in notices(config):
        print(f"notice: {note}", file=sys.stderr)
    summary = {
        "n": config.n,
        "k": config.k,
        "trials": config.trials,
        "summaries": {name: s.as_dict() for name, s in summ.items()},
    }
    if args.out:
        _emit(summary)
    else:
        # stdout carries the records; keep it a single clean stream
        sys.stdout.write(format_records(records, args.format))
        print(json.dumps(summary, indent=2), file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="randfa", description="Random DFA laboratory.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, nk=True, required=True, file=False):
        if file:
            p.add_argument("file", nargs="?", help="DFA file; omit to sample one from --n/--k/--seed")
        if nk:
            p.add_argument("--n", type=int, required=required)
            p.add_argument("--k", type=int, required=required)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--accept-prob", type=float, default=0.5)
        p.add_argument("--out", default=None)

    p = sub.add_parser("gen", help="sample a DFA and write it")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("minimize", help="state complexity of a DFA")
    common(p, required=False, file=True)
    p.add_argument("--emit-dfa", action="store_true")
    p.add_argument("--method", choices=("hopcroft", "moore"), default="hopcroft")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("reach", help="accessibility spectrum and small-spectrum census")
    common(p, required=False, file=True)
    p.add_argument("--small-c", type=float, default=4.0)
    p.add_argument("--verbose", action="store_true", help="include the BFS visit order")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("duds", help="pairs of states with identical transition rows")
    common(p, required=False, file=True)
    p.set_defaults(func=cmd_duds)

    p = sub.add_parser("alpha", help="positive root of x = 1 - exp(-k x)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("chain", help="simulate the exploration chain")
    common(p)
    p.add_argument("--trials", type=int, default=1)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("experiment", help="Monte Carlo trials over random DFAs")
    common(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--observables", default="r,m,excess",
                   help=f"comma-separated subset of {','.join(OBSERVABLES)}")
    p.add_argument("--small-c", type=float, default=4.0)
    p.add_argument("--parallel", type=int, default=None, help="worker threads (default: all cores)")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except RandfaError as exc:
        print(f"randfa: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"randfa: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
