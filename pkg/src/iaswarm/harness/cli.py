"""Command-line entry point: ``iaswarm {run,table,oracle,check}``.

Exit codes: 0 success, 1 configuration/usage error, 2 I/O error, 3 failed
oracle verification.
"""
import argparse
import logging
import sys
import warnings

import numpy as np

from ..mimo import (check_feasibility, count_equations, count_variables,
                    generate_channels, leakage, make_scenario, parse_scenario,
                    random_beamformers, rank_check)
from .experiment import ALGORITHMS, ExperimentConfig, SummaryTable, run_experiment
from .io import (emit_summary, ensure_writable, format_summary, load_records,
                 read_config, table_from_records)
from .oracle import ConditioningError, closed_form_3user

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _add_scenario_flags(p):
    p.add_argument("--scenario", action="append",
                   help="MxNxdxK, e.g. 5x5x2x3 (repeatable)")
    p.add_argument("--K", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--d", type=int)


def build_parser():
    parser = _Parser(prog="iaswarm", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    run = sub.add_parser("run", help="run seeded experiments")
    run.add_argument("--config", help="key = value config file")
    _add_scenario_flags(run)
    run.add_argument("--alg", action="append",
                     help=f"one of {', '.join(ALGORITHMS)}; repeatable or comma-separated")
    run.add_argument("--runs", type=int)
    run.add_argument("--seed", type=int, help="master seed")
    run.add_argument("--budget", type=int, help="iterations (PSO) or cycles")
    run.add_argument("--omega", type=float)
    run.add_argument("--c", type=float, help="random omega = c * U[0,1]")
    run.add_argument("--swarm-size", type=int)
    run.add_argument("--SN", type=int)
    run.add_argument("--limit", type=int)
    run.add_argument("--objective-mode", choices=("raw", "normalized"))
    run.add_argument("--fixed-channel", action="store_true", default=None)
    run.add_argument("--outdir")
    run.add_argument("--workers", type=int)

    table = sub.add_parser("table", help="summarize existing run records")
    table.add_argument("paths", nargs="+", help="record files or directories")
    table.add_argument("--out", help="base path for summary .txt/.csv")

    oracle = sub.add_parser("oracle", help="closed-form (2x2,1)^3 verification")
    oracle.add_argument("--instances", type=int, default=20)
    oracle.add_argument("--seed", type=int, default=0)

    check = sub.add_parser("check", help="feasibility and dimension report")
    _add_scenario_flags(check)
    return parser


_CONFIG_KEYS = {
    "alg": str, "omega": float, "c": float, "swarm_size": int, "SN": int,
    "limit": int, "budget": int, "runs": int, "seed": int, "objective_mode": str,
    "fixed_channel": _bool, "outdir": str, "workers": int,
}


def _scenarios(args, conf):
    found = [parse_scenario(s) for s in (args.scenario or [])]
    dims = {}
    for key in ("K", "M", "N", "d"):
        val = getattr(args, key, None)
        if val is None:
            val = conf.get(f"scenario.{key}", conf.get(key))
        if val is not None:
            dims[key] = int(val)
    if dims:
        missing = {"K", "M", "N", "d"} - dims.keys()
        if missing:
            raise ValueError(f"scenario is missing {', '.join(sorted(missing))}")
        found.append(make_scenario(dims["K"], dims["M"], dims["N"], dims["d"]))
    if not found:
        raise ValueError("no scenario given (use --scenario or --K/--M/--N/--d)")
    return found


def _run_settings(args):
    conf = read_config(args.config) if args.config else {}
    unknown = set(conf) - set(_CONFIG_KEYS) - {
        f"scenario.{k}" for k in "KMNd"} - set("KMNd")
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    settings = {k: _CONFIG_KEYS[k](v) for k, v in conf.items() if k in _CONFIG_KEYS}
    for key in _CONFIG_KEYS:
        val = getattr(args, key, None)
        if key == "alg":
            val = ",".join(args.alg) if args.alg else None
        if val is not None:
            settings[key] = val
    return _scenarios(args, conf), settings


def cmd_run(args, out):
    scenarios, s = _run_settings(args)
    algs = [a.strip().lower() for a in s.pop("alg", "cabc").split(",") if a.strip()]
    outdir = s.pop("outdir", None)
    if outdir is not None:
        ensure_writable(outdir)
    common = dict(runs=s.get("runs", 10), master_seed=s.get("seed", 0),
                  omega=s.get("omega"), c=s.get("c"), swarm_size=s.get("swarm_size"),
                  SN=s.get("SN"), limit=s.get("limit"), budget=s.get("budget"),
                  objective_mode=s.get("objective_mode", "raw"),
                  fixed_channel=s.get("fixed_channel", False), outdir=outdir,
                  workers=s.get("workers", 1))
    configs = [ExperimentConfig(scenario=spec, algorithm=alg, **common)
               for spec in scenarios for alg in algs]
    table = SummaryTable()
    for cfg in configs:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            _, t = run_experiment(cfg)
        for w in caught:
            print(f"warning: {w.message}", file=out)
        table.extend(t)
    out.write(format_summary(table))
    if outdir is not None:
        txt, csv_path = emit_summary(table, f"{outdir}/summary")
        print(f"wrote {txt} and {csv_path}", file=out)
    return EXIT_OK


def cmd_table(args, out):
    records = load_records(args.paths)
    if not records:
        raise ValueError("no run records found")
    table = table_from_records(records)
    out.write(format_summary(table))
    if args.out:
        emit_summary(table, args.out)
    return EXIT_OK


def cmd_oracle(args, out):
    if args.instances < 1:
        raise ValueError("--instances must be >= 1")
    spec = make_scenario(3, 2, 2, 1)
    ok = True
    for k in range(args.instances):
        seed = args.seed + k
        H = generate_channels(spec, seed)
        ref = leakage(H, random_beamformers(spec, np.random.default_rng([seed, 1])))
        try:
            B = closed_form_3user(H)
        except ConditioningError as exc:
            print(f"seed {seed:4d}  {exc}  FAIL", file=out)
            ok = False
            continue
        il = leakage(H, B)
        rank_ok = rank_check(H, B).satisfied
        passed = rank_ok and il <= 1e-12 * ref
        ok &= passed
        print(f"seed {seed:4d}  closed-form IL {il:.3e}  random IL {ref:.3e}  "
              f"rank ok {rank_ok}  {'PASS' if passed else 'FAIL'}", file=out)
    print("oracle:", "PASS" if ok else "FAIL", file=out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_check(args, out):
    for spec in _scenarios(args, {}):
        nv, nreal = count_variables(spec)
        ne = count_equations(spec)
        feasible = check_feasibility(spec)
        print(f"{spec.label}: N_v={nv}, N_e={ne}, dimension={nreal}, "
              f"feasible={str(feasible).lower()}", file=out)
    return EXIT_OK


_COMMANDS = {"run": cmd_run, "table": cmd_table, "oracle": cmd_oracle, "check": cmd_check}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args, out)
    except OSError as exc:
        print(f"iaswarm: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"iaswarm: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
