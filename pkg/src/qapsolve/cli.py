"""Command-line front end.

Subcommands: solve one instance, bench a suite with the 8-repetition
protocol, sweep a tuning parameter, verify small instances against the
exhaustive oracle.  Exit codes: 0 success, 1 I/O or data error, 2 usage.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from pathlib import Path

from . import tuner
from .backend import backend_name
from .core import exhaustive_solve, EXHAUSTIVE_MAX_N
from .errors import QapError
from .instance import (
    Instance,
    iter_suite,
    load_best_known,
    parse_instance,
    random_instance,
    write_solution,
)
from .multistart import SearchConfig, run_multistart
from .report import accuracy, format_accuracy
from .rng import SplitMix64, derive_seed
from .tabu import TenureInterval, run_tabu, write_trail

PROG = "qapsolve"


class CliError(Exception):
    """Data or I/O failure; maps to exit code 1."""


def _tenure_arg(text: str) -> TenureInterval:
    try:
        low, high = text.split(":")
        return TenureInterval(int(low), int(high))
    except (ValueError, QapError) as exc:
        raise argparse.ArgumentTypeError(f"expected LO:HI with 1 <= LO <= HI: {exc}")


def _workers_arg(text: str) -> int | str:
    if text == "auto":
        return "auto"
    return int(text)


def _default_workers() -> int | str:
    env = os.environ.get("QAPSOLVE_WORKERS")
    return int(env) if env else "auto"


def _add_search_flags(parser: argparse.ArgumentParser, default_starts: int) -> None:
    parser.add_argument("--algo", choices=("2opt", "tabu"), required=True)
    parser.add_argument("--starts", type=int, default=default_starts, metavar="N")
    parser.add_argument("--iters", type=int, default=None, metavar="K")
    parser.add_argument("--seed", type=int, default=0, metavar="S")
    parser.add_argument("--workers", type=_workers_arg, default=None, metavar="W")
    parser.add_argument("--tenure", type=_tenure_arg, default=None, metavar="LO:HI")


def _config(args, n_starts=None, iterations=None, master_seed=None) -> SearchConfig:
    return SearchConfig(
        algorithm=args.algo,
        n_starts=n_starts if n_starts is not None else args.starts,
        iterations=iterations if iterations is not None else args.iters,
        tenure=args.tenure,
        master_seed=master_seed if master_seed is not None else args.seed,
        workers=args.workers if args.workers is not None else _default_workers(),
    )


def _load_instance(path: str) -> Instance:
    try:
        return parse_instance(Path(path))
    except OSError as exc:
        raise CliError(f"cannot read instance {path}: {exc}")
    except QapError as exc:
        raise CliError(f"bad instance {path}: {exc}")


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    if args.trail and args.algo != "tabu":
        print(f"{PROG}: --trail requires --algo tabu", file=sys.stderr)
        return 2
    cfg = _config(args)
    result = run_multistart(inst, cfg)
    if args.out:
        with open(args.out, "w") as sink:
            write_solution(result.best, sink, inst)
    if args.trail:
        rng = SplitMix64(derive_seed(cfg.master_seed, result.best_start_index))
        _, trail = run_tabu(inst, rng, cfg.resolved_iterations(inst.n), cfg.tenure)
        with open(args.trail, "w") as sink:
            write_trail(trail, sink)
    print(f"cost {result.best.cost}")
    print(f"time {result.wall_time:.3f}s")
    return 0


def _bench_rows(args, instances, registry):
    for inst in instances:
        per_run_costs = []
        t0 = time.perf_counter()
        for rep in range(args.reps):
            cfg = _config(args, master_seed=args.seed + rep)
            per_run_costs.append(run_multistart(inst, cfg).best.cost)
        elapsed = time.perf_counter() - t0
        best_cost = min(per_run_costs)
        best_known = registry.get(inst.name)
        acc = format_accuracy(accuracy(best_cost, best_known)) if best_known else "no-best-known"
        yield [inst.name, args.algo, acc, best_cost, best_known or "", f"{elapsed:.3f}"]


def cmd_bench(args) -> int:
    try:
        paths = list(iter_suite(Path(args.suite)))
    except OSError as exc:
        raise CliError(f"cannot read suite {args.suite}: {exc}")
    instances = [_load_instance(str(p)) for p in paths]
    try:
        registry = load_best_known(Path(args.best_known))
    except OSError as exc:
        raise CliError(f"cannot read best-known registry {args.best_known}: {exc}")
    sink = open(args.out, "w") if args.out else sys.stdout
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(["problem", "algorithm", "accuracy", "best_cost", "best_known", "time_s"])
        for row in _bench_rows(args, instances, registry):
            writer.writerow(row)
    finally:
        if args.out:
            sink.close()
    return 0


def cmd_sweep(args) -> int:
    inst = _load_instance(args.instance)
    try:
        values = [int(v) for v in args.values.split(",")]
        plan = tuner.make_sweep(args.axis, values, _config(args))
    except (ValueError, QapError) as exc:
        print(f"{PROG}: invalid sweep: {exc}", file=sys.stderr)
        return 2
    registry = None
    if args.best_known:
        registry = load_best_known(Path(args.best_known))
    best_known = registry.get(inst.name) if registry else None

    sink = open(args.out, "w") if args.out else sys.stdout
    try:
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(["axis_value", "rep", "accuracy", "best_cost", "wall_time"])
        for value, rep, seed in tuner.expand(plan, args.reps):
            t0 = time.perf_counter()
            if args.axis == "neighborhoods":
                cfg = _config(args, iterations=value, master_seed=seed)
                best_cost = run_multistart(inst, cfg).best.cost
            elif args.axis == "instances":
                cfg = _config(args, n_starts=value, master_seed=seed)
                best_cost = run_multistart(inst, cfg).best.cost
            else:  # seeds: minimum over `value` distinct master seeds
                costs = []
                for idx in range(value):
                    cfg = _config(args, master_seed=seed + 7919 * idx)
                    costs.append(run_multistart(inst, cfg).best.cost)
                best_cost = min(costs)
            elapsed = time.perf_counter() - t0
            acc = format_accuracy(accuracy(best_cost, best_known)) if best_known else ""
            writer.writerow([value, rep, acc, best_cost, f"{elapsed:.3f}"])
    finally:
        if args.out:
            sink.close()
    return 0


def cmd_verify(args) -> int:
    instances: list[Instance] = []
    if args.instance:
        inst = _load_instance(args.instance)
        if inst.n > EXHAUSTIVE_MAX_N:
            print(
                f"{PROG}: exhaustive oracle refuses n={inst.n} > {EXHAUSTIVE_MAX_N}",
                file=sys.stderr,
            )
            return 2
        instances.append(inst)
    else:
        if args.n > EXHAUSTIVE_MAX_N:
            print(
                f"{PROG}: exhaustive oracle refuses n={args.n} > {EXHAUSTIVE_MAX_N}",
                file=sys.stderr,
            )
            return 2
        for idx in range(args.random):
            rng = SplitMix64(derive_seed(args.seed, idx))
            instances.append(random_instance(args.n, rng, name=f"rand{args.n}-{idx}"))

    matches = 0
    for inst in instances:
        _, optimum = exhaustive_solve(inst)
        cfg = _config(args)
        found = run_multistart(inst, cfg).best.cost
        if found == optimum:
            matches += 1
    rate = matches / len(instances)
    print(f"match rate {rate:.2f} ({matches}/{len(instances)})")
    return 0 if rate >= args.min_match_rate else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Multi-start 2opt and tabu-search heuristics for the QAP "
        f"(kernel backend: {backend_name()})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a single instance")
    p_solve.add_argument("--instance", required=True, metavar="PATH")
    _add_search_flags(p_solve, default_starts=256)
    p_solve.add_argument("--out", metavar="PATH")
    p_solve.add_argument("--trail", metavar="PATH")
    p_solve.set_defaults(func=cmd_solve)

    p_bench = sub.add_parser("bench", help="run a benchmark suite")
    p_bench.add_argument("--suite", required=True, metavar="FILE")
    p_bench.add_argument("--best-known", required=True, metavar="CSV")
    _add_search_flags(p_bench, default_starts=1024)
    p_bench.add_argument("--reps", type=int, default=8, metavar="R")
    p_bench.add_argument("--out", metavar="CSV")
    p_bench.set_defaults(func=cmd_bench)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    p_sweep.add_argument("--instance", required=True, metavar="PATH")
    p_sweep.add_argument("--axis", choices=tuner.SWEEP_AXES, required=True)
    p_sweep.add_argument("--values", required=True, metavar="CSVLIST")
    _add_search_flags(p_sweep, default_starts=256)
    p_sweep.add_argument("--reps", type=int, default=8, metavar="R")
    p_sweep.add_argument("--best-known", metavar="CSV")
    p_sweep.add_argument("--out", metavar="CSV")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="compare against the exhaustive oracle")
    group = p_verify.add_mutually_exclusive_group(required=True)
    group.add_argument("--instance", metavar="PATH")
    group.add_argument("--random", type=int, metavar="COUNT")
    p_verify.add_argument("--n", type=int, default=6, metavar="SIZE")
    _add_search_flags(p_verify, default_starts=32)
    p_verify.add_argument("--min-match-rate", type=float, default=0.9)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"{PROG}: {exc}", file=sys.stderr)
        return 1
    except QapError as exc:
        print(f"{PROG}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
