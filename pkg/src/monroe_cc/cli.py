"""Command-line harness: ``monroe-cc {generate,solve,benchmark,bounds,emit-ilp}``.

Every subcommand also takes ``--config FILE`` with ``key=value`` lines whose
keys are option names (``with-opt`` or ``with_opt``). Explicit flags win
over the file, the file wins over built-in defaults.

Exit status is 0 on success, 2 on a usage error and 1 when the command
itself fails (I/O, malformed profile, exceeded oracle budget).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np

from . import bounds, cc, monroe
from .core import (ElectionRule, Metric, PreferenceProfile, ScoringFunction, SolutionReport,
                   evaluate)
from .exact import DEFAULT_BUDGET, BudgetExceededError, brute_force_winners, emit_ilp
from .preflib import read_profile, write_profile
from .profiles import MODELS, GeneratorConfig, generate, truncate_profile

SCHEMA_VERSION = 1

ALGORITHMS = {
    "monroe": ("a", "b", "c", "gm", "r", "ar", "exact"),
    "cc": ("c", "gm", "p", "r", "exact"),
}


class UsageError(Exception):
    pass


def rule_for(rule: str, K: int) -> ElectionRule:
    return ElectionRule.monroe(K) if rule == "monroe" else ElectionRule.chamberlin_courant(K)


def run_algorithm(profile: PreferenceProfile, psf: ScoringFunction, rule: str, algorithm: str,
                  K: int, *, d: int = 15, samples: int = 100, seed: int = 0,
                  epsilon: Optional[float] = None, lam: float = 0.9,
                  delta: Optional[float] = None, x: Optional[int] = None,
                  budget: int = DEFAULT_BUDGET) -> SolutionReport:
    """Dispatch ``rule``/``algorithm`` to the library; raises :class:`UsageError` on a bad pairing."""
    if algorithm not in ALGORITHMS.get(rule, ()):
        raise UsageError(f"algorithm {algorithm!r} is not available for rule {rule!r}; "
                         f"choose from {', '.join(ALGORITHMS.get(rule, ()))}")
    if algorithm == "exact":
        rep = brute_force_winners(profile, psf, rule_for(rule, K), budget)
        return rep
    if rule == "monroe":
        if algorithm == "a":
            return monroe.algo_a(profile, psf, K, budget=budget)
        if algorithm == "b":
            return monroe.algo_b(profile, psf, K, budget=budget)
        if algorithm == "c":
            return monroe.algo_c(profile, psf, K, d=d, budget=budget)
        if algorithm == "gm":
            return monroe.algo_gm(profile, psf, K)
        if algorithm == "r":
            return monroe.algo_r(profile, psf, K, samples=samples, seed=seed)
        return monroe.algo_ar(profile, psf, K, epsilon=0.1 if epsilon is None else epsilon,
                              lam=lam, seed=seed, budget=budget)
    if algorithm == "c":
        return cc.cc_algo_c(profile, psf, K, d=d)
    if algorithm == "gm":
        return cc.cc_algo_gm(profile, psf, K)
    if algorithm == "r":
        return cc.cc_algo_r(profile, psf, K, samples=samples, seed=seed)
    if delta is not None:
        return cc.cc_algo_p_delta(profile, psf, K, delta)
    if epsilon is not None:
        return cc.cc_ptas(profile, psf, K, epsilon, budget=budget)
    return cc.cc_algo_p(profile, psf, K, x_override=x)


def _scoring(profile: PreferenceProfile, P: Optional[int]) -> ScoringFunction:
    m = profile.num_alternatives
    return ScoringFunction.borda_dec(m) if P is None else ScoringFunction.truncated(m, P)


# --- subcommands -----------------------------------------------------------

def cmd_generate(args) -> int:
    config = GeneratorConfig(model=args.model, n=args.n, m=args.m, seed=args.seed,
                             urn_alpha_ratio=args.urn_ratio,
                             urn_extra_copies=args.urn_extra_copies,
                             mixture_components=args.components)
    profile = generate(config)
    if args.truncate is not None:
        profile = truncate_profile(profile, args.truncate)
    title = f"{args.model} n={args.n} m={args.m} seed={args.seed}"
    if args.out in (None, "-"):
        write_profile(profile, sys.stdout, title)
    else:
        write_profile(profile, args.out, title)
    return 0


def cmd_solve(args) -> int:
    profile = read_profile(args.profile)
    psf = _scoring(profile, args.P)
    rep = run_algorithm(profile, psf, args.rule, args.algorithm, args.K, d=args.d,
                        samples=args.samples, seed=args.seed, epsilon=args.epsilon,
                        lam=args.lam, delta=args.delta, x=args.x, budget=args.budget)
    if args.with_opt:
        opt = brute_force_winners(profile, psf, rule_for(args.rule, args.K), args.budget).l1
        rep = rep.with_opt(opt)
    out = {"schema_version": SCHEMA_VERSION, "rule": args.rule, "K": args.K,
           "n": profile.num_voters, "m": profile.num_alternatives}
    out.update(rep.to_dict())
    json.dump(out, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def cmd_bounds(args) -> int:
    params = {k: getattr(args, k) for k in ("m", "K", "P", "Q", "epsilon", "lam", "delta")}
    report = bounds.compute_bound(args.name, **params)
    for key, value in report.params.items():
        print(f"{key}={value!r}")
    if report.is_ratio and report.value != report.raw:
        print(f"raw={report.raw!r}")
    print(f"{report.name}={report.value!r}")
    return 0


def cmd_emit_ilp(args) -> int:
    profile = read_profile(args.profile)
    psf = _scoring(profile, args.P)
    rule = rule_for(args.rule, args.K)
    if args.out in (None, "-"):
        emit_ilp(profile, psf, rule, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            emit_ilp(profile, psf, rule, fh)
    return 0


CSV_FIELDS = ["row", "rule", "algorithm", "rep", "instance_seed", "model", "n", "m", "K", "P",
              "d", "samples", "l1", "l_inf", "l_min", "ideal", "opt", "ratio_to_opt",
              "ratio_to_ideal", "count", "mean_ratio_to_opt", "std_ratio_to_opt",
              "mean_ratio_to_ideal", "std_ratio_to_ideal", "wall_time"]


def instance_seed(master: int, rep: int) -> int:
    """Per-repetition seed, independent of scheduling order."""
    return int(np.random.SeedSequence([master, rep]).generate_state(1)[0])


def benchmark_rep(job: dict) -> list[dict]:
    """All rows for one repetition; the unit of work for the process pool."""
    seed = instance_seed(job["seed"], job["rep"])
    config = GeneratorConfig(model=job["model"], n=job["n"], m=job["m"], seed=seed,
                             urn_alpha_ratio=job["urn_ratio"])
    full = generate(config)
    m, K = job["m"], job["K"]
    psf = ScoringFunction.borda_dec(m)
    opts: dict[str, Optional[int]] = {}
    if job["with_opt"]:
        for rule in sorted({r for r, _ in job["algorithms"]}):
            opts[rule] = brute_force_winners(full, psf, rule_for(rule, K), job["budget"]).l1
    sweep = range(1, m + 1) if job["sweep"] else [None]
    rows = []
    for P in sweep:
        seen = full if P is None else truncate_profile(full, P)
        for rule, alg in job["algorithms"]:
            rep = run_algorithm(seen, psf, rule, alg, K, d=job["d"], samples=job["samples"],
                                seed=seed, budget=job["budget"])
            # quality is always judged against the complete ballots
            l1 = evaluate(full, psf, rep.assignment, Metric.L1)
            ideal = full.num_voters * psf.top
            opt = opts.get(rule)
            rows.append({
                "row": "instance", "rule": rule, "algorithm": alg, "rep": job["rep"],
                "instance_seed": seed, "model": job["model"], "n": job["n"], "m": m, "K": K,
                "P": m if P is None else P, "d": job["d"], "samples": job["samples"],
                "l1": l1, "l_inf": evaluate(full, psf, rep.assignment, Metric.LINF),
                "l_min": evaluate(full, psf, rep.assignment, Metric.LMIN), "ideal": ideal,
                "opt": opt, "ratio_to_opt": None if opt is None else l1 / opt,
                "ratio_to_ideal": l1 / ideal, "wall_time": rep.wall_time,
            })
    return rows


def _stats(values: list[float]) -> tuple[Optional[float], Optional[float]]:
    if not values:
        return None, None
    arr = np.asarray(values, dtype=float)
    return float(arr.mean()), float(arr.std(ddof=1)) if len(arr) > 1 else 0.0


def summarize(rows: list[dict]) -> list[dict]:
    """One summary row per (rule, algorithm, P), in first-appearance order."""
    groups: dict[tuple, list[dict]] = {}
    for r in rows:
        groups.setdefault((r["rule"], r["algorithm"], r["P"]), []).append(r)
    out = []
    for (rule, alg, P), members in groups.items():
        first = members[0]
        mo, so = _stats([r["ratio_to_opt"] for r in members if r["ratio_to_opt"] is not None])
        mi, si = _stats([r["ratio_to_ideal"] for r in members])
        out.append({"row": "summary", "rule": rule, "algorithm": alg, "model": first["model"],
                    "n": first["n"], "m": first["m"], "K": first["K"], "P": P,
                    "d": first["d"], "samples": first["samples"], "count": len(members),
                    "mean_ratio_to_opt": mo, "std_ratio_to_opt": so,
                    "mean_ratio_to_ideal": mi, "std_ratio_to_ideal": si})
    return out


def _parse_algorithms(text: str) -> list[tuple[str, str]]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        rule, sep, alg = item.partition(":")
        if not sep or alg not in ALGORITHMS.get(rule, ()):
            raise UsageError(f"bad algorithm spec {item!r}; expected rule:algorithm with rule in "
                             f"{sorted(ALGORITHMS)}, e.g. monroe:a,cc:p")
        out.append((rule, alg))
    if not out:
        raise UsageError("no algorithms given")
    return out


def run_benchmark(*, model: str, n: int, m: int, K: int, algorithms: Sequence[tuple[str, str]],
                  reps: int, seed: int = 0, with_opt: bool = False, sweep: bool = False,
                  d: int = 15, samples: int = 100, urn_ratio: float = 0.05,
                  budget: int = DEFAULT_BUDGET, workers: int = 1) -> list[dict]:
    """Instance rows followed by summary rows, ready for :class:`csv.DictWriter`."""
    if reps < 1:
        raise ValueError("repetitions must be at least 1")
    jobs = [dict(model=model, n=n, m=m, K=K, algorithms=list(algorithms), rep=r, seed=seed,
                 with_opt=with_opt, sweep=sweep, d=d, samples=samples, urn_ratio=urn_ratio,
                 budget=budget) for r in range(reps)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(benchmark_rep, jobs))
    else:
        chunks = [benchmark_rep(j) for j in jobs]
    rows = [r for chunk in chunks for r in chunk]
    return rows + summarize(rows)


def cmd_benchmark(args) -> int:
    algorithms = _parse_algorithms(args.algorithms)
    if (args.K is None) == (args.k_ratio is None):
        raise UsageError("give exactly one of --K and --k-ratio")
    K = args.K if args.K is not None else max(1, round(args.k_ratio * args.m))
    if args.reps < 1:
        raise UsageError("--reps must be at least 1")
    rows = run_benchmark(model=args.model, n=args.n, m=args.m, K=K, algorithms=algorithms,
                         reps=args.reps, seed=args.seed, with_opt=args.with_opt,
                         sweep=args.truncation_sweep, d=args.d, samples=args.samples,
                         urn_ratio=args.urn_ratio, budget=args.budget, workers=args.workers)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    for row in rows:
        if row["row"] == "summary":
            extra = "" if row["mean_ratio_to_opt"] is None else \
                f" C/C_opt={row['mean_ratio_to_opt']:.4f}±{row['std_ratio_to_opt']:.4f}"
            print(f"{row['rule']}:{row['algorithm']} P={row['P']}{extra} "
                  f"C/C_ideal={row['mean_ratio_to_ideal']:.4f}±{row['std_ratio_to_ideal']:.4f}",
                  file=sys.stderr)
    return 0


# --- argument parsing ------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _unit(text: str) -> float:
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"expected a value in (0, 1), got {text}")
    return v


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file supplying defaults for this command")


def _algo_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=_positive, default=15, help="beam width for algorithm c")
    p.add_argument("--samples", type=_positive, default=100, help="committees drawn by r")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                   help="largest number of committees brute force may enumerate")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monroe-cc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a synthetic profile in PrefLib format")
    _common(g)
    g.add_argument("--model", choices=MODELS, default="ic")
    g.add_argument("--n", type=_positive, default=100)
    g.add_argument("--m", type=_positive, default=10)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--urn-ratio", type=float, default=0.05, help="a / m! for the urn model")
    g.add_argument("--urn-extra-copies", type=int, default=0)
    g.add_argument("--components", type=_positive, default=5, help="Mallows mixture size")
    g.add_argument("--truncate", type=_positive, help="keep only the top P positions")
    g.add_argument("--out", help="output path (default: standard output)")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="run one algorithm and print a JSON report")
    _common(s)
    s.add_argument("profile")
    s.add_argument("--rule", choices=sorted(ALGORITHMS), required=True)
    s.add_argument("--algorithm", choices=sorted({a for v in ALGORITHMS.values() for a in v}),
                   required=True)
    s.add_argument("--K", type=_positive, required=True)
    _algo_params(s)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--epsilon", type=_unit,
                   help="monroe ar accuracy; with cc p selects the covering/exact composition")
    s.add_argument("--lam", type=_unit, default=0.9, help="success probability for monroe ar")
    s.add_argument("--delta", type=_unit, help="cc p: delta-egalitarian window")
    s.add_argument("--x", type=_positive, help="cc p: override the covering window")
    s.add_argument("--P", type=_positive, help="score with truncated Borda (top P positions)")
    s.add_argument("--with-opt", action="store_true", help="also report C/C_opt")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("benchmark", help="repeat experiments and write a CSV")
    _common(b)
    b.add_argument("--model", choices=MODELS, default="ic")
    b.add_argument("--n", type=_positive, default=100)
    b.add_argument("--m", type=_positive, default=10)
    b.add_argument("--K", type=_positive)
    b.add_argument("--k-ratio", type=_unit, help="committee size as a fraction of m")
    b.add_argument("--algorithms", default="monroe:a",
                   help="comma-separated rule:algorithm list, e.g. monroe:a,cc:p")
    b.add_argument("--reps", type=int, default=500)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--urn-ratio", type=float, default=0.05)
    _algo_params(b)
    b.add_argument("--with-opt", action="store_true")
    b.add_argument("--truncation-sweep", action="store_true",
                   help="run on ballots truncated to P = 1..m")
    b.add_argument("--workers", type=_positive, default=1)
    b.add_argument("--out", required=True, help="CSV path")
    b.set_defaults(func=cmd_benchmark)

    bd = sub.add_parser("bounds", help="evaluate an approximation guarantee")
    _common(bd)
    bd.add_argument("name", choices=sorted(bounds.REGISTRY) + ["crossover"])
    bd.add_argument("--m", type=_positive)
    bd.add_argument("--K", type=_positive)
    bd.add_argument("--P", type=_positive)
    bd.add_argument("--Q", type=_positive)
    bd.add_argument("--epsilon", type=_unit)
    bd.add_argument("--lam", type=_unit)
    bd.add_argument("--delta", type=_unit)
    bd.set_defaults(func=cmd_bounds)

    e = sub.add_parser("emit-ilp", help="write the winner-determination ILP (CPLEX LP format)")
    _common(e)
    e.add_argument("profile")
    e.add_argument("--rule", choices=sorted(ALGORITHMS), required=True)
    e.add_argument("--K", type=_positive, required=True)
    e.add_argument("--P", type=_positive)
    e.add_argument("--out")
    e.set_defaults(func=cmd_emit_ilp)
    return parser


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            out[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return out


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    subparsers = parser._subparsers._group_actions[0].choices
    command = next((tok for tok in argv if tok in subparsers), None)
    if known.config and command is not None:
        sub = subparsers[command]
        actions = {a.dest: a for a in sub._actions}
        defaults = {}
        for key, text in read_config(known.config).items():
            action = actions.get(key)
            if action is None or key in ("config", "help"):
                raise UsageError(f"unknown config key {key!r} for {command}")
            if isinstance(action, argparse._StoreTrueAction):
                defaults[key] = text.lower() in ("1", "true", "yes", "on")
                continue
            try:
                value = action.type(text) if action.type else text
            except (argparse.ArgumentTypeError, ValueError) as exc:
                raise UsageError(f"config key {key!r}: {exc}") from None
            if action.choices is not None and value not in action.choices:
                raise UsageError(f"config key {key!r}: {value!r} not in {sorted(action.choices)}")
            defaults[key] = value
            action.required = False  # the file supplies it
        sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _apply_config(parser, argv)
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"monroe-cc: error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceededError, OSError, ValueError, RuntimeError) as exc:
        print(f"monroe-cc: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
