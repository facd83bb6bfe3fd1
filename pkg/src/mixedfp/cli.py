"""Command-line front end: load a JSON problem config, run the assumption
checks, the solver, or the sampled property suite.

Exit codes: 0 success, 1 check/property failure, 2 config error,
3 non-convergence.
"""

import argparse
import dataclasses
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import hammerstein as hs
from .contraction import builtin_log_triple, verify_contraction_sampled
from .engine import (
    IterationConfig,
    NonConvergenceError,
    check_mixed_monotone_sampled,
    solve,
    trace_csv,
)
from .funcspace import GridFunction, format_csv, sup_metric
from .order import cyclic_shift_upsilon, max_metric, product_leq

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_NO_CONVERGENCE = 3

DEFAULTS = {
    "problem": "paper-example",
    "T": 2.0,
    "alpha": 2.0,
    "m": 1,
    "eta": [1.0, 1.0],
    "grid": {"n": 200, "kind": "uniform"},
    "quadrature": {"panels": 32, "points": 8},
    "tolerances": {"step": 1e-10, "residual": 1e-8},
    "max_iters": 100000,
}

# Extensibility point for "custom" problems: named pieces, each a factory of
# (alpha, T) so configs stay purely declarative.
KERNELS = {
    "log-product": lambda alpha, T: (lambda t, s: 1.0 / (2.0 * math.log(T) * t * s)),
    "constant": lambda alpha, T: (lambda t, s: 1.0 / (T - 1.0)),
}
NONLINEARITIES = {
    "log-shift": lambda alpha, T: (lambda s, x: math.log(s + x)),
    "neg-log-product": lambda alpha, T: (lambda s, x: -(math.log(s) + math.log(x))),
    "zero": lambda alpha, T: (lambda s, x: 0.0),
}
FORCINGS = {
    "linear-minus-log": lambda alpha, T: (
        lambda t: alpha * t - math.log((1 + alpha) / (alpha * math.sqrt(T))) / (2.0 * t)
    ),
    "linear": lambda alpha, T: (lambda t: alpha * t),
    "zero": lambda alpha, T: (lambda t: 0.0),
}


class ConfigError(ValueError):
    pass


def load_config(path, overrides) -> dict:
    cfg = json.loads(json.dumps(DEFAULTS))  # deep copy
    if path is not None:
        try:
            with open(path) as fh:
                user = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigError("config root must be a JSON object")
        for key, value in user.items():
            if isinstance(value, dict) and isinstance(cfg.get(key), dict):
                cfg[key].update(value)
            else:
                cfg[key] = value
    # explicit shortcut flags win over the file
    for key in ("alpha", "T"):
        if overrides.get(key) is not None:
            cfg[key] = overrides[key]
    return cfg


def build_problem(cfg: dict) -> hs.HammersteinProblem:
    try:
        alpha, T = float(cfg["alpha"]), float(cfg["T"])
        n = int(cfg["grid"]["n"])
        panels = int(cfg["quadrature"]["panels"])
        points = int(cfg["quadrature"]["points"])
        kind = cfg["problem"]
        if kind == "paper-example":
            problem = hs.build_log_example(alpha, T, n, panels, points)
            etas = tuple(float(e) for e in cfg["eta"])
            if etas != problem.etas:
                problem = dataclasses.replace(problem, etas=etas)
            return problem
        if kind == "custom":
            m = int(cfg["m"])
            fs = tuple(
                NONLINEARITIES[name](alpha, T) for name in cfg["nonlinearities"]
            )
            return hs.HammersteinProblem(
                T=T,
                m=m,
                kernel=KERNELS[cfg["kernel"]](alpha, T),
                nonlinearities=fs,
                forcing=FORCINGS[cfg["forcing"]](alpha, T),
                etas=tuple(float(e) for e in cfg["eta"]),
                domain_floor=float(cfg.get("domain_floor", 1.0)),
                grid=hs.uniform_grid(T, n),
                quadrature=hs.make_quadrature("gauss-legendre", T, panels, points),
            )
        raise ConfigError(f"unknown problem kind {kind!r}")
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad config: {exc}") from exc


def _start_tuple(problem, alpha):
    lower, upper = hs.initial_bracket(problem, alpha)
    return tuple(lower if i % 2 == 0 else upper for i in range(problem.k))


def _iteration_config(cfg) -> IterationConfig:
    tols = cfg["tolerances"]
    return IterationConfig(
        tol_step=float(tols["step"]),
        tol_residual=float(tols["residual"]),
        max_iters=int(cfg["max_iters"]),
    )


def _run_checks(cfg, problem) -> dict:
    alpha = float(cfg["alpha"])
    bound = hs.kernel_bound(problem)
    floor = problem.domain_floor
    pairs = [(floor, floor), (floor, floor + 0.5), (floor + 1.0, floor + 4.0),
             (floor + 0.25, floor + 9.0)]
    s_samples = list(np.linspace(1.0, problem.T, 9))
    d_report = hs.check_assumption_d(problem, pairs, s_samples)
    x0 = _start_tuple(problem, alpha)
    e_report = hs.check_assumption_e(problem, x0)
    mono = _monotone_samples(problem, np.random.default_rng(0), 20)
    upsilon = cyclic_shift_upsilon(problem.m)
    violations = check_mixed_monotone_sampled(
        hs.product_operator(problem),
        upsilon.partition,
        mono,
        lambda u, v: bool(np.all(u.values <= v.values + 1e-10)),
    )
    return {
        "kernel_bound": bound,
        "eta_ok": d_report.eta_ok,
        "assumption_d_violations": [list(v) for v in d_report.violations],
        "assumption_e_failures": [list(f) for f in e_report.failures],
        "mixed_monotone_violations": [list(v) for v in violations],
        "passed": d_report.passed and e_report.passed and not violations,
    }


def _monotone_samples(problem, rng, count):
    """Random single-coordinate ordered perturbations of grid functions."""
    samples = []
    t = problem.grid.nodes
    for _ in range(count):
        base = tuple(
            GridFunction(problem.grid, problem.domain_floor + rng.uniform(0.0, 4.0) + 0.0 * t)
            for _ in range(problem.k)
        )
        j = int(rng.integers(1, problem.k + 1))
        low = base[j - 1]
        high = GridFunction(problem.grid, low.values + rng.uniform(0.1, 3.0))
        samples.append((base, j, low, high))
    return samples


def _random_ordered_pairs(problem, rng, count, lo=1.0, hi=10.0):
    """Seeded ordered pairs of product tuples with values in [lo, hi].

    Half the pairs use constant functions with scalar gaps (these reach the
    extreme separations where a broken nonlinearity actually leaves the
    contraction band); the first pair spans the full range.
    """
    t = problem.grid.nodes
    ones = np.ones_like(t)
    pairs = []
    for idx in range(count):
        x, z = [], []
        for i in range(1, problem.k + 1):
            if idx == 0:
                a, gap = lo * ones, (hi - lo) * ones
            elif idx % 2 == 0:
                base = rng.uniform(lo, hi)
                a = base * ones
                gap = rng.uniform(0.0, hi - base) * ones
            else:
                a = rng.uniform(lo, hi - 1.0, size=t.size)
                gap = rng.uniform(0.0, hi - np.max(a), size=t.size)
            if i % 2 == 1:  # A block: x_i <= z_i
                x.append(GridFunction(problem.grid, a))
                z.append(GridFunction(problem.grid, a + gap))
            else:           # B block: x_i >= z_i
                x.append(GridFunction(problem.grid, a + gap))
                z.append(GridFunction(problem.grid, a))
        pairs.append((tuple(x), tuple(z)))
    return pairs


def cmd_check(args) -> int:
    cfg = load_config(args.config, {"alpha": args.alpha, "T": args.T})
    problem = build_problem(cfg)
    report = _run_checks(cfg, problem)
    print(json.dumps(report, indent=2))
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED


def cmd_solve(args) -> int:
    cfg = load_config(args.config, {"alpha": args.alpha, "T": args.T})
    problem = build_problem(cfg)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    check_report = _run_checks(cfg, problem)
    if not check_report["passed"]:
        if not args.force:
            print(json.dumps(check_report, indent=2))
            return EXIT_CHECK_FAILED
        log.warning("assumption checks failed; continuing under --force")

    upsilon = cyclic_shift_upsilon(problem.m)
    x0 = _start_tuple(problem, float(cfg["alpha"]))
    leq = lambda u, v: bool(np.all(u.values <= v.values + 1e-12))  # noqa: E731
    triple = builtin_log_triple()
    config = _iteration_config(cfg)
    try:
        report = solve(
            hs.product_operator(problem), upsilon, x0, config, triple,
            dist=sup_metric, leq=leq, skip_initial_check=args.force,
        )
        status = EXIT_OK
    except NonConvergenceError as exc:
        report = exc.report
        status = EXIT_NO_CONVERGENCE

    (out_dir / "trace.csv").write_text(trace_csv(report))
    solution = report.fixed_point[0]
    (out_dir / "solution.csv").write_text(format_csv(solution))
    # defect of the collapsed solution alone; reproducible from solution.csv
    collapsed_residual = sup_metric(
        solution, hs.apply_A(problem, (solution,) * problem.k)
    )
    payload = {
        "solution_residual": collapsed_residual,
        "config": cfg,
        "iterations": report.iterations,
        "converged": report.converged,
        "monotone_ok": report.monotone_ok,
        "collapsed": report.collapsed,
        "final_residual": report.final_residual,
        "final_spread": report.final_spread,
        "check": check_report,
    }
    (out_dir / "report.json").write_text(json.dumps(payload, indent=2) + "\n")
    return status


def cmd_verify(args) -> int:
    cfg = load_config(args.config, {"alpha": args.alpha, "T": args.T})
    problem = build_problem(cfg)
    rng = np.random.default_rng(args.seed)
    upsilon = cyclic_shift_upsilon(problem.m)
    partition = upsilon.partition
    triple = builtin_log_triple()
    leq = lambda u, v: bool(np.all(u.values <= v.values + 1e-10))  # noqa: E731

    pairs = _random_ordered_pairs(problem, rng, 200)
    report = verify_contraction_sampled(
        lambda x: hs.apply_A(problem, x),
        pairs,
        triple,
        dist=sup_metric,
        dist_k=lambda x, z: max_metric(x, z, sup_metric),
        ordered=lambda x, z: product_leq(x, z, partition, leq),
        tol_slack=1e-8,
    )
    mono_violations = check_mixed_monotone_sampled(
        hs.product_operator(problem), partition,
        _monotone_samples(problem, rng, 50), leq,
    )
    summary = {
        "contraction_min_slack": report.min_slack,
        "contraction_rejected_pairs": list(report.rejected_pairs),
        "contraction_ok": report.passed,
        "mixed_monotone_violations": [list(v) for v in mono_violations],
        "mixed_monotone_ok": not mono_violations,
    }
    print(json.dumps(summary, indent=2))
    ok = report.passed and not mono_violations
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mixedfp",
        description="Solve log-banded Hammerstein integral equations by "
        "multidimensional monotone fixed-point iteration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (("check", cmd_check), ("solve", cmd_solve), ("verify", cmd_verify)):
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="JSON problem config")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--force", action="store_true",
                       help="run the solver even if checks fail")
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--T", type=float, default=None)
        p.set_defaults(handler=fn)
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
