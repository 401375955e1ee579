"""Command line front end.

Subcommands: ``bounds`` (all bounds for a scenario file), ``table1`` (the
reference grid of qubit bound values at 10 degree steps), ``sweep`` (bound
curves on an angle grid), ``verify`` (randomized property suite) and
``simulate`` (seeded Monte Carlo cross-check of the sequential
probabilities). Exit codes: 0 success, 1 verification mismatch, 2 bad input,
3 dimension mismatch, 4 optimizer failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from .bounds import bound_report, lambda_s_three
from .entropy import shannon_entropy
from .errors import DimensionMismatch, OptimizerFailure, ScenarioError
from .optimize import OptimizerConfig, lambda_d_numeric, lambda_s3_numeric, lambda_s_numeric
from .qubit import curve_point, table1
from .scenario import load_scenario
from .states import outcome_probabilities, sample_sequence, wigner_joint

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_BAD_INPUT = 2
EXIT_DIMENSION = 3
EXIT_OPTIMIZER = 4

#: Published 3-decimal reference values for the 10-degree qubit bound grid:
#: (theta_deg, lambda_s, lambda_d, lambda_d2, lambda_d1), natural log.
REFERENCE_TABLE = (
    (0, 0.000, 0.000, 0.000, 0.000),
    (10, 0.045, 0.028, 0.008, 0.004),
    (20, 0.135, 0.089, 0.031, 0.015),
    (30, 0.246, 0.173, 0.069, 0.034),
    (40, 0.361, 0.271, 0.124, 0.061),
    (50, 0.469, 0.378, 0.197, 0.096),
    (60, 0.562, 0.492, 0.288, 0.139),
    (70, 0.633, 0.604, 0.399, 0.190),
    (80, 0.678, 0.673, 0.533, 0.249),
    (90, 0.693, 0.693, 0.693, 0.317),
)


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _json_num(x: float) -> float:
    return float(f"{x:.6g}")


def _parse_log_base(text: str) -> float:
    if text == "e":
        return math.e
    try:
        base = float(text)
    except ValueError:
        raise ScenarioError(f"invalid log base {text!r}") from None
    if base <= 1.0:
        raise ScenarioError("log base must be > 1")
    return base


def _common_flags(parser: argparse.ArgumentParser, seed_default: int) -> None:
    parser.add_argument("--log-base", default="e",
                        help="entropy log base: 'e' (default) or a number > 1")
    parser.add_argument("--format", choices=("table", "csv", "json"), default="table")
    parser.add_argument("--seed", type=int, default=seed_default)
    parser.add_argument("--quiet", action="store_true",
                        help="suppress echo/header lines in table output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sequr",
        description="Entropic uncertainty bounds for distinct and sequential measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="compute all bounds for observables in a scenario file")
    p.add_argument("file")
    p.add_argument("--order", nargs="+", required=True, metavar="NAME",
                   help="2 or 3 observable names, in measurement order")
    p.add_argument("--starts", type=int, default=64)
    _common_flags(p, seed_default=0)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table1", help="reference grid of qubit bounds, 0..90 degrees")
    p.add_argument("--tolerance", type=float, default=5e-4,
                   help="match tolerance against the 3-decimal reference values "
                        "(numeric-regime entries get an extra 1e-3)")
    _common_flags(p, seed_default=0)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("sweep", help="bound curves on an angle grid")
    p.add_argument("--theta-min", type=float, default=0.0)
    p.add_argument("--theta-max", type=float, default=180.0)
    p.add_argument("--steps", type=int, default=181)
    _common_flags(p, seed_default=0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the randomized property suite")
    p.add_argument("--instances", type=int, default=200)
    p.add_argument("--dims", default="2-5", help="dimension range, e.g. 2-5 or 3")
    _common_flags(p, seed_default=42)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte Carlo check of sequential probabilities")
    p.add_argument("file")
    p.add_argument("--order", nargs="+", required=True, metavar="NAME")
    p.add_argument("--samples", type=int, default=10**6)
    _common_flags(p, seed_default=0)
    p.set_defaults(func=cmd_simulate)

    return parser


def cmd_bounds(args) -> int:
    base = _parse_log_base(args.log_base)
    if len(args.order) not in (2, 3):
        print("error: --order needs exactly 2 or 3 observable names", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.starts < 1:
        print("error: --starts must be >= 1", file=sys.stderr)
        return EXIT_BAD_INPUT
    scenario = load_scenario(args.file)
    observables = scenario.pick(args.order)
    config = OptimizerConfig(starts=args.starts, seed=args.seed)

    started = time.perf_counter()
    if len(observables) == 2:
        a, b = observables
        report = bound_report(a, b, base, config)
        numeric_d = lambda_d_numeric(a, b, config, base)
        numeric_s = lambda_s_numeric(a, b, config, base)
        values = {
            "deutsch": report.deutsch,
            "partovi": report.partovi,
            "maassen_uffink": report.maassen_uffink,
            "krishna_parthasarathy": report.krishna_parthasarathy,
            "lambda_s": report.lambda_s,
            "lambda_d_numeric": numeric_d.value,
            "lambda_s_numeric": numeric_s.value,
        }
        checks = {
            "lambda_s >= krishna_parthasarathy":
                report.lambda_s >= report.krishna_parthasarathy - 1e-9,
            "krishna_parthasarathy >= partovi":
                report.krishna_parthasarathy >= report.partovi - 1e-9,
            "lambda_d_numeric >= krishna_parthasarathy":
                numeric_d.value >= report.krishna_parthasarathy - 1e-6,
            "lambda_s_numeric matches lambda_s":
                abs(numeric_s.value - report.lambda_s) <= 1e-4,
        }
        if report.maassen_uffink is not None:
            checks["lambda_s >= maassen_uffink"] = (
                report.lambda_s >= report.maassen_uffink - 1e-9
            )
            checks["maassen_uffink >= deutsch"] = (
                report.maassen_uffink >= report.deutsch - 1e-9
            )
    else:
        a, b, c = observables
        triple = lambda_s_three(a, b, c, base)
        numeric = lambda_s3_numeric(a, b, c, config, base)
        values = {
            "lambda_s3_stagewise": triple.stagewise,
            "lambda_s3_common_state": triple.common_state,
            "third_stage_bound": triple.second_stage,
            "lambda_s3_numeric": numeric.value,
        }
        checks = {
            "common_state >= stagewise":
                triple.common_state >= triple.stagewise - 1e-9,
            "lambda_s3_numeric matches common_state":
                abs(numeric.value - triple.common_state) <= 1e-3,
        }
    elapsed = time.perf_counter() - started

    payload = {
        "command": "bounds",
        "file": args.file,
        "order": args.order,
        "dim": scenario.dim,
        "log_base": args.log_base,
        "seed": args.seed,
        "starts": args.starts,
        "bounds": {k: (None if v is None else _json_num(v)) for k, v in values.items()},
        "checks": checks,
        "timing_s": round(elapsed, 3),
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        print("bound,value")
        for name, value in values.items():
            print(f"{name},{'' if value is None else _fmt(value)}")
    else:
        if not args.quiet:
            print(f"# bounds  file={args.file}  order={','.join(args.order)}  "
                  f"dim={scenario.dim}  log_base={args.log_base}  "
                  f"seed={args.seed}  starts={args.starts}")
        width = max(len(k) for k in values)
        for name, value in values.items():
            shown = "n/a (degenerate spectrum)" if value is None else _fmt(value)
            print(f"{name:<{width}}  {shown}")
        for name, verdict in checks.items():
            print(f"check: {name}: {'ok' if verdict else 'VIOLATED'}")
        if not args.quiet:
            print(f"timing_s {elapsed:.3f}")
    return EXIT_OK if all(checks.values()) else EXIT_MISMATCH


def cmd_table1(args) -> int:
    base = _parse_log_base(args.log_base)
    if abs(base - math.e) > 1e-12:
        print("error: the reference table is defined for natural log only",
              file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.tolerance <= 0:
        print("error: --tolerance must be positive", file=sys.stderr)
        return EXIT_BAD_INPUT
    config = OptimizerConfig(starts=32, seed=args.seed)
    rows = table1(config)

    mismatches = []
    for point, ref in zip(rows, REFERENCE_TABLE):
        computed = (point.lambda_s, point.lambda_d, point.lambda_d2, point.lambda_d1)
        tol = args.tolerance + (1e-3 if point.regime == "middle-numeric" else 0.0)
        for name, got, want in zip(
            ("lambda_s", "lambda_d", "lambda_d2", "lambda_d1"), computed, ref[1:]
        ):
            if abs(got - want) > tol:
                mismatches.append((ref[0], name, got, want, tol))

    header = ("theta_deg", "lambda_s", "lambda_d", "lambda_d2", "lambda_d1")
    if args.format == "json":
        payload = {
            "command": "table1",
            "log_base": "e",
            "seed": args.seed,
            "rows": [
                {
                    "theta_deg": round(p.theta_deg),
                    "lambda_s": _json_num(p.lambda_s),
                    "lambda_d": _json_num(p.lambda_d),
                    "lambda_d2": _json_num(p.lambda_d2),
                    "lambda_d1": _json_num(p.lambda_d1),
                    "regime": p.regime,
                }
                for p in rows
            ],
            "mismatches": [
                {"theta_deg": t, "bound": n, "computed": _json_num(g),
                 "reference": w, "tolerance": tol}
                for t, n, g, w, tol in mismatches
            ],
        }
        print(json.dumps(payload, indent=2))
    elif args.format == "csv":
        print(",".join(header))
        for p in rows:
            print(f"{round(p.theta_deg)},{_fmt(p.lambda_s)},{_fmt(p.lambda_d)},"
                  f"{_fmt(p.lambda_d2)},{_fmt(p.lambda_d1)}")
    else:
        if not args.quiet:
            print(f"# table1  log_base=e  seed={args.seed}  tolerance={args.tolerance:g}")
        print(f"{'theta_deg':>9} {'lambda_s':>9} {'lambda_d':>9} "
              f"{'lambda_d2':>9} {'lambda_d1':>9}  regime")
        for p in rows:
            print(f"{round(p.theta_deg):>9} {p.lambda_s:>9.6f} {p.lambda_d:>9.6f} "
                  f"{p.lambda_d2:>9.6f} {p.lambda_d1:>9.6f}  {p.regime}")
        for t, n, g, w, tol in mismatches:
            print(f"mismatch: theta={t} {n} computed={_fmt(g)} reference={w} "
                  f"tolerance={tol:g}")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_sweep(args) -> int:
    base = _parse_log_base(args.log_base)
    if args.steps < 1 or args.theta_min > args.theta_max \
            or args.theta_min < 0 or args.theta_max > 180:
        print("error: need 0 <= theta-min <= theta-max <= 180 and steps >= 1",
              file=sys.stderr)
        return EXIT_BAD_INPUT
    config = OptimizerConfig(starts=32, seed=args.seed)
    grid = np.linspace(args.theta_min, args.theta_max, args.steps)
    points = [curve_point(math.radians(d), config, base) for d in grid]

    if args.format == "json":
        payload = {
            "command": "sweep",
            "log_base": args.log_base,
            "seed": args.seed,
            "rows": [
                {
                    "theta_deg": _json_num(p.theta_deg),
                    "lambda_s": _json_num(p.lambda_s),
                    "lambda_d": _json_num(p.lambda_d),
                    "lambda_d2": _json_num(p.lambda_d2),
                    "lambda_d1": _json_num(p.lambda_d1),
                    "regime": p.regime,
                    "chain_ok": p.chain_holds(),
                }
                for p in points
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        if args.format == "table" and not args.quiet:
            print(f"# sweep  theta={args.theta_min:g}..{args.theta_max:g} "
                  f"steps={args.steps}  log_base={args.log_base}  seed={args.seed}")
        print("theta_deg,lambda_s,lambda_d,lambda_d2,lambda_d1,regime,chain_ok"
              if args.format == "csv" else
              f"{'theta_deg':>9} {'lambda_s':>9} {'lambda_d':>9} {'lambda_d2':>9} "
              f"{'lambda_d1':>9}  {'regime':<14} chain_ok")
        for p in points:
            if args.format == "csv":
                print(f"{_fmt(p.theta_deg)},{_fmt(p.lambda_s)},{_fmt(p.lambda_d)},"
                      f"{_fmt(p.lambda_d2)},{_fmt(p.lambda_d1)},{p.regime},"
                      f"{str(p.chain_holds()).lower()}")
            else:
                print(f"{p.theta_deg:>9.4g} {p.lambda_s:>9.6f} {p.lambda_d:>9.6f} "
                      f"{p.lambda_d2:>9.6f} {p.lambda_d1:>9.6f}  {p.regime:<14} "
                      f"{str(p.chain_holds()).lower()}")
    return EXIT_OK


def _parse_dims(text: str):
    parts = text.split("-")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise ScenarioError(f"invalid --dims {text!r}, expected N or LO-HI") from None
    if not (2 <= lo <= hi <= 16):
        raise ScenarioError("--dims must lie within 2..16")
    return tuple(range(lo, hi + 1))


def cmd_verify(args) -> int:
    from .verify import run_all

    if args.instances < 1:
        print("error: --instances must be >= 1", file=sys.stderr)
        return EXIT_BAD_INPUT
    dims = _parse_dims(args.dims)
    results = run_all(args.seed, args.instances, dims)

    if args.format == "json":
        payload = {
            "command": "verify",
            "seed": args.seed,
            "instances": args.instances,
            "dims": args.dims,
            "properties": [
                {"name": r.name, "ok": r.ok, "checked": r.checked,
                 "margin": f"{r.worst:.3e}", "detail": r.detail}
                for r in results
            ],
            "all_ok": all(r.ok for r in results),
        }
        print(json.dumps(payload, indent=2))
    else:
        if not args.quiet:
            print(f"# verify  seed={args.seed}  instances={args.instances}  "
                  f"dims={args.dims}")
        for r in results:
            mark = "ok  " if r.ok else "FAIL"
            print(f"{mark} {r.name:<32} checked={r.checked:<5} margin={r.worst:.3e}")
            if not r.ok:
                for line in r.detail.splitlines():
                    print(f"     {line}")
        passed = sum(r.ok for r in results)
        print(f"{passed}/{len(results)} properties passed")
    return EXIT_OK if all(r.ok for r in results) else EXIT_MISMATCH


def cmd_simulate(args) -> int:
    base = _parse_log_base(args.log_base)
    if args.samples < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return EXIT_BAD_INPUT
    if not args.order:
        print("error: --order needs at least one observable name", file=sys.stderr)
        return EXIT_BAD_INPUT
    scenario = load_scenario(args.file)
    chain = scenario.pick(args.order)
    rho = scenario.state_or_mixed()

    joint = wigner_joint(rho, *chain)
    counts = sample_sequence(rho, chain, args.samples, args.seed)
    freqs = counts / args.samples
    ln_base = math.log(base)

    entropies = []
    for axis, name in enumerate(args.order):
        analytic_p = joint.marginal(axis)
        empirical_p = freqs.sum(axis=tuple(k for k in range(freqs.ndim) if k != axis))
        s_analytic = shannon_entropy(analytic_p, base)
        nz = empirical_p[empirical_p > 0]
        s_emp = float(-(nz * np.log(nz)).sum() / ln_base)
        var_nats = float((nz * np.log(nz) ** 2).sum() - ((nz * np.log(nz)).sum()) ** 2)
        stderr = math.sqrt(max(var_nats, 0.0) / args.samples) / ln_base
        entropies.append((name, analytic_p, empirical_p, s_analytic, s_emp, stderr))

    gap = None
    if len(chain) >= 2:
        direct = outcome_probabilities(rho, chain[-1])
        analytic_gap = float(np.abs(joint.marginal(len(chain) - 1) - direct).max())
        last_emp = entropies[-1][2]
        empirical_gap = float(np.abs(last_emp - direct).max())
        gap = (analytic_gap, empirical_gap)

    if args.format == "json":
        payload = {
            "command": "simulate",
            "file": args.file,
            "order": args.order,
            "dim": scenario.dim,
            "samples": args.samples,
            "seed": args.seed,
            "log_base": args.log_base,
            "joint": {
                "axes": [[_json_num(v) for v in ax] for ax in joint.axes],
                "analytic": np.round(joint.table, 9).tolist(),
                "empirical": np.round(freqs, 9).tolist(),
            },
            "marginals": [
                {
                    "observable": name,
                    "analytic": [_json_num(v) for v in pa],
                    "empirical": [_json_num(v) for v in pe],
                    "entropy_analytic": _json_num(sa),
                    "entropy_empirical": _json_num(se),
                    "entropy_stderr": _json_num(err),
                }
                for name, pa, pe, sa, se, err in entropies
            ],
        }
        if gap is not None:
            payload["interference_gap"] = {
                "analytic": _json_num(gap[0]), "empirical": _json_num(gap[1]),
            }
        print(json.dumps(payload, indent=2))
    else:
        if not args.quiet:
            print(f"# simulate  file={args.file}  order={','.join(args.order)}  "
                  f"dim={scenario.dim}  samples={args.samples}  seed={args.seed}  "
                  f"log_base={args.log_base}")
        print(f"{'outcome':<24} {'analytic':>10} {'empirical':>10} {'|diff|':>10}")
        for idx in np.ndindex(joint.table.shape):
            label = "(" + ",".join(_fmt(joint.axes[k][i]) for k, i in enumerate(idx)) + ")"
            p, f = joint.table[idx], freqs[idx]
            print(f"{label:<24} {p:>10.6f} {f:>10.6f} {abs(p - f):>10.6f}")
        for name, pa, pe, sa, se, err in entropies:
            print(f"marginal {name}: analytic [{' '.join(_fmt(v) for v in pa)}] "
                  f"empirical [{' '.join(_fmt(v) for v in pe)}]")
            print(f"entropy {name}: analytic {_fmt(sa)} empirical {_fmt(se)} "
                  f"stderr {_fmt(err)}")
        if gap is not None:
            print(f"interference_gap: analytic {_fmt(gap[0])} empirical {_fmt(gap[1])}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except OptimizerFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OPTIMIZER
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
