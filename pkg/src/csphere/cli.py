"""Command-line front end: run verification suites and experiments, write
CSV/JSON reports, print summaries.

Exit codes: 0 = all checks pass, 1 = numerical tolerance breach,
2 = usage error.  Reports embed their full effective config so any output
file can be reproduced byte-for-byte from its own echo (single worker).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .experiments import (
    SCHEMA_VERSION,
    run_bernstein,
    run_cesaro_table,
    run_identity_suite,
    run_km_norm,
)
from .kernels import Angles, cesaro_kernel, kernel_degree, kernel_direct, kernel_full
from .kernels import build_rho, kernel_harm


def parse_int_list(spec: str) -> list[int]:
    """Parse '8,16,32', '8:128:x2' (geometric) or '4:20:+4' (arithmetic)."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad range spec {spec!r}")
        a, b, step = int(parts[0]), int(parts[1]), parts[2]
        out = []
        cur = a
        if step.startswith("x"):
            factor = int(step[1:])
            if factor < 2 or a < 1:
                raise ValueError(f"bad geometric step in {spec!r}")
            while cur <= b:
                out.append(cur)
                cur *= factor
        elif step.startswith("+"):
            inc = int(step[1:])
            if inc < 1:
                raise ValueError(f"bad arithmetic step in {spec!r}")
            while cur <= b:
                out.append(cur)
                cur += inc
        else:
            raise ValueError(f"bad step {step!r} in {spec!r}")
        if not out:
            raise ValueError(f"empty range {spec!r}")
        return out
    out = [int(tok) for tok in spec.split(",") if tok.strip()]
    if not out:
        raise ValueError(f"empty list {spec!r}")
    return out


def parse_float_list(spec: str) -> list[float]:
    out = [float(tok) for tok in spec.split(",") if tok.strip()]
    if not out:
        raise ValueError(f"empty list {spec!r}")
    return out


def parse_r_list(spec: str) -> list[float]:
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok:
            continue
        out.append(np.inf if tok == "inf" else float(tok))
    if not out:
        raise ValueError(f"empty list {spec!r}")
    return out


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def write_csv(path: str, config: dict, rows: list[dict], columns: list[str]):
    lines = [f"# schema_version={SCHEMA_VERSION}"]
    lines.append("# config=" + json.dumps(config, sort_keys=True))
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(row.get(col, "")) for col in columns))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(path: str, report):
    with open(path, "w") as fh:
        fh.write(report.to_json())


def _out_path(args, name: str) -> str:
    out_dir = args.out_dir or os.environ.get("CSPHERE_OUT_DIR", ".")
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, name)


def _check_q_arg(parser, q_values):
    for q in np.atleast_1d(q_values):
        if q < 2:
            parser.error(f"q must be at least 2, got {q}")


def cmd_verify(parser, args) -> int:
    q_list = parse_int_list(args.q)
    _check_q_arg(parser, q_list)
    report = run_identity_suite(q_list=q_list, l_max=args.lmax, seed=args.seed)
    write_json(_out_path(args, "verify_report.json"), report)
    print(f"identity suite: max residual {report.max_residual:.3e} "
          f"-> {'PASS' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


def cmd_cesaro(parser, args) -> int:
    _check_q_arg(parser, [args.q])
    n_list = parse_int_list(args.n)
    delta_list = parse_float_list(args.delta)
    report = run_cesaro_table(
        q=args.q, delta_list=delta_list, n_list=n_list, nodes=args.nodes,
        workers=args.workers,
    )
    rows = []
    for row in report.results["rows"]:
        fit = report.results["fits"][str(row["delta"])]
        rows.append(
            {
                **row,
                "fitted_slope": fit["fit"]["fitted_slope"],
                "predicted_rate": fit["predicted_rate"],
            }
        )
    columns = ["q", "delta", "n", "l1_norm", "fitted_slope", "predicted_rate", "converged"]
    if args.format == "json":
        write_json(_out_path(args, "cesaro_report.json"), report)
    else:
        write_csv(_out_path(args, "cesaro.csv"), report.config, rows, columns)
        write_json(_out_path(args, "cesaro_report.json"), report)
    for delta, fit in sorted(report.results["fits"].items()):
        print(f"delta={delta}: slope {fit['fit']['fitted_slope']:+.3f} "
              f"(predicted {fit['predicted_rate']:+.1f}), "
              f"max/min {fit['max_min_ratio']:.2f}")
    return 0 if report.passed else 1


def cmd_bernstein(parser, args) -> int:
    _check_q_arg(parser, [args.q])
    n_list = parse_int_list(args.n)
    r_list = parse_r_list(args.r)
    bern = run_bernstein(
        q=args.q,
        gamma=args.gamma,
        r_list=r_list,
        n_list=n_list,
        trials=args.trials,
        seed=args.seed,
        workers=args.workers,
    )
    km = run_km_norm(q=args.q, gamma=args.gamma, n_list=n_list, nodes=args.nodes,
                     seed=args.seed, workers=args.workers)
    columns = ["q", "gamma", "r", "n", "max_ratio", "mean_ratio",
               "eigen_ratio_residual", "resampled"]
    if args.format == "json":
        write_json(_out_path(args, "bernstein_report.json"), bern)
        write_json(_out_path(args, "km_norm_report.json"), km)
    else:
        write_csv(_out_path(args, "bernstein.csv"), bern.config,
                  bern.results["rows"], columns)
        write_csv(
            _out_path(args, "km_norm.csv"),
            km.config,
            km.results["rows"],
            ["q", "gamma", "n", "m", "l1_norm", "abel_residual", "converged"],
        )
        write_json(_out_path(args, "bernstein_report.json"), bern)
        write_json(_out_path(args, "km_norm_report.json"), km)
    worst = max(row["max_ratio"] for row in bern.results["rows"])
    print(f"bernstein: worst ratio {worst:.4f}, eigen residual "
          f"{bern.results['eigen_max_residual']:.2e} -> "
          f"{'PASS' if bern.passed else 'FAIL'}")
    print(f"km norm: slope {km.results['fit']['fitted_slope']:+.3f} "
          f"(gamma {args.gamma:+.1f}) -> {'PASS' if km.passed else 'FAIL'}")
    return 0 if (bern.passed and km.passed) else 1


def _kernel_value(args, theta: float, phi: float):
    a = Angles(theta=theta, phi=phi)
    t = a.real_inner
    if args.name == "h":
        return kernel_degree(args.l, args.q, t)
    if args.name == "harm":
        return kernel_harm(args.m, args.n2, args.q, a)
    if args.name == "cesaro":
        return cesaro_kernel(args.kn, args.delta, args.q).eval(t)
    if args.name == "full":
        return kernel_full(args.kn, args.q, t)
    if args.name == "km":
        n = args.kn
        seq = build_rho(n, 2 * n + args.q + 1, args.q, args.gamma)
        return kernel_direct(seq, args.q).eval(t)
    raise ValueError(f"unknown kernel name {args.name!r}")


def cmd_kernel(parser, args) -> int:
    _check_q_arg(parser, [args.q])
    if args.name in ("cesaro", "full", "km") and args.kn is None:
        parser.error(f"kernel {args.name!r} requires --n")
    if args.name == "h" and args.l is None:
        parser.error("kernel 'h' requires --l")
    if args.name == "harm" and (args.m is None or args.n2 is None):
        parser.error("kernel 'harm' requires --m and --n2")
    if args.grid:
        try:
            nt, nphi = (int(v) for v in args.grid.split("x"))
        except ValueError:
            parser.error(f"bad grid spec {args.grid!r}")
        print("theta,phi,value")
        for th in np.linspace(0, np.pi / 2, nt):
            for ph in np.linspace(0, 2 * np.pi, nphi, endpoint=False):
                v = _kernel_value(args, float(th), float(ph))
                print(f"{th:.17g},{ph:.17g},{_fmt_value(v)}")
    else:
        v = _kernel_value(args, args.theta, args.phi)
        print(_fmt_value(v))
    return 0


def _fmt_value(v) -> str:
    if isinstance(v, complex):
        return f"{v.real:.17g}{v.imag:+.17g}j"
    return f"{float(v):.17g}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csphere",
        description="Harmonic analysis experiments on the complex sphere",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out-dir", default=None,
                       help="output directory (default: $CSPHERE_OUT_DIR or '.')")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1,
                       help="worker threads for independent cases")

    p = sub.add_parser("verify", help="run the kernel identity suite")
    add_common(p)
    p.add_argument("--q", default="2,3", help="comma list of sphere parameters")
    p.add_argument("--lmax", type=int, default=16)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("cesaro", help="Cesaro mean L1 growth table")
    add_common(p)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--nodes", type=int, default=None,
                   help="quadrature nodes per direction (default: auto)")
    p.add_argument("--delta", default="0,1,2", help="comma list of Cesaro orders")
    p.add_argument("--n", default="8:128:x2", help="degree sweep (list or a:b:x2 / a:b:+s)")
    p.set_defaults(fn=cmd_cesaro)

    p = sub.add_parser("bernstein", help="empirical multiplier Bernstein inequality")
    add_common(p)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--r", default="2,inf", help="comma list of norms (use 'inf' for sup)")
    p.add_argument("--n", default="4:32:x2")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--nodes", type=int, default=None,
                   help="quadrature nodes for the K_m norm table (default: auto)")
    p.set_defaults(fn=cmd_bernstein)

    p = sub.add_parser("kernel", help="pointwise kernel evaluation for plotting")
    add_common(p)
    p.add_argument("--name", required=True,
                   choices=("h", "harm", "cesaro", "full", "km"))
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--l", type=int, default=None, help="degree for the h kernel")
    p.add_argument("--m", type=int, default=None, help="first bidegree for harm")
    p.add_argument("--n2", type=int, default=None, help="second bidegree for harm")
    p.add_argument("--n", dest="kn", type=int, default=None,
                   help="degree for cesaro/full/km kernels")
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--grid", default=None, help="grid spec like 32x32 for CSV output")
    p.set_defaults(fn=cmd_kernel)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(parser, args)
    except ValueError as exc:
        parser.exit(2, f"error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
