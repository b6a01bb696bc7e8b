"""Command line interface: solve, gen, compare.

Exit codes: 0 success, 1 solver did not converge, 2 bad input (parse or
precondition error), 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bench import run_comparison
from .homotopy import HomotopyConfig, solve_dominant
from .instances import random_instance
from .pta import PtaConfig, pta_solve
from .tensor import EssentialNonnegativityError
from .tensorfile import TensorFileError, load_tensor, save_tensor

EXIT_OK = 0
EXIT_NO_CONVERGENCE = 1
EXIT_BAD_INPUT = 2
EXIT_IO = 3


def _add_solver_flags(p):
    p.add_argument("--dtau0", type=float, default=0.1, help="initial continuation step")
    p.add_argument("--eps1", type=float, default=1e-5, help="path Newton tolerance")
    p.add_argument("--eps2", type=float, default=1e-10, help="endgame / PTA residual tolerance")
    p.add_argument("--beta", type=float, default=0.9999, help="endgame threshold")
    p.add_argument("--epsilon", type=float, default=1e-9, help="perturbation for reducible input")
    p.add_argument("--max-steps", type=int, default=50000, help="step / iteration cap")
    p.add_argument("--newton-cap-path", type=int, default=10)
    p.add_argument("--newton-cap-endgame", type=int, default=100)
    p.add_argument("--dtau-min", type=float, default=1e-6)
    p.add_argument("--dtau-max", type=float, default=0.4)


def _configs(args):
    hconfig = HomotopyConfig(
        dtau0=args.dtau0,
        eps1=args.eps1,
        eps2=args.eps2,
        beta=args.beta,
        eps_perturb=args.epsilon,
        max_steps=args.max_steps,
        newton_cap_path=args.newton_cap_path,
        newton_cap_endgame=args.newton_cap_endgame,
        dtau_min=args.dtau_min,
        dtau_max=args.dtau_max,
    )
    pconfig = PtaConfig(tol=args.eps2, max_iter=args.max_steps, eps_perturb=args.epsilon)
    return hconfig, pconfig


def build_parser():
    parser = argparse.ArgumentParser(
        prog="teneig",
        description="Dominant eigenpair of an essentially nonnegative tensor.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a tensor file")
    p_solve.add_argument("path", help="tensor file")
    p_solve.add_argument("--method", choices=("homotopy", "pta", "both"), default="homotopy")
    p_solve.add_argument(
        "--assume",
        choices=("auto", "irreducible", "reducible"),
        default="auto",
        help="perturbation gate for the homotopy solver",
    )
    p_solve.add_argument("--json", action="store_true", help="machine readable report")
    _add_solver_flags(p_solve)

    p_gen = sub.add_parser("gen", help="write a seeded random instance")
    p_gen.add_argument("order", type=int)
    p_gen.add_argument("dim", type=int)
    p_gen.add_argument("-d", type=int, default=0, help="scale all entries by 10**-d")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("-o", "--out", required=True, help="output path")

    p_cmp = sub.add_parser("compare", help="run both solvers on seeded instances")
    p_cmp.add_argument("order", type=int)
    p_cmp.add_argument("dim", type=int)
    p_cmp.add_argument("-d", type=int, default=0)
    p_cmp.add_argument("--count", type=int, default=10)
    p_cmp.add_argument("--seed", type=int, default=0)
    p_cmp.add_argument("-o", "--out", help="write the report here instead of stdout")
    p_cmp.add_argument("--json", action="store_true")
    _add_solver_flags(p_cmp)

    return parser


def _report_dict(method, report):
    return {
        "method": method,
        "status": report.status,
        "lambda": report.eigen.lam,
        "x": [float(v) for v in report.eigen.x],
        "residual_norm": report.residual_norm,
        "iter": report.iter,
        "nwtiter": report.nwtiter,
        "wall_time_s": report.wall_time_s,
        "alpha": report.alpha,
        "lambda_shifted": report.lambda_shifted,
        "perturbed": report.perturbed,
    }


def _print_report(method, report, out):
    d = _report_dict(method, report)
    out.write("method:    %s\n" % method)
    out.write("status:    %s\n" % d["status"])
    out.write("lambda:    %.16g\n" % d["lambda"])
    out.write("x:         [%s]\n" % ", ".join("%.16g" % v for v in d["x"]))
    out.write("residual:  %.3e\n" % d["residual_norm"])
    out.write("iter:      %d\n" % d["iter"])
    out.write("nwtiter:   %d\n" % d["nwtiter"])
    out.write("time:      %.3f s\n" % d["wall_time_s"])
    out.write("alpha:     %.16g\n" % d["alpha"])
    out.write("perturbed: %s\n" % ("true" if d["perturbed"] else "false"))


def _cmd_solve(args):
    try:
        A = load_tensor(args.path)
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO
    except TensorFileError as exc:
        print("error: %s: %s" % (args.path, exc), file=sys.stderr)
        return EXIT_BAD_INPUT
    hconfig, pconfig = _configs(args)
    reports = {}
    try:
        if args.method in ("homotopy", "both"):
            reports["homotopy"] = solve_dominant(A, config=hconfig, assume=args.assume)
        if args.method in ("pta", "both"):
            reports["pta"] = pta_solve(A, config=pconfig)
    except EssentialNonnegativityError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.json:
        payload = [_report_dict(m, r) for m, r in reports.items()]
        print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2))
    else:
        for i, (method, report) in enumerate(reports.items()):
            if i:
                print()
            _print_report(method, report, sys.stdout)
    if all(r.status == "converged" for r in reports.values()):
        return EXIT_OK
    return EXIT_NO_CONVERGENCE


def _cmd_gen(args):
    try:
        A = random_instance(args.order, args.dim, d=args.d, seed=args.seed)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        save_tensor(args.out, A)
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO
    print("wrote %s (order %d, dim %d, d=%d, seed=%d)" % (args.out, args.order, args.dim, args.d, args.seed))
    return EXIT_OK


def _format_compare_text(records, summary):
    lines = []
    header = "%-6s %-10s %12s %6s %8s %9s %9s  %s" % (
        "seed",
        "solver",
        "lambda",
        "iter",
        "nwtiter",
        "time_s",
        "residual",
        "status",
    )
    lines.append(header)
    lines.append("-" * len(header))
    for r in records:
        lines.append(
            "%-6d %-10s %12.6g %6d %8d %9.4f %9.2e  %s"
            % (r.seed, r.solver, r.lam, r.iter, r.nwtiter, r.wall_time_s, r.residual_norm, r.status)
        )
    h, p = summary["homotopy"], summary["pta"]
    lines.append("")
    lines.append(
        "homotopy: aiter=%.2f anwtiter=%.2f atime=%.4fs converged=%d/%d"
        % (h["aiter"], h["anwtiter"], h["atime_s"], h["converged"], h["count"])
    )
    lines.append(
        "pta:      aiter=%.2f atime=%.4fs converged=%d/%d capped=%d"
        % (p["aiter"], p["atime_s"], p["converged"], p["count"], p["capped"])
    )
    gap = summary["max_lambda_gap"]
    lines.append("max lambda gap on jointly converged runs: %s" % ("%.3e" % gap if np.isfinite(gap) else "n/a"))
    return "\n".join(lines) + "\n"


def _cmd_compare(args):
    hconfig, pconfig = _configs(args)
    try:
        records, summary = run_comparison(
            args.order,
            args.dim,
            d=args.d,
            count=args.count,
            seed=args.seed,
            hconfig=hconfig,
            pconfig=pconfig,
        )
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.json:
        text = json.dumps(
            {"records": [r.to_dict() for r in records], "summary": summary}, indent=2
        ) + "\n"
    else:
        text = _format_compare_text(records, summary)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    ok = all(r.status in ("converged", "step_limit") for r in records)
    return EXIT_OK if ok else EXIT_NO_CONVERGENCE


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "solve":
        return _cmd_solve(args)
    if args.command == "gen":
        return _cmd_gen(args)
    return _cmd_compare(args)


if __name__ == "__main__":
    sys.exit(main())
