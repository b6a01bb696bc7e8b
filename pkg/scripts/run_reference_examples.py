#!/usr/bin/env python3
"""Solve the two fixed demo tensors plus large random instances and print a
performance table (steps, Newton iterations, wall time, eigenvalue)."""

import argparse

from teneig import pta_solve, solve_dominant
from teneig.instances import dense_demo, random_instance, sparse_ring_demo


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument(
        "--skip-large", action="store_true", help="skip the (3,100) and (4,50) instances"
    )
    parser.add_argument("--pta", action="store_true", help="also run the power baseline")
    args = parser.parse_args()

    cases = [
        ("dense 3x3x3", dense_demo()),
        ("sparse 3x3x3", sparse_ring_demo()),
    ]
    if not args.skip_large:
        cases.append(("random (3,100)", random_instance(3, 100, seed=args.seed)))
        cases.append(("random (4,50)", random_instance(4, 50, seed=args.seed)))

    print("%-16s %6s %8s %9s %14s %10s" % ("instance", "iter", "nwtiter", "time_s", "lambda", "residual"))
    for name, A in cases:
        rep = solve_dominant(A)
        print(
            "%-16s %6d %8d %9.4f %14.6g %10.2e"
            % (name, rep.iter, rep.nwtiter, rep.wall_time_s, rep.eigen.lam, rep.residual_norm)
        )
        if args.pta:
            rp = pta_solve(A)
            print(
                "%-16s %6d %8s %9.4f %14.6g %10.2e"
                % ("  power baseline", rp.iter, "-", rp.wall_time_s, rp.eigen.lam, rp.residual_norm)
            )


if __name__ == "__main__":
    main()
