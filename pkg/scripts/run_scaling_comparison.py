#!/usr/bin/env python3
"""Compare both solvers across (order, dim) cells as the entries shrink by
powers of ten.  The power baseline slows down with the scaling exponent d and
eventually hits its iteration cap; the path follower is unaffected."""

import argparse

from teneig.bench import run_comparison

DEFAULT_CELLS = [
    (3, 10, (3, 4, 5, 6)),
    (4, 10, (4, 5, 6)),
    (3, 20, (4, 5, 6)),
]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=10, help="instances per cell")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--cell",
        action="append",
        metavar="M,N,D",
        help="run only this cell (repeatable), e.g. --cell 3,10,6",
    )
    args = parser.parse_args()

    if args.cell:
        cells = []
        for spec_str in args.cell:
            m, n, d = (int(v) for v in spec_str.split(","))
            cells.append((m, n, (d,)))
    else:
        cells = DEFAULT_CELLS

    header = "%-8s %3s | %8s %10s %9s | %10s %9s %7s" % (
        "(m,n)",
        "d",
        "h_aiter",
        "h_anwt",
        "h_atime",
        "p_aiter",
        "p_atime",
        "capped",
    )
    print(header)
    print("-" * len(header))
    for m, n, ds in cells:
        for d in ds:
            _, summary = run_comparison(m, n, d=d, count=args.count, seed=args.seed)
            h, p = summary["homotopy"], summary["pta"]
            print(
                "%-8s %3d | %8.2f %10.2f %9.4f | %10.1f %9.4f %5d/%d"
                % (
                    "(%d,%d)" % (m, n),
                    d,
                    h["aiter"],
                    h["anwtiter"],
                    h["atime_s"],
                    p["aiter"],
                    p["atime_s"],
                    p["capped"],
                    p["count"],
                )
            )


if __name__ == "__main__":
    main()
