#!/usr/bin/env python3
"""Longest induced paths in small hypercubes (snake-in-the-box).

For k = 2..K solves the k-cube with each formulation and, where the cube is
small enough, checks the answer against exhaustive search.
"""

import argparse
import time

from lipp import SolverConfig, solve
from lipp.heuristic import HeuristicConfig, ghlipp
from lipp.instances import generate_hypercube
from lipp.polylab import BRUTE_FORCE_MAX_N, brute_force_lipp


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=5)
    ap.add_argument("--time-limit", type=float, default=600.0)
    ap.add_argument("--formulations", default="cec,cut,bcwwy")
    a = ap.parse_args(argv)

    print(f"{'k':>2} {'form':>6} {'status':>9} {'obj':>4} {'bound':>7} {'nodes':>6} {'secs':>7} {'brute':>5}")
    for k in range(2, a.max_k + 1):
        g = generate_hypercube(k)
        brute = brute_force_lipp(g).cardinality if g.n <= BRUTE_FORCE_MAX_N else None
        warm = ghlipp(g, HeuristicConfig(time_limit=0.1 * a.time_limit))
        for form in a.formulations.split(","):
            t = time.monotonic()
            rep = solve(g, SolverConfig(formulation=form, time_limit=a.time_limit, warm_start=warm))
            secs = time.monotonic() - t
            print(f"{k:>2} {form:>6} {rep.status:>9} {rep.objective:>4} {rep.best_bound:>7.2f} {rep.nodes:>6} {secs:>7.1f} {brute if brute else '-':>5}")


if __name__ == "__main__":
    main()
