#!/usr/bin/env python3
"""Closed root bounds of cec, cut and BCWWy on random small graphs.

Prints one CSV line per graph plus a tally of how the cut bound compares
with the cec bound. Usage: python3 scripts/root_bounds.py [count] [seed]
"""

import argparse
import csv
import random
import sys

from lipp import Graph
from lipp.polylab import brute_force_lipp, compare_root_bounds


def random_graph(rng, n_lo, n_hi):
    n = rng.randint(n_lo, n_hi)
    m = rng.randint(-(-12 * n // 10), 3 * n)
    verts = list(range(n))
    rng.shuffle(verts)
    edges = {tuple(sorted((verts[i], verts[rng.randrange(i)]))) for i in range(1, n)}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    rng.shuffle(pairs)
    edges |= set(pairs[: max(0, m - len(edges))])
    return Graph.from_edges(n, sorted(edges))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("count", type=int, nargs="?", default=50)
    ap.add_argument("seed", type=int, nargs="?", default=0)
    ap.add_argument("--n-max", type=int, default=12)
    a = ap.parse_args(argv)

    rng = random.Random(a.seed)
    w = csv.writer(sys.stdout)
    w.writerow(["graph", "n", "m", "opt", "zCec", "zCut", "zBcwwy"])
    tally = {"cut<cec": 0, "cut=cec": 0, "cut>cec": 0, "bcwwy!=cut": 0}
    for i in range(a.count):
        g = random_graph(rng, 4, a.n_max)
        b = compare_root_bounds(g)
        opt = brute_force_lipp(g).cardinality
        w.writerow([i, g.n, g.m, opt, f"{b.cec:.6f}", f"{b.cut:.6f}", f"{b.bcwwy:.6f}"])
        if b.cut < b.cec - 1e-6:
            tally["cut<cec"] += 1
        elif b.cut > b.cec + 1e-6:
            tally["cut>cec"] += 1
        else:
            tally["cut=cec"] += 1
        tally["bcwwy!=cut"] += abs(b.cut - b.bcwwy) > 1e-6
    print("# " + ", ".join(f"{k}: {v}" for k, v in tally.items()), file=sys.stderr)


if __name__ == "__main__":
    main()
