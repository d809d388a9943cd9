#!/usr/bin/env python3
"""Run the automorphism search on random relabelings of a hexagon graph and
report group orders, search-tree sizes and wall time per run."""

from __future__ import annotations

import argparse
import random
import statistics
import time

from hexarc.autsearch import automorphisms
from hexarc.ffgeom import SUPPORTED_ORDERS, hexagon_graph


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--q", type=int, default=3, choices=SUPPORTED_ORDERS)
    parser.add_argument("--runs", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    g = hexagon_graph(args.q)
    rng = random.Random(args.seed)
    orders, times = set(), []
    for run in range(args.runs):
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        t0 = time.perf_counter()
        result = automorphisms(h)
        times.append(time.perf_counter() - t0)
        orders.add(result.group_order)
        st = result.stats
        print(f"run {run}: order {result.group_order}  nodes {st.nodes}  "
              f"orbits {list(st.orbit_lengths)}  {times[-1]:.2f}s")
    print(f"distinct orders: {sorted(orders)}  median time {statistics.median(times):.2f}s")
    return 0 if len(orders) == 1 else 1


if __name__ == "__main__":
    raise SystemExit(main())
