#!/usr/bin/env python3
"""Side-by-side invariants of the incidence graphs for q = 2 and q = 3.

For q = 2 the automorphism group keeps the two parts apart, so the graph is
not vertex-transitive and the arc-transitivity columns stay empty.
"""

from __future__ import annotations

import argparse

from hexarc.cli import analyze_graph
from hexarc.ffgeom import SUPPORTED_ORDERS, hexagon_graph

COLUMNS = ("n", "edgeCount", "valency", "girth", "diameter", "autOrder",
           "vertexTransitive", "vertexStabilizerOrder", "transitivityDegree",
           "sArcStabilizerOrder")


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--q", type=int, nargs="+", default=list(SUPPORTED_ORDERS),
                        choices=SUPPORTED_ORDERS)
    args = parser.parse_args(argv)

    rows = {q: analyze_graph(hexagon_graph(q), f"q={q}")[0].to_dict() for q in args.q}
    print(f"{'':<22}" + "".join(f"{'q=' + str(q):>12}" for q in args.q))
    for col in COLUMNS:
        print(f"{col:<22}" + "".join(f"{str(rows[q][col]):>12}" for q in args.q))


if __name__ == "__main__":
    main()
