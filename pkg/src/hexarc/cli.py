"""Command-line entry point and the analysis report.

Exit codes: 0 success, 1 a checked value disagreed with the expected-values
manifest, 2 bad input, 3 the automorphism search ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from . import ffgeom, formats
from .autsearch import DEFAULT_BUDGET, AutResult, BudgetExceeded, automorphisms
from .graphcore import (
    Graph,
    GraphError,
    IntersectionArray,
    bfs_layers,
    check_counting_identity,
    diameter,
    girth,
    intersection_array,
    is_bipartite,
)
from .permgrp import (
    PermError,
    PermGroup,
    generators_from_json,
    generators_to_json,
    orbital_graph,
    orbits,
    suborbits,
)
from .quotientcover import QuotientError, is_cover, semiregular_quotient
from .sarctrans import (
    NotArcTransitive,
    STABILIZER_ORDERS,
    count_s_arcs,
    s_arc_stabilizer_order,
    stabilizer_table_check,
    transitivity_degree,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

SCHEMA_VERSION = 1

SUFFIX_FORMATS = {
    ".g6": "graph6", ".graph6": "graph6",
    ".s6": "sparse6", ".sparse6": "sparse6",
    ".txt": "edgelist", ".edges": "edgelist", ".edgelist": "edgelist",
}


def load_expected() -> dict[str, Any]:
    text = resources.files("hexarc").joinpath("data/expected_values.json").read_text()
    doc = json.loads(text)
    return {k: v["value"] for k, v in doc["values"].items()}


@dataclass
class AnalysisReport:
    graphSource: str
    n: int
    edgeCount: int
    valency: int | str
    bipartite: bool
    partSizes: list[int] | None
    girth: int | None
    diameter: int
    kappa: list[dict[str, Any]]
    intersectionArray: dict[str, Any] | None
    nonDrgWitness: dict[str, Any] | None
    countingIdentity: bool | None
    autOrder: int | None = None
    autGenerators: int | None = None
    vertexTransitive: bool | None = None
    bipartitionStabilizerOrder: int | None = None
    vertexStabilizerOrder: int | None = None
    transitivityDegree: int | None = None
    sArcCount: int | None = None
    sArcStabilizerOrder: int | None = None
    stabilizerTableConsistent: bool | None = None
    suborbitLengths: list[int] | None = None
    orbitalRoundTrip: bool | None = None
    autError: str | None = None
    timings: dict[str, float] = field(default_factory=dict)
    schemaVersion: int = SCHEMA_VERSION

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class _Timer:
    def __init__(self):
        self.timings: dict[str, float] = {}

    def __call__(self, stage: str, fn, *args, **kwargs):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.timings[stage] = round(time.perf_counter() - t0, 4)


def analyze_graph(g: Graph, source: str = "", *, aut: bool = True,
                  budget: int = DEFAULT_BUDGET) -> tuple[AnalysisReport, AutResult | None]:
    """Compute every invariant the report carries.

    The automorphism result is returned alongside so callers can save the
    generators. A budget overrun is recorded in ``autError`` rather than
    raised.
    """
    timer = _Timer()
    bip = timer("bipartite", is_bipartite, g)
    gi = timer("girth", girth, g)
    diam = timer("diameter", diameter, g)
    k = g.valency()
    arr = timer("intersectionArray", intersection_array, g) if k is not None else None
    report = AnalysisReport(
        graphSource=source,
        n=g.n,
        edgeCount=g.edge_count,
        valency=k if k is not None else "irregular",
        bipartite=bip.bipartite,
        partSizes=list(bip.part_sizes) if bip.parts else None,
        girth=gi,
        diameter=diam,
        kappa=[{"root": 0, "kappa": list(bfs_layers(g, 0).kappa)}],
        intersectionArray=None,
        nonDrgWitness=None,
        countingIdentity=None,
    )
    if isinstance(arr, IntersectionArray):
        report.intersectionArray = {"d": arr.d, "b": list(arr.b), "c": list(arr.c),
                                    "a": list(arr.a), "kappa": list(arr.kappa)}
        report.countingIdentity = check_counting_identity(arr)
    elif arr is not None:
        report.nonDrgWitness = asdict(arr)

    result = None
    if aut:
        try:
            result = timer("automorphisms", automorphisms, g, budget=budget)
        except BudgetExceeded as exc:
            report.autError = str(exc)
    if result is not None:
        _group_fields(g, result, report, timer)
    report.timings = timer.timings
    return report, result


def _group_fields(g: Graph, result: AutResult, report: AnalysisReport, timer: _Timer) -> None:
    G = result.group(g.n)
    report.autOrder = result.group_order
    report.autGenerators = len(result.generators)
    reps = [orb[0] for orb in orbits(result.generators, g.n)] if result.generators else list(range(g.n))
    report.kappa = [{"root": r, "kappa": list(bfs_layers(g, r).kappa)} for r in reps]
    report.vertexTransitive = len(reps) == 1
    report.vertexStabilizerOrder = timer("stabilizer", lambda: G.stabilizer([0]).order())
    bip = is_bipartite(g)
    if bip.bipartite:
        colors = [0] * g.n
        for v in bip.parts[1]:
            colors[v] = 1
        report.bipartitionStabilizerOrder = timer(
            "bipartitionStabilizer", lambda: automorphisms(g, colors).group_order
        )
    if not report.vertexTransitive:
        return
    subs = timer("suborbits", suborbits, G, 0)
    report.suborbitLengths = [len(s) for s in subs]
    try:
        s = timer("transitivityDegree", transitivity_degree, g, G)
    except NotArcTransitive:
        s = 0
    report.transitivityDegree = s
    if s:
        report.sArcCount = count_s_arcs(g, s)
        report.sArcStabilizerOrder = timer("sArcStabilizer", s_arc_stabilizer_order, g, G, s)
        if g.valency() == 4 and s in STABILIZER_ORDERS:
            report.stabilizerTableConsistent = stabilizer_table_check(s, report.vertexStabilizerOrder)
    k = g.valency()
    matching = [sub for sub in subs if len(sub) == k]
    if k and len(matching) == 1:
        try:
            og = timer("orbitalGraph", orbital_graph, G, 0, matching[0])
            report.orbitalRoundTrip = og.edges() == g.edges()
        except PermError:
            report.orbitalRoundTrip = False


def reproduce(budget: int = DEFAULT_BUDGET) -> tuple[AnalysisReport, list[str]]:
    """Construct the q=3 hexagon graph, analyse it and list every value that
    disagrees with the expected-values manifest."""
    expected = load_expected()
    g = ffgeom.hexagon_graph(3)
    report, result = analyze_graph(g, "construct --q 3", budget=budget)
    got: dict[str, Any] = {
        "n": report.n,
        "valency": report.valency,
        "edgeCount": report.edgeCount,
        "bipartite": report.bipartite,
        "partSizes": report.partSizes,
        "girth": report.girth,
        "diameter": report.diameter,
        "kappa": report.kappa[0]["kappa"],
        "intersectionArray.b": (report.intersectionArray or {}).get("b"),
        "intersectionArray.c": (report.intersectionArray or {}).get("c"),
        "autOrder": report.autOrder,
        "simpleSocleOrder": report.bipartitionStabilizerOrder,
        "vertexStabilizerOrder": report.vertexStabilizerOrder,
        "transitivityDegree": report.transitivityDegree,
        "sevenArcCount": count_s_arcs(g, 7),
        "sevenArcStabilizerOrder": report.sArcStabilizerOrder,
        "orbitalSuborbitLength": (
            4 if report.orbitalRoundTrip and (report.suborbitLengths or []).count(4) == 1 else None
        ),
    }
    if result is not None:
        g2 = ffgeom.hexagon_graph(2)
        got["g2_2Order"] = automorphisms(g2, budget=budget).group_order
    mismatches = [f"{key}: expected {expected[key]!r}, got {got.get(key)!r}"
                  for key in expected if got.get(key) != expected[key]]
    if report.countingIdentity is not True:
        mismatches.append("countingIdentity: expected True")
    return report, mismatches


def _out_format(path: str, fmt: str | None) -> str:
    if fmt:
        return fmt
    return SUFFIX_FORMATS.get(Path(path).suffix.lower(), "sparse6")


def _load_group(gens_path: str, g: Graph) -> PermGroup:
    n, gens = generators_from_json(Path(gens_path).read_text())
    if n != g.n:
        raise PermError(f"generators act on {n} points, graph has {g.n} vertices")
    for gen in gens:
        if any(gen[v] not in g.adj[gen[u]] for u, v in g.edges()):
            raise PermError("a generator does not preserve the graph")
    return PermGroup(gens, n)


def cmd_construct(args) -> int:
    g = ffgeom.hexagon_graph(args.q)
    formats.write_graph(g, args.out, _out_format(args.out, args.format))
    print(json.dumps({"q": args.q, "n": g.n, "edges": g.edge_count, "out": args.out}))
    return EXIT_OK


def cmd_analyze(args) -> int:
    g = formats.read_graph(args.input)
    report, result = analyze_graph(g, str(args.input), aut=not args.no_aut, budget=args.budget)
    text = report.to_json()
    if args.report:
        Path(args.report).write_text(text + "\n")
    else:
        print(text)
    if args.gens_out and result is not None:
        Path(args.gens_out).write_text(json.dumps(generators_to_json(result.generators, g.n)) + "\n")
    return EXIT_BUDGET if report.autError else EXIT_OK


def cmd_aut(args) -> int:
    g = formats.read_graph(args.input)
    result = automorphisms(g, budget=args.budget)
    doc = generators_to_json(result.generators, g.n)
    Path(args.out).write_text(json.dumps(doc) + "\n")
    print(json.dumps({"order": result.group_order, "generators": len(result.generators)}))
    return EXIT_OK


def cmd_orbital(args) -> int:
    g = formats.read_graph(args.input)
    G = _load_group(args.gens, g)
    if not 0 <= args.vertex < g.n:
        raise PermError(f"vertex {args.vertex} out of range")
    matching = [s for s in suborbits(G, args.vertex) if len(s) == args.length]
    if not matching:
        raise PermError(f"no suborbit of length {args.length} at vertex {args.vertex}")
    if len(matching) > 1:
        raise PermError(
            f"{len(matching)} suborbits of length {args.length}; ambiguous: "
            + ", ".join(str(s.points[0]) for s in matching)
        )
    og = orbital_graph(G, args.vertex, matching[0])
    formats.write_graph(og, args.out, _out_format(args.out, args.format))
    print(json.dumps({
        "vertex": args.vertex,
        "suborbit": list(matching[0].points),
        "edges": og.edge_count,
        "equal": og.edges() == g.edges(),
    }))
    return EXIT_OK


def cmd_quotient(args) -> int:
    g = formats.read_graph(args.input)
    N = _load_group(args.gens, g)
    res = semiregular_quotient(g, N)
    formats.write_graph(res.quotient, args.out, _out_format(args.out, args.format))
    print(json.dumps({
        "blocks": len(res.blocks),
        "blockSize": len(res.blocks[0]),
        "quotientEdges": res.quotient.edge_count,
        "cover": bool(is_cover(g, res)),
        "blockOf": list(res.block_of),
    }))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    report, mismatches = reproduce(args.budget)
    if args.report:
        Path(args.report).write_text(report.to_json() + "\n")
    for line in mismatches:
        print("MISMATCH", line)
    if report.autError:
        print("BUDGET", report.autError)
        return EXIT_BUDGET
    print("all expected values reproduced" if not mismatches else f"{len(mismatches)} mismatches")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hexarc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write the incidence graph of H(q)")
    p.add_argument("--q", type=int, choices=ffgeom.SUPPORTED_ORDERS, required=True)
    p.add_argument("--format", choices=formats.FORMATS,
                   help="defaults to the --out suffix, else sparse6")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="compute the invariants report of a graph")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--report")
    p.add_argument("--no-aut", action="store_true", help="skip the group-dependent stages")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--gens-out", help="also save automorphism generators as JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("aut", help="save automorphism group generators as JSON")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("orbital", help="orbital graph of a suborbit, compared with the input")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=formats.FORMATS)
    p.set_defaults(func=cmd_orbital)

    p = sub.add_parser("quotient", help="quotient by a semiregular group and check the cover")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=formats.FORMATS)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("reproduce", help="construct q=3, analyse, compare with the manifest")
    p.add_argument("--report")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, PermError, QuotientError, formats.FormatError,
            ffgeom.GeometryError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
