"""End-to-end acceptance checks for the hexagon graph pipeline.

Each test carries a ``criterion`` marker; the conftest prints one PASS/FAIL
line per criterion after the run. Runtime limits are asserted inside the
tests and cover all computation the criterion needs.
"""

import random
import time

import pytest

from hexarc import fixtures, formats
from hexarc.autsearch import automorphisms, brute_force_automorphisms
from hexarc.cli import main
from hexarc.graphcore import (
    bfs_layers,
    check_counting_identity,
    diameter,
    girth,
    intersection_array,
    is_bipartite,
)
from hexarc.permgrp import Perm, PermGroup, closure, orbital_graph, suborbits
from hexarc.quotientcover import is_cover, orbit_partition, quotient_graph, semiregular_quotient
from hexarc.sarctrans import (
    count_s_arcs,
    is_s_arc_transitive,
    s_arc_stabilizer_order,
    stabilizer_table_check,
    transitivity_degree,
)

KAPPA = (1, 4, 12, 36, 108, 324, 243)
AUT_ORDER = 8491392


class Clock:
    def __init__(self):
        self.t0 = time.perf_counter()

    def check(self, limit: float) -> float:
        elapsed = time.perf_counter() - self.t0
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        return elapsed


def construct(tmp_path, q, fmt="sparse6"):
    out = tmp_path / f"h{q}.{fmt}"
    assert main(["construct", "--q", str(q), "--format", fmt, "--out", str(out)]) == 0
    return formats.read_graph(out)


@pytest.mark.criterion(1, "construct --q 3 gives a 4-regular bipartite graph, 728 vertices, 1456 edges")
def test_construction(tmp_path):
    clock = Clock()
    g = construct(tmp_path, 3)
    assert g.n == 728 and g.edge_count == 1456
    assert g.is_connected()
    assert g.valency() == 4
    assert all(v not in g.adj[v] for v in range(g.n))
    bip = is_bipartite(g)
    assert bip.bipartite and bip.part_sizes == (364, 364)
    clock.check(10)


@pytest.mark.criterion(2, "girth 12, diameter 6, layers and intersection array at every root")
def test_distance_combinatorics(tmp_path):
    clock = Clock()
    g = construct(tmp_path, 3)
    assert girth(g) == 12
    assert diameter(g) == 6
    assert all(bfs_layers(g, r).kappa == KAPPA for r in range(g.n))
    ia = intersection_array(g)
    assert ia.b == (4, 3, 3, 3, 3, 3)
    assert ia.c == (1, 1, 1, 1, 1, 4)
    assert ia.kappa == KAPPA
    assert check_counting_identity(ia)
    assert all(KAPPA[i - 1] * ia.b[i - 1] == KAPPA[i] * ia.c[i - 1] for i in range(1, 7))
    clock.check(30)


@pytest.mark.criterion(3, "automorphism group order 8491392, vertex stabilizer 11664")
def test_automorphism_group(tmp_path):
    clock = Clock()
    g = construct(tmp_path, 3)
    result = automorphisms(g)
    for gen in result.generators:
        img = gen.images
        assert all(img[v] in g.adj[img[u]] for u, v in g.edges())
    assert result.group_order == AUT_ORDER == 2 * 4245696
    # an independent randomized chain, verified without the order hint
    G = PermGroup(result.generators, g.n, seed=12345)
    assert G.order() == AUT_ORDER
    stab = G.stabilizer([0]).order()
    assert stab == 11664
    assert stab * g.n == AUT_ORDER
    clock.check(300)


@pytest.mark.criterion(4, "7-arc-transitive, not 8-arc-transitive, 7-arc stabilizer of order 4")
def test_transitivity_degree(tmp_path):
    clock = Clock()
    g = construct(tmp_path, 3)
    G = automorphisms(g).group(g.n)
    assert is_s_arc_transitive(g, G, 7)
    assert not is_s_arc_transitive(g, G, 8)
    assert transitivity_degree(g, G) == 7
    arcs = count_s_arcs(g, 7)
    assert arcs == 2122848
    assert s_arc_stabilizer_order(g, G, 7) == 4 == AUT_ORDER // arcs
    assert stabilizer_table_check(7, G.stabilizer([0]).order())
    clock.check(120)


@pytest.mark.criterion(5, "unique suborbit of length 4; its orbital graph is the graph itself")
def test_orbital_round_trip(tmp_path):
    clock = Clock()
    g = construct(tmp_path, 3)
    G = automorphisms(g).group(g.n)
    assert G.is_transitive()
    # transitivity carries the suborbit pattern from one vertex to all;
    # a sample from both parts is checked directly as well
    rng = random.Random(7)
    sample = [0, 364] + rng.sample(range(g.n), 24)
    for v in sample:
        fours = [s for s in suborbits(G, v) if len(s) == 4]
        assert len(fours) == 1
        assert set(fours[0].points) == set(g.adj[v])
    fours = [s for s in suborbits(G, 0) if len(s) == 4]
    assert orbital_graph(G, 0, fours[0]).edges() == g.edges()
    clock.check(60)


@pytest.mark.criterion(6, "q=2 graph: cubic, bipartite, 126 vertices, girth 12, |Aut| = 12096 in 5 runs")
def test_q2_fixture(tmp_path):
    g = construct(tmp_path, 2, "graph6")
    assert g.n == 126 and g.is_connected() and g.valency() == 3
    assert is_bipartite(g).bipartite
    assert girth(g) == 12 and diameter(g) == 6
    orders = []
    for run in range(5):
        rng = random.Random(1000 + run)
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        result = automorphisms(h)
        # two chain constructions: search orbit product and randomized Schreier-Sims
        independent = PermGroup(result.generators, h.n, seed=run).order()
        assert independent == result.group_order
        orders.append(result.group_order)
    assert len(set(orders)) == 1
    assert orders[0] % 12096 == 0
    assert orders[0] == 12096


SMALL = {"triangle": 6, "path3": 2, "c4": 8, "k4": 24, "heawood": 336, "cube": 48}


@pytest.mark.criterion(7, "search agrees with brute force on every fixture with n <= 20")
def test_oracle_equivalence():
    clock = Clock()
    for name, order in SMALL.items():
        g = fixtures.FIXTURES[name]()
        assert g.n <= 20
        assert automorphisms(g).group_order == brute_force_automorphisms(g).group_order == order
    clock.check(60)


def random_perm(rng, n):
    images = list(range(n))
    rng.shuffle(images)
    return Perm(images)


@pytest.mark.criterion(8, "Schreier-Sims order and membership match closure on 100 random groups")
def test_schreier_sims():
    clock = Clock()
    rng = random.Random(2024)
    for _ in range(100):
        n = rng.randint(1, 8)
        gens = [random_perm(rng, n) for _ in range(rng.randint(1, 3))]
        G = PermGroup(gens, n, seed=rng.randrange(1 << 30))
        elements = closure(gens, n, limit=50000)
        assert G.order() == len(elements)
        for _ in range(10):
            x = random_perm(rng, n)
            assert G.contains(x) == (x in elements)
        for x in list(elements)[:10]:
            assert G.contains(x)
    clock.check(60)


@pytest.mark.criterion(9, "quotients of C12, C4 and the cube; cover verdicts and block counts")
def test_quotients():
    c12 = fixtures.cycle(12)
    res = semiregular_quotient(c12, PermGroup([fixtures.antipodal_cycle(12)]))
    assert res.quotient == fixtures.cycle(6) and is_cover(c12, res)

    c4 = fixtures.cycle(4)
    res4 = quotient_graph(c4, orbit_partition([fixtures.antipodal_cycle(4)], 4))
    assert res4.quotient == fixtures.complete(2)
    check = is_cover(c4, res4)
    assert not check
    assert max(m for _, m in check.multiplicities) == 2

    cube = fixtures.cube()
    resc = semiregular_quotient(cube, PermGroup([fixtures.antipodal_cube()]))
    assert resc.quotient == fixtures.complete(4) and is_cover(cube, resc)

    for g, r in ((c12, res), (c4, res4), (cube, resc)):
        assert g.n == len(r.blocks[0]) * r.quotient.n


@pytest.mark.criterion(10, "graph6 and sparse6 round trip bit-exactly, including 728 vertices")
def test_format_fidelity(tmp_path):
    graphs = [f() for f in fixtures.FIXTURES.values()] + [construct(tmp_path, 3)]
    for g in graphs:
        for fmt in ("graph6", "sparse6"):
            data = formats.encode(g, fmt)
            back = formats.decode(data, fmt)
            assert back == g
            assert formats.encode(back, fmt) == data
    big = graphs[-1]
    g6 = formats.encode(big, "graph6")
    assert g6[:4] == bytes([126, 63 + (728 >> 12), 63 + ((728 >> 6) & 63), 63 + (728 & 63)])
    s6 = formats.encode(big, "sparse6")
    assert s6[1:5] == g6[:4]
