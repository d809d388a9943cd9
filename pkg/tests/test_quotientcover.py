import pytest
from hypothesis import given
from hypothesis import strategies as st

from hexarc import fixtures
from hexarc.graphcore import girth
from hexarc.permgrp import Perm, PermGroup
from hexarc.quotientcover import (
    DegenerateQuotient,
    IntraBlockEdge,
    NotSemiregular,
    QuotientError,
    is_cover,
    orbit_partition,
    quotient_graph,
    semiregular_quotient,
)


def antipodal_blocks(n):
    return orbit_partition([fixtures.antipodal_cycle(n)], n)


def test_orbit_partition():
    assert orbit_partition([Perm.from_cycles(4, (0, 1), (2, 3))], 4) == [[0, 1], [2, 3]]
    assert orbit_partition([], 3) == [[0], [1], [2]]
    blocks = orbit_partition([fixtures.rotation(12, 4)], 12)
    assert all(len(b) == 3 for b in blocks)


def test_quotients():
    q6 = quotient_graph(fixtures.cycle(6), antipodal_blocks(6))
    assert q6.quotient == fixtures.complete(3)
    qc = quotient_graph(fixtures.cube(), orbit_partition([fixtures.antipodal_cube()], 8))
    assert qc.quotient == fixtures.complete(4)
    q4 = quotient_graph(fixtures.cycle(4), antipodal_blocks(4))
    assert q4.quotient.n == 2 and q4.quotient.edge_count == 1


def test_quotient_errors():
    with pytest.raises(IntraBlockEdge):
        quotient_graph(fixtures.cycle(4), [[0, 1], [2, 3]])
    with pytest.raises(DegenerateQuotient):
        quotient_graph(fixtures.cycle(4), [[0, 1, 2, 3]])
    with pytest.raises(QuotientError):
        quotient_graph(fixtures.cycle(4), [[0, 2], [1]])


def test_cover_checks():
    c6 = fixtures.cycle(6)
    assert is_cover(c6, quotient_graph(c6, antipodal_blocks(6)))
    cube = fixtures.cube()
    assert is_cover(cube, quotient_graph(cube, orbit_partition([fixtures.antipodal_cube()], 8)))
    c4 = fixtures.cycle(4)
    check = is_cover(c4, quotient_graph(c4, antipodal_blocks(4)))
    assert not check
    assert check.vertex == 0
    assert check.multiplicities == ((1, 2),)


def test_semiregular_quotient():
    c12 = fixtures.cycle(12)
    res = semiregular_quotient(c12, PermGroup([fixtures.antipodal_cycle(12)]))
    assert res.quotient == fixtures.cycle(6)
    assert c12.n == len(res.blocks[0]) * res.quotient.n
    cube = fixtures.cube()
    res = semiregular_quotient(cube, PermGroup([fixtures.antipodal_cube()]))
    assert res.quotient == fixtures.complete(4)
    assert res.quotient.valency() == 3
    assert girth(cube) >= girth(res.quotient)


def test_semiregular_quotient_errors(gamma7, group7):
    c6 = fixtures.cycle(6)
    with pytest.raises(NotSemiregular):
        semiregular_quotient(c6, PermGroup([fixtures.reflection(6)]))
    with pytest.raises(QuotientError):
        semiregular_quotient(c6, PermGroup([Perm.from_cycles(6, (0, 2))]))
    with pytest.raises(DegenerateQuotient):
        semiregular_quotient(fixtures.cycle(4), PermGroup([fixtures.antipodal_cycle(4)]))
    with pytest.raises(NotSemiregular):
        semiregular_quotient(gamma7, group7.stabilizer([0]))


@given(st.integers(2, 8).flatmap(lambda m: st.tuples(st.just(m), st.sampled_from(
    [d for d in range(3, 3 * m + 1) if (3 * m) % d == 0]))))
def test_cyclic_quotients_of_cycles(args):
    # C_{3m} modulo rotation by d: d blocks of size n/d
    m, d = args
    n = 3 * m
    N = PermGroup([fixtures.rotation(n, d)])
    res = semiregular_quotient(fixtures.cycle(n), N)
    assert res.quotient == fixtures.cycle(d)
    assert n == len(res.blocks[0]) * res.quotient.n
    assert is_cover(fixtures.cycle(n), res)


def test_quotient_functorial_under_relabeling():
    cube = fixtures.cube()
    blocks = orbit_partition([fixtures.antipodal_cube()], 8)
    perm = [3, 6, 0, 5, 1, 7, 2, 4]
    relabeled = cube.relabel(perm)
    new_blocks = [[perm[v] for v in b] for b in blocks]
    a = quotient_graph(cube, blocks)
    b = quotient_graph(relabeled, new_blocks)
    assert a.quotient == b.quotient
