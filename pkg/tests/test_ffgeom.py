import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexarc import ffgeom
from hexarc.ffgeom import (
    FieldElement,
    GeometryError,
    HexagonValidationError,
    ProjPoint,
    build_hexagon,
    enumerate_quadric_points,
    grassmann,
    incidence_graph,
    is_hexagon_line,
    line_points,
    quadric_eval,
    singular_lines,
)
from hexarc.graphcore import is_bipartite


def isotropic_vector_count(q):
    # oracle: count nonzero zeros of the form over all of GF(q)^7, then
    # divide by the q-1 nonzero scalars
    zeros = sum(
        1
        for v in itertools.product(range(q), repeat=7)
        if any(v) and (v[0] * v[4] + v[1] * v[5] + v[2] * v[6] - v[3] ** 2) % q == 0
    )
    assert zeros % (q - 1) == 0
    return zeros // (q - 1)


def test_quadric_eval_examples():
    assert quadric_eval((1, 0, 0, 0, 0, 0, 0), 3) == 0
    assert quadric_eval((0, 0, 0, 1, 0, 0, 0), 3) == 2


@pytest.mark.parametrize("q,count", [(3, 364), (2, 63)])
def test_point_count_matches_brute_force(q, count):
    assert isotropic_vector_count(q) == count
    assert len(enumerate_quadric_points(q)) == count


def test_points_sorted_normalized_unique():
    pts = enumerate_quadric_points(3)
    assert pts == sorted(pts)
    assert len(set(pts)) == len(pts)
    for p in pts:
        assert ProjPoint.of(p.coords, 3) == p
        assert next(c for c in p.coords if c) == 1
    assert pts[0].coords == (0, 0, 0, 0, 0, 0, 1)


def test_unsupported_order():
    with pytest.raises(GeometryError):
        enumerate_quadric_points(5)
    with pytest.raises(GeometryError):
        ffgeom.normalize((0,) * 7, 3)


@given(st.lists(st.integers(0, 2), min_size=7, max_size=7), st.integers(1, 2))
def test_quadric_scales_by_square(v, lam):
    scaled = [lam * x for x in v]
    assert quadric_eval(scaled, 3) == (lam * lam * quadric_eval(v, 3)) % 3


def test_field_element_arithmetic():
    a, b = FieldElement(2, 3), FieldElement(2, 3)
    assert a + b == 1
    assert a * b == 1
    assert -a == 1
    assert a - 5 == 0
    assert FieldElement(7, 3).value == 1


def _two_points(q):
    pts = enumerate_quadric_points(q)
    return pts[0], pts[1]


@pytest.mark.parametrize("q", [2, 3])
def test_line_points(q):
    a, b = _two_points(q)
    pts = line_points(a, b)
    assert len(pts) == q + 1
    assert set(pts) == set(line_points(b, a))
    with pytest.raises(GeometryError):
        line_points(a, a)


def test_grassmann_examples():
    e0 = ProjPoint.of((1, 0, 0, 0, 0, 0, 0), 3)
    e1 = ProjPoint.of((0, 1, 0, 0, 0, 0, 0), 3)
    g = grassmann(e0, e1)
    assert g[0, 1] == 1 and sum(g.p) == 1
    assert grassmann(e1, e0) == g
    a, b = _two_points(3)
    for c in line_points(a, b):
        if c != a:
            assert grassmann(a, c) == grassmann(a, b)
    with pytest.raises(GeometryError):
        grassmann(a, ProjPoint(a.coords, 3))


@pytest.mark.parametrize("q,count", [(3, 364), (2, 63)])
def test_hexagon_line_count(q, count):
    lines = singular_lines(enumerate_quadric_points(q))
    # Q(6,q) has (q^6-1)(q^4-1)/((q-1)(q^2-1)) lines: 3640 for q=3, 315 for q=2
    assert len(lines) == (q**6 - 1) * (q**4 - 1) // ((q - 1) * (q * q - 1))
    assert sum(is_hexagon_line(gc) for gc, _ in lines) == count


@pytest.mark.parametrize("k", range(6))
def test_one_failed_condition_rejects(k):
    lines = singular_lines(enumerate_quadric_points(3))
    good = next(gc for gc, _ in lines if is_hexagon_line(gc))
    (i, j), _ = ffgeom.HEXAGON_CONDITIONS[k]
    idx = ffgeom.PAIR_INDEX[min(i, j), max(i, j)]
    p = list(good.p)
    p[idx] = (p[idx] + 1) % 3
    # each pair occurs in only one condition, so exactly condition k breaks
    assert not is_hexagon_line(ffgeom.GrassmannCoords(tuple(p), 3))


def test_wrong_sign_convention_fails_validation():
    conds = list(ffgeom.HEXAGON_CONDITIONS)
    lhs, rhs = conds[4]
    conds[4] = (lhs, rhs[::-1])
    with pytest.raises(HexagonValidationError):
        build_hexagon(3, conds)


@pytest.mark.parametrize("q", [2, 3])
def test_geometry_invariants(q, request):
    geom = request.getfixturevalue(f"hex{q}")
    count = {2: 63, 3: 364}[q]
    assert len(geom.points) == len(geom.lines) == count
    assert all(len(ls) == q + 1 for ls in geom.point_lines)
    assert all(len(ps) == q + 1 for ps in geom.lines)
    # double counting of incidences
    assert sum(map(len, geom.point_lines)) == sum(map(len, geom.lines)) == (q + 1) * count
    on_quadric = set(geom.points)
    for pts in geom.lines:
        a, b = geom.points[pts[0]], geom.points[pts[1]]
        span = line_points(a, b)
        assert [geom.points[i] for i in pts] == span
        assert all(p in on_quadric for p in span)


def test_build_is_deterministic(hex2):
    assert build_hexagon(2) == hex2


def test_incidence_graph_shape(gamma7, gamma2):
    assert (gamma7.n, gamma7.edge_count, gamma7.valency()) == (728, 1456, 4)
    assert (gamma2.n, gamma2.edge_count, gamma2.valency()) == (126, 189, 3)
    bip = is_bipartite(gamma7)
    assert bip.bipartite and bip.part_sizes == (364, 364)
    assert set(bip.parts[0]) == set(range(364))
