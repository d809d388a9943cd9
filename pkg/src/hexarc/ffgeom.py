"""Split Cayley hexagon H(q) inside the parabolic quadric Q(6, q).

Coordinates are plain integers in ``range(q)``; every computation is exact
modular arithmetic over a prime field. Points of H(q) are all points of
Q(6, q): ``X0*X4 + X1*X5 + X2*X6 = X3**2``. Lines of H(q) are the totally
singular lines of Q(6, q) whose Grassmann coordinates satisfy six linear
relations (see ``HEXAGON_CONDITIONS``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import total_ordering
from typing import Sequence

from .graphcore import Graph, diameter, girth

SUPPORTED_ORDERS = (2, 3)


class GeometryError(ValueError):
    pass


class HexagonValidationError(GeometryError):
    """A built geometry failed the generalized-hexagon checks."""


def _check_prime(q: int) -> None:
    if q < 2 or q >= 256 or any(q % d == 0 for d in range(2, int(q**0.5) + 1)):
        raise GeometryError(f"field order must be a prime below 256, got {q}")


@total_ordering
@dataclass(frozen=True)
class FieldElement:
    value: int
    q: int

    def __post_init__(self):
        if not 0 <= self.value < self.q:
            object.__setattr__(self, "value", self.value % self.q)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.q != self.q:
                raise GeometryError("mixing elements of different fields")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement((self.value + self._coerce(other)) % self.q, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement((self.value - self._coerce(other)) % self.q, self.q)

    def __rsub__(self, other):
        return FieldElement((self._coerce(other) - self.value) % self.q, self.q)

    def __mul__(self, other):
        return FieldElement((self.value * self._coerce(other)) % self.q, self.q)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.q, self.q)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.q == other.q
        if isinstance(other, int):
            return self.value == other % self.q
        return NotImplemented

    def __lt__(self, other):
        return self.value < self._coerce(other)

    def __hash__(self):
        return hash((self.value, self.q))

    def __int__(self):
        return self.value


def quadric_eval(v: Sequence[int], q: int) -> int:
    """Value of ``X0X4 + X1X5 + X2X6 - X3^2`` at ``v`` in GF(q)."""
    x = [int(c) for c in v]
    if len(x) != 7:
        raise GeometryError("expected a vector of length 7")
    return (x[0] * x[4] + x[1] * x[5] + x[2] * x[6] - x[3] * x[3]) % q


def polar_form(u: Sequence[int], v: Sequence[int], q: int) -> int:
    """Bilinear form with ``B(v, v) = 2 Q(v)``."""
    return (
        u[0] * v[4] + u[4] * v[0]
        + u[1] * v[5] + u[5] * v[1]
        + u[2] * v[6] + u[6] * v[2]
        - 2 * u[3] * v[3]
    ) % q


def normalize(v: Sequence[int], q: int) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    for c in v:
        c %= q
        if c:
            inv = pow(c, q - 2, q)
            return tuple((x * inv) % q for x in v)
    raise GeometryError("the zero vector is not a projective point")


@dataclass(frozen=True, order=True)
class ProjPoint:
    coords: tuple[int, ...]
    q: int

    @classmethod
    def of(cls, v: Sequence[int], q: int) -> "ProjPoint":
        return cls(normalize([int(c) for c in v], q), q)

    def __iter__(self):
        return iter(self.coords)


def enumerate_quadric_points(q: int) -> list[ProjPoint]:
    """All points of Q(6, q) in lexicographic order of normalized coordinates."""
    if q not in SUPPORTED_ORDERS:
        raise GeometryError(f"unsupported field order {q}; expected one of {SUPPORTED_ORDERS}")
    return _quadric_points(q)


def _quadric_points(q: int) -> list[ProjPoint]:
    pts = []
    # normalized vectors: leading 1 at position k, zeros before it
    for lead in range(7):
        for tail in itertools.product(range(q), repeat=6 - lead):
            v = (0,) * lead + (1,) + tail
            if quadric_eval(v, q) == 0:
                pts.append(ProjPoint(v, q))
    pts.sort()
    return pts


def line_points(a: ProjPoint, b: ProjPoint) -> list[ProjPoint]:
    q = a.q
    if a == b:
        raise GeometryError("a line needs two distinct points")
    pts = {ProjPoint.of(b.coords, q)}
    for t in range(q):
        pts.add(ProjPoint.of([(x + t * y) % q for x, y in zip(a.coords, b.coords)], q))
    return sorted(pts)


PAIRS = tuple(itertools.combinations(range(7), 2))
PAIR_INDEX = {pair: k for k, pair in enumerate(PAIRS)}


@dataclass(frozen=True, order=True)
class GrassmannCoords:
    """Plücker coordinates ``p_ij`` (i < j) of a line, first nonzero = 1."""

    p: tuple[int, ...]
    q: int

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if i == j:
            return 0
        if i < j:
            return self.p[PAIR_INDEX[i, j]]
        return -self.p[PAIR_INDEX[j, i]] % self.q


def grassmann(a: ProjPoint, b: ProjPoint) -> GrassmannCoords:
    q = a.q
    x, y = a.coords, b.coords
    raw = [(x[i] * y[j] - x[j] * y[i]) % q for i, j in PAIRS]
    if not any(raw):
        raise GeometryError("points are projectively dependent")
    return GrassmannCoords(normalize(raw, q), q)


# Each pair of index pairs (A, B) means p_A = p_B; a reversed pair such as
# (6, 4) reads as -p_46. With this convention the six relations cut out
# exactly the hexagon lines for q = 2 and q = 3 (checked by build_hexagon).
HEXAGON_CONDITIONS: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = (
    ((1, 2), (3, 4)),
    ((2, 0), (3, 5)),
    ((0, 1), (3, 6)),
    ((0, 3), (5, 6)),
    ((1, 3), (6, 4)),
    ((2, 3), (4, 5)),
)


def is_hexagon_line(g: GrassmannCoords, conditions=HEXAGON_CONDITIONS) -> bool:
    return all(g[lhs] == g[rhs] for lhs, rhs in conditions)


def singular_lines(points: Sequence[ProjPoint]) -> list[tuple[GrassmannCoords, tuple[int, ...]]]:
    """Every totally singular line of the quadric, with its point indices."""
    if not points:
        return []
    q = points[0].q
    index = {p: i for i, p in enumerate(points)}
    seen: dict[GrassmannCoords, tuple[int, ...]] = {}
    coords = [p.coords for p in points]
    for i, a in enumerate(coords):
        for j in range(i + 1, len(coords)):
            if polar_form(a, coords[j], q):
                continue
            gc = grassmann(points[i], points[j])
            if gc in seen:
                continue
            seen[gc] = tuple(sorted(index[p] for p in line_points(points[i], points[j])))
    return sorted(seen.items())


@dataclass(frozen=True)
class HexagonGeometry:
    q: int
    points: tuple[ProjPoint, ...]
    lines: tuple[tuple[int, ...], ...]
    point_lines: tuple[tuple[int, ...], ...]


def build_hexagon(q: int, conditions=HEXAGON_CONDITIONS, *, validate: bool = True) -> HexagonGeometry:
    """Points and lines of H(q), validated as a generalized hexagon.

    Lines are indexed in lexicographic order of their sorted point-index
    tuples. Validation is on unless a caller (the convention search) wants
    to inspect a failing candidate.
    """
    points = enumerate_quadric_points(q)
    lines = sorted(pts for gc, pts in singular_lines(points) if is_hexagon_line(gc, conditions))
    point_lines: list[list[int]] = [[] for _ in points]
    for li, pts in enumerate(lines):
        for p in pts:
            point_lines[p].append(li)
    geom = HexagonGeometry(q, tuple(points), tuple(lines), tuple(tuple(x) for x in point_lines))
    if validate:
        validate_hexagon(geom)
    return geom


def validate_hexagon(geom: HexagonGeometry) -> None:
    q = geom.q
    if len(geom.points) != len(geom.lines):
        raise HexagonValidationError(
            f"{len(geom.points)} points but {len(geom.lines)} lines"
        )
    if any(len(pts) != q + 1 for pts in geom.lines):
        raise HexagonValidationError(f"some line does not have {q + 1} points")
    if any(len(ls) != q + 1 for ls in geom.point_lines):
        raise HexagonValidationError(f"some point is not on {q + 1} lines")
    try:
        g = incidence_graph(geom)
    except ValueError as exc:
        raise HexagonValidationError(str(exc)) from exc
    gi, di = girth(g), diameter(g)
    if (gi, di) != (12, 6):
        raise HexagonValidationError(f"incidence graph has girth {gi}, diameter {di}; need 12, 6")


def incidence_graph(geom: HexagonGeometry) -> Graph:
    """Points are vertices ``0..P-1``, lines ``P..P+L-1``."""
    P = len(geom.points)
    return Graph.from_edges(
        P + len(geom.lines),
        ((p, P + li) for li, pts in enumerate(geom.lines) for p in pts),
    )


def hexagon_graph(q: int) -> Graph:
    return incidence_graph(build_hexagon(q))
