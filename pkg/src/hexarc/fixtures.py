"""Small named graphs and group actions used by tests and the CLI."""

from __future__ import annotations

from .graphcore import Graph
from .permgrp import Perm

# point-line incidence graph of the Fano plane: points 0..6, lines 7..13,
# line 7+i = {i, i+1, i+3} mod 7
HEAWOOD_EDGES = tuple(
    sorted((p, 7 + i) for i in range(7) for p in ((i, (i + 1) % 7, (i + 3) % 7)))
)


def heawood() -> Graph:
    return Graph.from_edges(14, HEAWOOD_EDGES)


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def triangle() -> Graph:
    return complete(3)


def cube() -> Graph:
    """3-cube on bit strings; antipode of v is ``v ^ 7``."""
    return Graph.from_edges(8, [(v, v ^ b) for v in range(8) for b in (1, 2, 4) if v < v ^ b])


def rotation(n: int, k: int = 1) -> Perm:
    return Perm((i + k) % n for i in range(n))


def reflection(n: int) -> Perm:
    return Perm((-i) % n for i in range(n))


def dihedral_generators(n: int) -> list[Perm]:
    return [rotation(n), reflection(n)]


def antipodal_cycle(n: int) -> Perm:
    if n % 2:
        raise ValueError("antipodal map needs an even cycle")
    return rotation(n, n // 2)


def antipodal_cube() -> Perm:
    return Perm(v ^ 7 for v in range(8))


FIXTURES = {
    "triangle": triangle,
    "path3": lambda: path(3),
    "c4": lambda: cycle(4),
    "c6": lambda: cycle(6),
    "c12": lambda: cycle(12),
    "k4": lambda: complete(4),
    "cube": cube,
    "heawood": heawood,
}
