"""Construct the split Cayley hexagon incidence graphs and check their
distance, symmetry and arc-transitivity invariants."""

from .autsearch import AutResult, automorphisms, brute_force_automorphisms, refine
from .ffgeom import build_hexagon, hexagon_graph, incidence_graph
from .graphcore import (
    Graph,
    IntersectionArray,
    bfs_layers,
    check_counting_identity,
    diameter,
    girth,
    intersection_array,
    is_bipartite,
)
from .permgrp import Perm, PermGroup, orbit, orbital_graph, suborbits

__version__ = "0.1.0"

__all__ = [
    "AutResult",
    "Graph",
    "IntersectionArray",
    "Perm",
    "PermGroup",
    "automorphisms",
    "bfs_layers",
    "brute_force_automorphisms",
    "build_hexagon",
    "check_counting_identity",
    "diameter",
    "girth",
    "hexagon_graph",
    "incidence_graph",
    "intersection_array",
    "is_bipartite",
    "orbit",
    "orbital_graph",
    "refine",
    "suborbits",
]
