"""Quotients of graphs by vertex partitions and covering-map checks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .graphcore import Graph, GraphError
from .permgrp import Perm, PermError, PermGroup, is_semiregular, orbits


class QuotientError(ValueError):
    pass


class IntraBlockEdge(QuotientError):
    pass


class DegenerateQuotient(QuotientError):
    """The partition has too few blocks for the requested quotient."""


class NotSemiregular(QuotientError):
    pass


class NotCover(QuotientError):
    pass


@dataclass(frozen=True)
class QuotientResult:
    quotient: Graph
    block_of: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class CoverCheck:
    is_cover: bool
    vertex: int | None = None
    multiplicities: tuple[tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.is_cover


def orbit_partition(gens: Sequence[Perm], n: int) -> list[list[int]]:
    return orbits(gens, n)


def quotient_graph(g: Graph, blocks: Sequence[Sequence[int]]) -> QuotientResult:
    block_of = [-1] * g.n
    for b, block in enumerate(blocks):
        for v in block:
            if block_of[v] != -1:
                raise QuotientError(f"vertex {v} lies in two blocks")
            block_of[v] = b
    if -1 in block_of:
        raise QuotientError("blocks do not cover the vertex set")
    if len(blocks) <= 1:
        raise DegenerateQuotient(f"quotient would have {len(blocks)} vertex")
    edges = set()
    for u, v in g.edges():
        a, b = block_of[u], block_of[v]
        if a == b:
            raise IntraBlockEdge(f"edge {u}-{v} lies inside block {a}")
        edges.add((a, b) if a < b else (b, a))
    try:
        q = Graph.from_edges(len(blocks), sorted(edges))
    except GraphError as exc:
        raise QuotientError(str(exc)) from exc
    return QuotientResult(q, tuple(block_of), tuple(tuple(sorted(b)) for b in blocks))


def is_cover(g: Graph, q: QuotientResult) -> CoverCheck:
    """Check that the block map is a bijection on every neighbourhood.

    On failure, reports the first bad vertex and how many of its neighbours
    land in each block.
    """
    for v in range(g.n):
        images = Counter(q.block_of[w] for w in g.adj[v])
        target = set(q.quotient.adj[q.block_of[v]])
        if set(images) != target or any(c != 1 for c in images.values()):
            return CoverCheck(False, v, tuple(sorted(images.items())))
    return CoverCheck(True)


def semiregular_quotient(g: Graph, N: PermGroup) -> QuotientResult:
    if N.degree != g.n:
        raise PermError(f"group degree {N.degree} != {g.n} vertices")
    for gen in N.generators:
        img = gen.images
        if any(img[v] not in g.adj[img[u]] for u, v in g.edges()):
            raise QuotientError("a generator is not an automorphism of the graph")
    if not is_semiregular(N.generators, g.n):
        raise NotSemiregular("group has a non-identity element fixing a point")
    blocks = orbit_partition(N.generators, g.n)
    if len(blocks) < 3:
        raise DegenerateQuotient(f"only {len(blocks)} orbits; need at least 3")
    result = quotient_graph(g, blocks)
    check = is_cover(g, result)
    if not check:
        raise NotCover(
            f"vertex {check.vertex} maps onto blocks with multiplicities {check.multiplicities}"
        )
    if result.quotient.valency() != g.valency():
        raise NotCover("quotient valency differs from the graph's")
    return result
