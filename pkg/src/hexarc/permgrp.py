"""Permutation groups via a base and strong generating set.

Permutations act on the right: ``(p * q)[i] == q[p[i]]``, i.e. apply ``p``
first. A :class:`PermGroup` builds its stabilizer chain lazily with a
randomized Schreier-Sims pass and then certifies it deterministically by
sifting every Schreier generator, so the order it reports is exact.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphcore import Graph


class PermError(ValueError):
    pass


class DegreeMismatch(PermError):
    pass


class NotTransitive(PermError):
    pass


class NotSelfPaired(PermError):
    pass


class Perm:
    """A permutation of ``0..n-1`` stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], *, check: bool = True):
        self.images: tuple[int, ...] = tuple(images)
        self._hash = None
        if check and sorted(self.images) != list(range(len(self.images))):
            raise PermError("images do not form a permutation")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Perm":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(map(other.images.__getitem__, self.images), check=False)

    def __invert__(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv, check=False)

    inverse = __invert__

    def __pow__(self, k: int) -> "Perm":
        if k < 0:
            return (~self) ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return self.images == _identity_images(len(self.images))

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self) -> str:
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Perm<{self.degree}>{cyc or '()'}"


_IDENTITIES: dict[int, tuple[int, ...]] = {}


def _identity_images(n: int) -> tuple[int, ...]:
    ident = _IDENTITIES.get(n)
    if ident is None:
        ident = _IDENTITIES[n] = tuple(range(n))
    return ident


def _check_degree(gens: Sequence[Perm], n: int | None = None) -> int:
    degs = {g.degree for g in gens}
    if n is not None:
        degs.add(n)
    if len(degs) > 1:
        raise DegreeMismatch(f"generators of mixed degree {sorted(degs)}")
    if not degs:
        raise DegreeMismatch("degree unknown for an empty generator list")
    return degs.pop()


def orbit(gens: Sequence[Perm], point: int, n: int | None = None) -> list[int]:
    """Sorted orbit of ``point`` under the group generated by ``gens``."""
    if gens:
        n = _check_degree(gens, n)
    if n is not None and not 0 <= point < n:
        raise PermError(f"point {point} out of range")
    seen = {point}
    frontier = [point]
    imgs = [g.images for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for im in imgs:
                y = im[x]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def is_transitive(gens: Sequence[Perm], n: int) -> bool:
    if n <= 1:
        return True
    return len(orbit(gens, 0, n)) == n


def orbits(gens: Sequence[Perm], n: int) -> list[list[int]]:
    """Orbits as sorted lists, ordered by least element."""
    if gens:
        _check_degree(gens, n)
    out = []
    done = [False] * n
    for v in range(n):
        if not done[v]:
            orb = orbit(gens, v, n)
            for x in orb:
                done[x] = True
            out.append(orb)
    return out


class _Level:
    """One level of the stabilizer chain: a base point, the strong
    generators fixing all earlier base points, and an explicit transversal
    ``{orbit point: element mapping base point to it}``."""

    __slots__ = ("point", "gens", "transversal", "_inverses")

    def __init__(self, point: int, n: int):
        self.point = point
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {point: Perm.identity(n)}
        self._inverses: dict[int, Perm] = {}

    def inverse(self, x: int) -> Perm:
        inv = self._inverses.get(x)
        if inv is None:
            inv = self._inverses[x] = ~self.transversal[x]
        return inv

    def extend_orbit(self) -> None:
        trans = self.transversal
        frontier = list(trans)
        while frontier:
            nxt = []
            for x in frontier:
                u = trans[x]
                for g in self.gens:
                    y = g.images[x]
                    if y not in trans:
                        trans[y] = u * g
                        nxt.append(y)
            frontier = nxt


class PermGroup:
    """A permutation group given by generators.

    ``base_prefix`` forces the first base points of the chain, which makes
    iterated point stabilizers available directly from the chain.
    """

    def __init__(self, generators: Sequence[Perm], degree: int | None = None, *,
                 base_prefix: Sequence[int] = (), seed: int | None = 0,
                 known_order: int | None = None):
        if degree is None:
            degree = _check_degree(generators)
        else:
            if generators:
                _check_degree(generators, degree)
        self.degree = degree
        self.generators = [g for g in generators]
        self.base_prefix = tuple(base_prefix)
        self.seed = seed
        self._known_order = known_order
        self._levels: list[_Level] | None = None

    # -- chain construction -------------------------------------------------

    @property
    def chain(self) -> list[_Level]:
        if self._levels is None:
            self._levels = self._build()
        return self._levels

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lvl.point for lvl in self.chain)

    def _sift(self, levels: Sequence[_Level], g: Perm) -> tuple[Perm, int]:
        """Strip ``g`` through ``levels``; return the residue and the level
        where it dropped out (``len(levels)`` if it passed every level)."""
        for i, lvl in enumerate(levels):
            y = g.images[lvl.point]
            if y not in lvl.transversal:
                return g, i
            if y != lvl.point:
                g = g * lvl.inverse(y)
        return g, len(levels)

    def _insert(self, levels: list[_Level], g: Perm) -> bool:
        """Sift ``g`` and, if a non-trivial residue is left, add it as a
        strong generator. Returns True when the chain changed."""
        residue, _ = self._sift(levels, g)
        if residue.is_identity():
            return False
        img = residue.images
        depth = next((i for i, lvl in enumerate(levels) if img[lvl.point] != lvl.point), None)
        if depth is None:
            moved = next(x for x, y in enumerate(img) if x != y)
            levels.append(_Level(moved, self.degree))
            depth = len(levels) - 1
        # the residue fixes base points 0..depth-1, so it lies in every
        # stabilizer S^(j) with j <= depth
        for lvl in levels[: depth + 1]:
            lvl.gens.append(residue)
            lvl.extend_orbit()
        return True

    def _build(self) -> list[_Level]:
        n = self.degree
        levels = [_Level(b, n) for b in self.base_prefix]
        gens = [g for g in self.generators if not g.is_identity()]
        if not gens:
            return levels
        for g in gens:
            self._insert(levels, g)
        target = self._known_order
        rng = random.Random(self.seed)
        pool = (gens * (10 // len(gens) + 1))[: max(10, len(gens))]
        for _ in range(30):
            self._shake(pool, rng)
        # randomized phase: stop after a run of random elements that all sift
        quiet = 0
        while quiet < 30:
            if target is not None and self._order_of(levels) >= target:
                break
            if self._insert(levels, self._shake(pool, rng)):
                quiet = 0
            else:
                quiet += 1
        if target is None or self._order_of(levels) != target:
            self._verify(levels)
        return levels

    @staticmethod
    def _shake(pool: list[Perm], rng: random.Random) -> Perm:
        if len(pool) == 1:
            return pool[0]
        i, j = rng.sample(range(len(pool)), 2)
        pool[i] = pool[i] * pool[j] if rng.random() < 0.5 else pool[i] * ~pool[j]
        return pool[i]

    def _verify(self, levels: list[_Level]) -> None:
        """Deterministic Schreier-Sims closure: every Schreier generator of
        every level must sift to the identity through the levels below."""
        i = len(levels) - 1
        while i >= 0:
            lvl = levels[i]
            trans = lvl.transversal
            grew = False
            for x, u in list(trans.items()):
                for s in list(lvl.gens):
                    y = s.images[x]
                    us = u * s
                    if us.images == trans[y].images:
                        continue
                    residue, _ = self._sift(levels[i + 1:], us * lvl.inverse(y))
                    if not residue.is_identity():
                        self._insert(levels, residue)
                        grew = True
                        break
                if grew:
                    break
            # a new generator can reach any level at or above i; restart the
            # deeper levels too since the chain below may have grown
            i = len(levels) - 1 if grew else i - 1

    @staticmethod
    def _order_of(levels: list[_Level]) -> int:
        order = 1
        for lvl in levels:
            order *= len(lvl.transversal)
        return order

    # -- queries ------------------------------------------------------------

    def order(self) -> int:
        return self._order_of(self.chain)

    def basic_orbit_lengths(self) -> list[int]:
        return [len(lvl.transversal) for lvl in self.chain]

    def strong_generators(self) -> list[Perm]:
        out = []
        seen = set()
        for lvl in self.chain:
            for g in lvl.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch(f"degree {g.degree} != {self.degree}")
        residue, _ = self._sift(self.chain, g)
        return residue.is_identity()

    __contains__ = contains

    def is_transitive(self) -> bool:
        return is_transitive(self.generators, self.degree)

    def random_element(self, rng: random.Random) -> Perm:
        g = Perm.identity(self.degree)
        for lvl in reversed(self.chain):
            g = g * rng.choice(list(lvl.transversal.values()))
        return g

    def with_base(self, prefix: Sequence[int]) -> "PermGroup":
        """Same group, chain rebuilt with a forced base prefix."""
        return PermGroup(self.generators, self.degree, base_prefix=prefix,
                         seed=self.seed, known_order=self.order())

    def stabilizer(self, points: Sequence[int]) -> "PermGroup":
        """Pointwise stabilizer of ``points`` (in the given order)."""
        points = tuple(points)
        for v in points:
            if not 0 <= v < self.degree:
                raise PermError(f"point {v} out of range")
        grp = self if self.base[: len(points)] == points else self.with_base(points)
        levels = grp.chain
        k = len(points)
        gens = levels[k].gens if k < len(levels) else []
        order = grp._order_of(levels[k:])
        sub = PermGroup(list(gens), self.degree, seed=self.seed, known_order=order)
        # the tail of the chain is already a valid chain for the stabilizer
        sub._levels = _copy_levels(levels[k:], self.degree)
        return sub

    def to_json(self) -> dict:
        return generators_to_json(self.generators, self.degree)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, gens={len(self.generators)})"


def _copy_levels(levels: Sequence[_Level], n: int) -> list[_Level]:
    out = []
    for lvl in levels:
        new = _Level(lvl.point, n)
        new.gens = list(lvl.gens)
        new.transversal = dict(lvl.transversal)
        new._inverses = dict(lvl._inverses)
        out.append(new)
    return out


def group_order(G: PermGroup) -> int:
    return G.order()


def membership(G: PermGroup, g: Perm) -> bool:
    return G.contains(g)


def point_stabilizer(G: PermGroup, v: int) -> PermGroup:
    return G.stabilizer([v])


def is_semiregular(gens: Sequence[Perm], n: int | None = None) -> bool:
    """True iff only the identity of the generated group fixes a point."""
    gens = [g for g in gens]
    if not gens:
        return True
    n = _check_degree(gens, n)
    G = PermGroup(gens, n)
    order = G.order()
    # semiregular iff every orbit has length |G|
    return all(len(o) == order for o in orbits(gens, n))


@dataclass(frozen=True)
class Suborbit:
    base_point: int
    points: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.points)


def suborbits(G: PermGroup, v: int) -> list[Suborbit]:
    if not G.is_transitive():
        raise NotTransitive("suborbits need a transitive group")
    stab = G.stabilizer([v])
    orbs = orbits(stab.generators, G.degree) if stab.generators else [[x] for x in range(G.degree)]
    subs = [Suborbit(v, tuple(o)) for o in orbs]
    subs.sort(key=lambda s: (len(s.points), s.points[0]))
    return subs


def _mapping_element(G: PermGroup, v: int, w: int) -> Perm:
    """Some group element sending ``v`` to ``w`` (via a Schreier tree)."""
    trans = {v: Perm.identity(G.degree)}
    frontier = [v]
    while frontier and w not in trans:
        nxt = []
        for x in frontier:
            for g in G.generators:
                y = g.images[x]
                if y not in trans:
                    trans[y] = trans[x] * g
                    nxt.append(y)
        frontier = nxt
    if w not in trans:
        raise NotTransitive(f"{w} is not in the orbit of {v}")
    return trans[w]


def orbital_graph(G: PermGroup, v: int, sub: Suborbit) -> Graph:
    """Undirected graph whose edges are the G-images of ``{v, w}``, w in ``sub``."""
    if not G.is_transitive():
        raise NotTransitive("orbital graphs need a transitive group")
    if sub.base_point != v:
        raise PermError("suborbit belongs to a different base point")
    w = sub.points[0]
    if w == v:
        raise PermError("the trivial suborbit gives no edges")
    # self-paired: the element taking v to w must take w back into sub
    g = _mapping_element(G, v, w)
    back = ~g
    if back.images[v] not in set(sub.points):
        raise NotSelfPaired(f"orbital of {sub.points[:4]}... is not self-paired")
    start = {(min(v, x), max(v, x)) for x in sub.points}
    edges = set(start)
    frontier = list(start)
    imgs = [s.images for s in G.generators]
    while frontier:
        nxt = []
        for a, b in frontier:
            for im in imgs:
                x, y = im[a], im[b]
                e = (x, y) if x < y else (y, x)
                if e not in edges:
                    edges.add(e)
                    nxt.append(e)
        frontier = nxt
    return Graph.from_edges(G.degree, sorted(edges), connected=False)


def generators_to_json(gens: Sequence[Perm], degree: int) -> dict:
    return {"degree": degree, "generators": [list(g.images) for g in gens]}


def generators_from_json(doc: dict | str) -> tuple[int, list[Perm]]:
    if isinstance(doc, str):
        doc = json.loads(doc)
    n = int(doc["degree"])
    gens = [Perm(images) for images in doc["generators"]]
    if gens:
        _check_degree(gens, n)
    return n, gens


def closure(gens: Sequence[Perm], n: int, limit: int = 100_000) -> set[Perm]:
    """Every element of the generated group by breadth-first closure.

    Only meant as an oracle for small groups.
    """
    ident = Perm.identity(n)
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elems:
                    elems.add(y)
                    if len(elems) > limit:
                        raise PermError(f"closure exceeds {limit} elements")
                    nxt.append(y)
        frontier = nxt
    return elems
