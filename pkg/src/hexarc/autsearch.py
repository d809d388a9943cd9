"""Automorphism groups by individualization and refinement.

The search follows the usual first-path scheme: descend once to a discrete
partition (the reference leaf), then revisit the levels of that path from
the bottom up. At each level a vertex of the target cell is only explored
if it is not already in the orbit of the path vertex under the automorphisms
found so far; exploring it means finding one leaf below it that differs from
the reference leaf by an automorphism. The orbits obtained this way give the
group order as a product, and every generator is re-checked against the
edge set before anything is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graphcore import Graph
from .permgrp import Perm, PermGroup, orbit

DEFAULT_BUDGET = 10_000_000
BRUTE_FORCE_LIMIT = 20


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, budget: int):
        super().__init__(f"search explored {nodes} nodes, budget is {budget}")
        self.nodes = nodes
        self.budget = budget


class VerificationError(RuntimeError):
    """A generator returned by the search is not an automorphism."""


@dataclass(frozen=True)
class OrderedPartition:
    cells: tuple[tuple[int, ...], ...]

    @classmethod
    def unit(cls, n: int) -> "OrderedPartition":
        return cls((tuple(range(n)),)) if n else cls(())

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> "OrderedPartition":
        by_color: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            by_color.setdefault(c, []).append(v)
        return cls(tuple(tuple(by_color[c]) for c in sorted(by_color)))

    @property
    def cell_of(self) -> tuple[int, ...]:
        out = [0] * sum(len(c) for c in self.cells)
        for i, cell in enumerate(self.cells):
            for v in cell:
                out[v] = i
        return tuple(out)

    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.cells)

    def refines(self, other: "OrderedPartition") -> bool:
        """True iff every cell of ``self`` lies inside a cell of ``other``."""
        cell_of = other.cell_of
        return all(len({cell_of[v] for v in cell}) == 1 for cell in self.cells)


class _State:
    """Mutable ordered partition: ``order`` lists the vertices with each
    cell a contiguous segment; ``start[v]`` is the first position of v's
    cell and ``end[s]`` is one past the last position of the cell at s."""

    __slots__ = ("order", "pos", "start", "end", "ncells")

    def __init__(self, order, pos, start, end, ncells):
        self.order = order
        self.pos = pos
        self.start = start
        self.end = end
        self.ncells = ncells

    @classmethod
    def from_partition(cls, n: int, p: OrderedPartition) -> "_State":
        order = [v for cell in p.cells for v in cell]
        if sorted(order) != list(range(n)):
            raise ValueError("cells do not partition the vertex set")
        pos = [0] * n
        start = [0] * n
        end = [0] * n
        i = 0
        for cell in p.cells:
            s = i
            for v in cell:
                pos[v] = i
                start[v] = s
                i += 1
            end[s] = i
        return cls(order, pos, start, end, len(p.cells))

    def copy(self) -> "_State":
        return _State(self.order[:], self.pos[:], self.start[:], self.end[:], self.ncells)

    def cell_starts(self) -> list[int]:
        out = []
        i = 0
        n = len(self.order)
        while i < n:
            out.append(i)
            i = self.end[i]
        return out

    def to_partition(self) -> OrderedPartition:
        return OrderedPartition(tuple(
            tuple(sorted(self.order[s: self.end[s]])) for s in self.cell_starts()
        ))

    def is_discrete(self) -> bool:
        return self.ncells == len(self.order)

    def target_cell(self) -> int | None:
        """Start of the first smallest non-singleton cell."""
        best = None
        best_size = 0
        for s in self.cell_starts():
            size = self.end[s] - s
            if size > 1 and (best is None or size < best_size):
                best, best_size = s, size
                if size == 2:
                    break
        return best

    def individualize(self, v: int) -> int:
        """Split ``v`` off to the front of its cell; return the new
        singleton's start position."""
        s = self.start[v]
        e = self.end[s]
        p = self.pos[v]
        order, pos = self.order, self.pos
        u = order[s]
        order[s], order[p] = v, u
        pos[v], pos[u] = s, p
        for i in range(s + 1, e):
            self.start[order[i]] = s + 1
        self.end[s] = s + 1
        self.end[s + 1] = e
        self.ncells += 1
        return s


def _refine(adj, st: _State, queue: list[int], ref_trace=None):
    """Equitable refinement in place.

    Returns the trace (a list of hashable records describing every split,
    an isomorphism invariant of the input) or None if ``ref_trace`` was given
    and the trace diverged from it.
    """
    order, pos, start, end = st.order, st.pos, st.start, st.end
    n = len(order)
    in_queue = set(queue)
    trace = []
    qi = 0
    while qi < len(queue) and st.ncells < n:
        w_start = queue[qi]
        qi += 1
        in_queue.discard(w_start)
        cnt: dict[int, int] = {}
        for i in range(w_start, end[w_start]):
            for x in adj[order[i]]:
                cnt[x] = cnt.get(x, 0) + 1
        touched: dict[int, list[int]] = {}
        for x in cnt:
            touched.setdefault(start[x], []).append(x)
        record = [w_start]
        for s in sorted(touched):
            e = end[s]
            size = e - s
            hits = touched[s]
            if size == 1:
                record.append((s, cnt[hits[0]]))
                continue
            groups: dict[int, list[int]] = {}
            for x in hits:
                groups.setdefault(cnt[x], []).append(x)
            if len(groups) == 1 and len(hits) == size:
                record.append((s, cnt[hits[0]]))
                continue
            keys = sorted(groups)
            # lay out fragments as [non-hit][lowest count]...[highest count]
            ptr = e - 1
            frags = []
            for c in reversed(keys):
                grp = groups[c]
                for x in grp:
                    p = pos[x]
                    y = order[ptr]
                    order[p], order[ptr] = y, x
                    pos[y], pos[x] = p, ptr
                    ptr -= 1
                frags.append((ptr + 1, c, len(grp)))
            zero = ptr + 1 - s
            if zero:
                frags.append((s, 0, zero))
            frags.reverse()
            bounds = [f[0] for f in frags] + [e]
            for (fs, _, _), fe in zip(frags, bounds[1:]):
                end[fs] = fe
                for i in range(fs, fe):
                    start[order[i]] = fs
            st.ncells += len(frags) - 1
            record.append((s, tuple((c, sz) for _, c, sz in frags)))
            if s in in_queue:
                add = [f[0] for f in frags[1:]]
            else:
                largest = max(frags, key=lambda f: (f[2], -f[0]))
                add = [f[0] for f in frags if f is not largest]
            for fs in add:
                if fs not in in_queue:
                    in_queue.add(fs)
                    queue.append(fs)
        rec = tuple(record)
        if ref_trace is not None:
            k = len(trace)
            if k >= len(ref_trace) or ref_trace[k] != rec:
                return None
        trace.append(rec)
    if ref_trace is not None and len(trace) != len(ref_trace):
        return None
    return trace


def refine(g: Graph, p: OrderedPartition) -> OrderedPartition:
    """Coarsest equitable partition refining ``p``."""
    st = _State.from_partition(g.n, p)
    _refine(g.adj, st, st.cell_starts())
    return st.to_partition()


def _is_automorphism(g: Graph, images: Sequence[int]) -> bool:
    adj = g.adj
    for u, v in g.edges():
        if images[v] not in adj[images[u]]:
            return False
    return True


@dataclass
class SearchStats:
    nodes: int = 0
    refinements: int = 0
    leaves: int = 0
    base: tuple[int, ...] = ()
    orbit_lengths: tuple[int, ...] = ()


@dataclass
class AutResult:
    generators: list[Perm]
    group_order: int
    stats: SearchStats = field(default_factory=SearchStats)

    def group(self, n: int | None = None) -> PermGroup:
        if n is None:
            n = self.generators[0].degree if self.generators else 0
        return PermGroup(self.generators, n, known_order=self.group_order)


class _Search:
    def __init__(self, g: Graph, colors: Sequence[int] | None, budget: int):
        self.g = g
        self.adj = g.adj
        self.n = g.n
        self.budget = budget
        self.stats = SearchStats()
        p = OrderedPartition.from_colors(colors) if colors is not None else OrderedPartition.unit(g.n)
        self.root = _State.from_partition(g.n, p)
        self.generators: list[Perm] = []

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.stats.nodes > self.budget:
            raise BudgetExceeded(self.stats.nodes, self.budget)

    def _child(self, st: _State, v: int, ref_trace=None):
        child = st.copy()
        s = child.individualize(v)
        self.stats.refinements += 1
        trace = _refine(self.adj, child, [s], ref_trace)
        if trace is None:
            return None, None
        return child, trace

    def run(self) -> AutResult:
        self._tick()
        root = self.root
        _refine(self.adj, root, root.cell_starts())
        # first path
        path_states = [root]
        path_cells: list[tuple[int, ...]] = []
        path_vertices: list[int] = []
        path_traces: list[list] = []
        st = root
        while not st.is_discrete():
            s = st.target_cell()
            cell = tuple(sorted(st.order[s: st.end[s]]))
            v = cell[0]
            self._tick()
            st, trace = self._child(st, v)
            path_cells.append(cell)
            path_vertices.append(v)
            path_traces.append(trace)
            path_states.append(st)
        self.leaf = st.order[:]
        self.path_traces = path_traces
        self.stats.leaves += 1

        depth = len(path_vertices)
        found_at: list[list[Perm]] = [[] for _ in range(depth)]
        orbit_lengths = [1] * depth
        for level in range(depth - 1, -1, -1):
            b = path_vertices[level]
            cell = path_cells[level]
            gens = [x for lvl in range(level, depth) for x in found_at[lvl]]
            orb = set(orbit(gens, b, self.n)) if gens else {b}
            failed: set[int] = set()
            for w in cell:
                if w in orb or w in failed:
                    continue
                gamma = self._explore(path_states[level], w, level)
                if gamma is None:
                    # w is inequivalent; so is everything in its orbit
                    failed.update(orbit(gens, w, self.n) if gens else [w])
                    continue
                found_at[level].append(gamma)
                gens.append(gamma)
                orb = set(orbit(gens, b, self.n))
            orbit_lengths[level] = len(orb)

        generators = [x for lvl in found_at for x in lvl]
        order = 1
        for k in orbit_lengths:
            order *= k
        self.stats.base = tuple(path_vertices)
        self.stats.orbit_lengths = tuple(orbit_lengths)
        return AutResult(generators, order, self.stats)

    def _explore(self, st: _State, w: int, level: int) -> Perm | None:
        """Search below ``st`` individualized at ``w`` for a leaf equivalent
        to the reference leaf."""
        self._tick()
        child, _ = self._child(st, w, self.path_traces[level])
        if child is None:
            return None
        return self._descend(child, level + 1)

    def _descend(self, st: _State, level: int) -> Perm | None:
        if st.is_discrete():
            self.stats.leaves += 1
            images = [0] * self.n
            for a, b in zip(self.leaf, st.order):
                images[a] = b
            if _is_automorphism(self.g, images):
                return Perm(images, check=False)
            return None
        if level >= len(self.path_traces):
            return None
        s = st.target_cell()
        for v in sorted(st.order[s: st.end[s]]):
            self._tick()
            child, _ = self._child(st, v, self.path_traces[level])
            if child is None:
                continue
            gamma = self._descend(child, level + 1)
            if gamma is not None:
                return gamma
        return None


def automorphisms(g: Graph, colors: Sequence[int] | None = None, *,
                  budget: int = DEFAULT_BUDGET) -> AutResult:
    """Generators and order of the (colour-preserving) automorphism group."""
    if g.n == 0:
        return AutResult([], 1)
    result = _Search(g, colors, budget).run()
    for gamma in result.generators:
        if not _is_automorphism(g, gamma.images):
            raise VerificationError(f"search returned a non-automorphism {gamma!r}")
        if colors is not None and any(colors[v] != colors[gamma[v]] for v in range(g.n)):
            raise VerificationError("search returned a colour-changing permutation")
    certified = PermGroup(result.generators, g.n).order() if result.generators else 1
    if certified != result.group_order:
        raise VerificationError(
            f"orbit product {result.group_order} disagrees with Schreier-Sims order {certified}"
        )
    return result


def brute_force_automorphisms(g: Graph) -> AutResult:
    """Every automorphism by plain backtracking. Only for n <= 20."""
    n = g.n
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is limited to {BRUTE_FORCE_LIMIT} vertices, got {n}")
    adj = [set(a) for a in g.adj]
    deg = [len(a) for a in adj]
    found: list[Perm] = []
    images = [-1] * n
    used = [False] * n

    def extend(v: int) -> None:
        if v == n:
            found.append(Perm(images[:], check=False))
            return
        for x in range(n):
            if used[x] or deg[x] != deg[v]:
                continue
            if all((images[u] in adj[x]) == (u in adj[v]) for u in range(v)):
                images[v] = x
                used[x] = True
                extend(v + 1)
                used[x] = False
        images[v] = -1

    extend(0)
    stats = SearchStats(nodes=len(found), leaves=len(found))
    return AutResult(found, len(found), stats)


__all__ = [
    "AutResult",
    "BudgetExceeded",
    "OrderedPartition",
    "SearchStats",
    "VerificationError",
    "automorphisms",
    "brute_force_automorphisms",
    "refine",
]
