"""Immutable simple graphs and distance combinatorics.

Everything here is exact integer BFS work: distance layers, layer sizes
(kappa), girth, diameter, bipartiteness and intersection arrays of
distance-regular graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Base class for rejected graph input."""


class LoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class NotRegularError(GraphError):
    pass


class Graph:
    """Undirected simple connected graph on vertices ``0..n-1``.

    Neighbour lists are sorted tuples. Instances are immutable and compare
    equal iff they have the same vertex count and edge set.
    """

    __slots__ = ("n", "adj", "_edges")

    def __init__(self, n: int, adj: Sequence[Sequence[int]], *, check: bool = True):
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._edges: tuple[tuple[int, int], ...] | None = None
        if check:
            self._validate()

    def _validate(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        for v, nbrs in enumerate(self.adj):
            for i, w in enumerate(nbrs):
                if not 0 <= w < self.n:
                    raise VertexRangeError(f"neighbour {w} of {v} out of range")
                if w == v:
                    raise LoopError(f"loop at vertex {v}")
                if i and nbrs[i - 1] == w:
                    raise DuplicateEdgeError(f"duplicate edge {v}-{w}")
        for v, nbrs in enumerate(self.adj):
            for w in nbrs:
                if v not in self.adj[w]:
                    raise GraphError(f"asymmetric adjacency {v}->{w}")
        if self.n and _component_size(self.adj, 0) != self.n:
            raise DisconnectedError("graph is not connected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], *,
                   connected: bool = True) -> "Graph":
        """Build and validate a graph; ``connected=False`` skips only the
        connectivity check (orbital graphs of bipartite graphs need it)."""
        adj: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexRangeError(f"edge ({u}, {v}) has endpoint outside 0..{n - 1}")
            if u == v:
                raise LoopError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        if connected and n and _component_size(adj, 0) != n:
            raise DisconnectedError("graph is not connected")
        return cls(n, adj, check=False)

    def is_connected(self) -> bool:
        return self.n == 0 or _component_size(self.adj, 0) == self.n

    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``, lexicographic."""
        if self._edges is None:
            self._edges = tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)
        return self._edges

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def valency(self) -> int | None:
        """Common degree, or None when the graph is irregular."""
        degs = {len(a) for a in self.adj}
        return degs.pop() if len(degs) == 1 else None

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


def _component_size(adj: Sequence[Sequence[int]], root: int) -> int:
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen)


from_edges = Graph.from_edges


@dataclass(frozen=True)
class DistanceData:
    root: int
    layers: tuple[tuple[int, ...], ...]
    dist: tuple[int, ...]

    @property
    def kappa(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.layers)

    @property
    def eccentricity(self) -> int:
        return len(self.layers) - 1


def bfs_layers(g: Graph, root: int) -> DistanceData:
    if not 0 <= root < g.n:
        raise VertexRangeError(f"root {root} out of range")
    dist = [-1] * g.n
    dist[root] = 0
    layers = [[root]]
    frontier = [root]
    adj = g.adj
    while frontier:
        nxt = []
        d = len(layers)
        for v in frontier:
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = d
                    nxt.append(w)
        if nxt:
            layers.append(sorted(nxt))
        frontier = nxt
    if -1 in dist:
        # only reachable through Graph(..., check=False)
        raise DisconnectedError("graph is not connected")
    return DistanceData(root, tuple(tuple(layer) for layer in layers), tuple(dist))


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or None for a tree.

    Runs a BFS from every root and records the first non-tree edge met at
    each level; the minimum over all roots is exact.
    """
    best = None
    adj = g.adj
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if best is not None and 2 * du + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    cyc = du + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


def eccentricities(g: Graph) -> list[int]:
    return [bfs_layers(g, v).eccentricity for v in range(g.n)]


def diameter(g: Graph) -> int:
    return max(eccentricities(g)) if g.n else 0


@dataclass(frozen=True)
class Bipartition:
    bipartite: bool
    parts: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    odd_cycle: tuple[int, ...] | None = None

    @property
    def part_sizes(self) -> tuple[int, int] | None:
        if self.parts is None:
            return None
        return len(self.parts[0]), len(self.parts[1])


def is_bipartite(g: Graph) -> Bipartition:
    """Two-colour ``g`` from vertex 0, or return an odd closed walk.

    The witness is a cycle ``(v0, ..., v_{2k})`` of odd length whose
    consecutive entries (and last/first) are adjacent.
    """
    if g.n == 0:
        return Bipartition(True, ((), ()))
    color = [-1] * g.n
    parent = [-1] * g.n
    color[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if color[w] < 0:
                color[w] = 1 - color[u]
                parent[w] = u
                queue.append(w)
            elif color[w] == color[u]:
                return Bipartition(False, odd_cycle=_tree_cycle(parent, u, w))
    parts = (
        tuple(v for v in range(g.n) if color[v] == 0),
        tuple(v for v in range(g.n) if color[v] == 1),
    )
    return Bipartition(True, parts)


def _tree_cycle(parent: list[int], u: int, w: int) -> tuple[int, ...]:
    path_u = [u]
    while parent[path_u[-1]] >= 0:
        path_u.append(parent[path_u[-1]])
    path_w = [w]
    while parent[path_w[-1]] >= 0:
        path_w.append(parent[path_w[-1]])
    # strip the common tail up to the lowest common ancestor
    while len(path_u) > 1 and len(path_w) > 1 and path_u[-2] == path_w[-2]:
        path_u.pop()
        path_w.pop()
    return tuple(path_u) + tuple(reversed(path_w[:-1]))


@dataclass(frozen=True)
class IntersectionArray:
    """Intersection numbers of a distance-regular graph.

    ``b = (b_0..b_{d-1})``, ``c = (c_1..c_d)``, ``a = (a_1..a_d)`` and
    ``kappa = (k_0..k_d)`` with ``k_i`` the size of the distance-``i`` layer.
    """

    d: int
    b: tuple[int, ...]
    c: tuple[int, ...]
    a: tuple[int, ...]
    kappa: tuple[int, ...]

    @property
    def valency(self) -> int:
        return self.b[0] if self.b else 0


@dataclass(frozen=True)
class NotDistanceRegular:
    """First place where the intersection numbers disagree."""

    root: int
    vertex: int
    distance: int
    expected: tuple[int, int, int]
    found: tuple[int, int, int]


def _layer_counts(g: Graph, data: DistanceData) -> list[tuple[int, int, int]]:
    dist = data.dist
    out = []
    for v in range(g.n):
        dv = dist[v]
        c = a = b = 0
        for w in g.adj[v]:
            dw = dist[w]
            if dw < dv:
                c += 1
            elif dw == dv:
                a += 1
            else:
                b += 1
        out.append((c, a, b))
    return out


def intersection_array(g: Graph) -> IntersectionArray | NotDistanceRegular:
    """Intersection array, checked at every vertex from every root."""
    k = g.valency()
    if k is None:
        raise NotRegularError("intersection_array needs a regular graph")
    ref = bfs_layers(g, 0)
    counts = _layer_counts(g, ref)
    per_dist = [counts[layer[0]] for layer in ref.layers]
    d = ref.eccentricity
    for root in range(g.n):
        data = ref if root == 0 else bfs_layers(g, root)
        counts = _layer_counts(g, data)
        # layer order guarantees a mismatch is seen before any distance > d
        for i, layer in enumerate(data.layers):
            for v in layer:
                if counts[v] != per_dist[i]:
                    return NotDistanceRegular(root, v, i, per_dist[i], counts[v])
    return IntersectionArray(
        d=d,
        b=tuple(per_dist[i][2] for i in range(d)),
        c=tuple(per_dist[i][0] for i in range(1, d + 1)),
        a=tuple(per_dist[i][1] for i in range(1, d + 1)),
        kappa=ref.kappa,
    )


def check_counting_identity(arr: IntersectionArray) -> bool:
    """Edges between consecutive layers counted from both sides agree."""
    if len(arr.kappa) != arr.d + 1 or len(arr.b) != arr.d or len(arr.c) != arr.d:
        return False
    return all(
        arr.kappa[i - 1] * arr.b[i - 1] == arr.kappa[i] * arr.c[i - 1]
        for i in range(1, arr.d + 1)
    )
