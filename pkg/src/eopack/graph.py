"""Immutable simple graphs on dense vertex ids and the structural predicates
the rest of the toolkit is built on.

Adjacency is held as one integer bitset per vertex; bit ``v`` of ``adj[u]``
is set when ``uv`` is an edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class GraphError(ValueError):
    """Malformed graph input (bad endpoint, self-loop, bad id)."""


class DisconnectedGraphError(GraphError):
    """Raised by operations that are only defined on connected graphs."""


class Edge(NamedTuple):
    u: int
    v: int
    id: int


def bits(mask: int) -> Iterable[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` is sorted and canonical (``u < v``); the index of a pair in
    ``edges`` is its edge id. Build instances with :func:`build_graph`.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.edges)})

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise GraphError(f"{u}-{v} is not an edge") from None

    def edge(self, eid: int) -> Edge:
        if not 0 <= eid < self.m:
            raise GraphError(f"edge id {eid} out of range 0..{self.m - 1}")
        u, v = self.edges[eid]
        return Edge(u, v, eid)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(self.degree(v) for v in range(self.n))

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Validate and canonicalize an edge list; duplicate pairs collapse."""
    if n < 0:
        raise GraphError(f"vertex count must be non-negative, got {n}")
    pairs = set()
    for pair in edge_list:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        pairs.add((u, v) if u < v else (v, u))
    return Graph(n, tuple(sorted(pairs)))


def from_adjacency(adj: Sequence[int]) -> Graph:
    n = len(adj)
    return build_graph(n, ((u, v) for u in range(n) for v in bits(adj[u]) if u < v))


# Named small graphs used throughout tests, docs and the CLI.

def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(s: int) -> Graph:
    """K_{1,s} with hub 0 and leaves 1..s."""
    return build_graph(s + 1, [(0, i) for i in range(1, s + 1)])


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    return build_graph(g.n, ((perm[u], perm[v]) for u, v in g.edges))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    return build_graph(
        g1.n + g2.n, list(g1.edges) + [(u + shift, v + shift) for u, v in g2.edges]
    )


# Distances and connectivity

def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distance from ``source``; -1 marks unreachable vertices."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in bits(g.adj[u]):
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    seen = 0
    comps = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = [w for w, d in enumerate(bfs_distances(g, v)) if d >= 0]
        for w in comp:
            seen |= 1 << w
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return min(bfs_distances(g, 0)) >= 0


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")


def diameter(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("diameter of the empty graph is undefined")
    best = 0
    for v in range(g.n):
        dist = bfs_distances(g, v)
        if min(dist) < 0:
            raise DisconnectedGraphError("diameter of a disconnected graph is undefined")
        best = max(best, max(dist))
    return best


# Induced stars

def _max_independent_in(g: Graph, mask: int, limit: int) -> int:
    """An independent subset of ``mask`` of size ``limit`` (as a bitmask), or 0.

    Plain include/exclude recursion; neighbourhoods are small.
    """

    def grow(cand: int, chosen: int, size: int) -> int:
        if size == limit:
            return chosen
        if bin(cand).count("1") + size < limit:
            return 0
        low = cand & -cand
        v = low.bit_length() - 1
        found = grow(cand & ~low & ~g.adj[v], chosen | low, size + 1)
        return found or grow(cand & ~low, chosen, size)

    return grow(mask, 0, 0)


def find_induced_star(g: Graph, s: int) -> tuple[int, list[int]] | None:
    """Centre and ``s`` pairwise non-adjacent neighbours, if K_{1,s} is induced."""
    if s < 1:
        raise GraphError("star size must be at least 1")
    for v in range(g.n):
        if g.degree(v) < s:
            continue
        leaves = _max_independent_in(g, g.adj[v], s)
        if leaves:
            return v, list(bits(leaves))
    return None


def contains_induced_star(g: Graph, s: int) -> bool:
    return find_induced_star(g, s) is not None


# Shape tags

COMPLETE = "complete"
STAR = "star"
ONCE_SUBDIVIDED_STAR = "once_subdivided_star"
PATH = "path"
CYCLE = "cycle"
OTHER = "other"


def is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def is_star(g: Graph) -> bool:
    """K_{1,s} with s >= 1."""
    if not is_tree(g) or g.n < 2:
        return False
    return g.max_degree == g.m


def is_once_subdivided_star(g: Graph) -> bool:
    """K_{1,m-1} (m >= 3) with exactly one edge subdivided once.

    Such a tree is a double star whose two centres are adjacent and one of
    them carries exactly one leaf.
    """
    if g.m < 3 or not is_tree(g):
        return False
    inner = [v for v in range(g.n) if g.degrees[v] >= 2]
    if len(inner) != 2 or not g.has_edge(*inner):
        return False
    return min(g.degrees[v] for v in inner) == 2


def classify_basic_shape(g: Graph) -> str:
    require_connected(g)
    if is_complete(g):
        return COMPLETE
    if is_star(g):
        return STAR
    if is_once_subdivided_star(g):
        return ONCE_SUBDIVIDED_STAR
    if is_tree(g) and g.max_degree <= 2:
        return PATH
    if g.n >= 3 and all(d == 2 for d in g.degrees):
        return CYCLE
    return OTHER


# Subgraphs

def induced_subgraph(g: Graph, vs: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """G[S]; returns the subgraph and the map old vertex -> new vertex."""
    verts = sorted(set(vs))
    for v in verts:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range 0..{g.n - 1}")
    pos = {v: i for i, v in enumerate(verts)}
    sub = build_graph(
        len(verts), ((pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos)
    )
    return sub, pos


def edge_induced_subgraph(
    g: Graph, ds: Iterable[int]
) -> tuple[Graph, dict[int, int], dict[int, int]]:
    """G<D>; returns the subgraph, the vertex map and the edge-id map."""
    ids = sorted(set(ds))
    pairs = [g.edge(i)[:2] for i in ids]
    verts = sorted({x for p in pairs for x in p})
    pos = {v: i for i, v in enumerate(verts)}
    sub = build_graph(len(verts), ((pos[u], pos[v]) for u, v in pairs))
    emap = {i: sub.edge_id(pos[u], pos[v]) for i, (u, v) in zip(ids, pairs)}
    return sub, pos, emap
