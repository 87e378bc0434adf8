"""Edge open packings: the common-edge relation, validity, star
decompositions, the exact packing number and the injective chromatic index.

Two edges conflict when some third edge joins an endpoint of one to an
endpoint of the other. Validity of a packing is pairwise, so the maximum
packings are exactly the maximum independent sets of the conflict graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .graph import Graph, GraphError, bits, components, induced_subgraph

DEFAULT_GUARD_M = 24


class NotDisjointStars(ValueError):
    """G[D] has a component that is not a star; D was not a valid packing."""


class GuardExceeded(ValueError):
    pass


def _check_ids(g: Graph, *ids: int) -> None:
    for i in ids:
        if not 0 <= i < g.m:
            raise GraphError(f"edge id {i} out of range 0..{g.m - 1}")


def common_edge(g: Graph, e1: int, e2: int) -> int | None:
    """Id of an edge joining an endpoint of ``e1`` to one of ``e2``, or None.

    Shared endpoints alone do not count; the joining edge must differ from
    both ``e1`` and ``e2``.
    """
    _check_ids(g, e1, e2)
    if e1 == e2:
        raise GraphError("common edge needs two distinct edges")
    a, b = g.edges[e1]
    c, d = g.edges[e2]
    for x in (a, b):
        for y in (c, d):
            if x == y or not g.has_edge(x, y):
                continue
            eid = g.edge_id(x, y)
            if eid != e1 and eid != e2:
                return eid
    return None


def have_common_edge(g: Graph, e1: int, e2: int) -> bool:
    return common_edge(g, e1, e2) is not None


@dataclass(frozen=True)
class ConflictGraph:
    """Conflict relation over the edge ids of ``host`` as adjacency bitsets."""

    host: Graph
    adj: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.adj)

    def as_graph(self) -> Graph:
        from .graph import from_adjacency

        return from_adjacency(self.adj)


_conflict_cache: dict[Graph, ConflictGraph] = {}


def conflict_graph(g: Graph) -> ConflictGraph:
    cached = _conflict_cache.get(g)
    if cached is not None:
        return cached
    adj = [0] * g.m
    for i in range(g.m):
        for j in range(i + 1, g.m):
            if have_common_edge(g, i, j):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    cg = ConflictGraph(g, tuple(adj))
    if len(_conflict_cache) > 4096:
        _conflict_cache.clear()
    _conflict_cache[g] = cg
    return cg


@dataclass(frozen=True)
class EopSet:
    host: Graph
    members: tuple[int, ...]

    @cached_property
    def saturated(self) -> frozenset[int]:
        return frozenset(x for i in self.members for x in self.host.edges[i])

    @property
    def valid(self) -> bool:
        return first_violation(self.host, self.members) is None

    def edge_pairs(self) -> list[tuple[int, int]]:
        return [self.host.edges[i] for i in self.members]

    def __len__(self) -> int:
        return len(self.members)


def first_violation(g: Graph, ds: Iterable[int]) -> tuple[int, int] | None:
    ids = sorted(set(ds))
    _check_ids(g, *ids)
    for k, i in enumerate(ids):
        for j in ids[k + 1 :]:
            if have_common_edge(g, i, j):
                return i, j
    return None


def is_eop_set(g: Graph, ds: Iterable[int]) -> bool:
    return first_violation(g, ds) is None


# Star decompositions

@dataclass(frozen=True)
class StarComponent:
    centre: int
    leaves: tuple[int, ...]
    centre_choices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.leaves)


@dataclass(frozen=True)
class StarDecomposition:
    components: tuple[StarComponent, ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(sorted(c.size for c in self.components))

    def __len__(self) -> int:
        return len(self.components)


def star_decomposition(g: Graph, ds: Iterable[int]) -> StarDecomposition:
    """Components of G[V_D] as stars, ordered by least vertex.

    A K_{1,1} component lists both endpoints in ``centre_choices``.
    """
    ids = sorted(set(ds))
    if not ids:
        raise GraphError("star decomposition needs a non-empty edge set")
    _check_ids(g, *ids)
    verts = sorted({x for i in ids for x in g.edges[i]})
    sub, pos = induced_subgraph(g, verts)
    back = {p: v for v, p in pos.items()}
    comps = []
    for comp in components(sub):
        k = len(comp)
        edges_in = sum(sub.degree(v) for v in comp) // 2
        hubs = [v for v in comp if sub.degree(v) == k - 1]
        if k < 2 or edges_in != k - 1 or not hubs:
            raise NotDisjointStars(
                f"component {[back[v] for v in comp]} of G[D] is not a star"
            )
        if k == 2:
            a, b = back[comp[0]], back[comp[1]]
            comps.append(StarComponent(a, (b,), (a, b)))
        else:
            hub = back[hubs[0]]
            leaves = tuple(back[v] for v in comp if back[v] != hub)
            comps.append(StarComponent(hub, leaves, (hub,)))
    return StarDecomposition(tuple(comps))


# Maximum independent set on conflict graphs

def _popcount(x: int) -> int:
    return bin(x).count("1")


def _clique_cover_bound(adj: tuple[int, ...], cand: int) -> int:
    """Number of cliques in a greedy clique cover of ``cand``."""
    count = 0
    rest = cand
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        clique_common = adj[v] & rest
        rest ^= low
        members = low
        while clique_common:
            w_low = clique_common & -clique_common
            members |= w_low
            clique_common &= adj[w_low.bit_length() - 1]
        rest &= ~members
        count += 1
    return count


def max_independent_set(adj: tuple[int, ...], cand: int | None = None) -> int:
    """Bitmask of a maximum independent set within ``cand``.

    Branch and bound: branch on the vertex of highest degree inside the
    candidate set, prune with a greedy clique cover.
    """
    if cand is None:
        cand = (1 << len(adj)) - 1
    best = [0, 0]

    def expand(cand: int, chosen: int, size: int) -> None:
        # isolated candidates are always taken
        free = 0
        for v in bits(cand):
            if not adj[v] & cand:
                free |= 1 << v
        if free:
            cand &= ~free
            chosen |= free
            size += _popcount(free)
        if not cand:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _clique_cover_bound(adj, cand) <= best[0]:
            return
        v = max(bits(cand), key=lambda x: (_popcount(adj[x] & cand), -x))
        expand(cand & ~(1 << v) & ~adj[v], chosen | 1 << v, size + 1)
        expand(cand & ~(1 << v), chosen, size)

    expand(cand, 0, 0)
    return best[1]


def _lexmin_maximum(adj: tuple[int, ...], target: int) -> int:
    # lexicographically least sorted id tuple among maximum independent sets
    chosen = 0
    cand = (1 << len(adj)) - 1
    need = target
    for v in range(len(adj)):
        if not need:
            break
        if not cand >> v & 1:
            continue
        rest = cand & ~(1 << v) & ~adj[v] & ~((1 << (v + 1)) - 1)
        if _popcount(max_independent_set(adj, rest)) >= need - 1:
            chosen |= 1 << v
            cand = rest
            need -= 1
        else:
            cand &= ~(1 << v)
    return chosen


def eop_number_exact(g: Graph) -> tuple[int, EopSet]:
    """Packing number and the lexicographically least maximum packing."""
    if g.m == 0:
        return 0, EopSet(g, ())
    adj = conflict_graph(g).adj
    size = _popcount(max_independent_set(adj))
    witness = _lexmin_maximum(adj, size)
    return size, EopSet(g, tuple(bits(witness)))


def eop_number(g: Graph) -> int:
    if g.m == 0:
        return 0
    return _popcount(max_independent_set(conflict_graph(g).adj))


def eop_number_oracle(g: Graph, guard_m: int = DEFAULT_GUARD_M) -> int:
    """Largest packing by growing edge subsets depth-first.

    Only the pairwise ``have_common_edge`` test is used; this is the
    independent check on :func:`eop_number_exact`.
    """
    if g.m > guard_m:
        raise GuardExceeded(f"oracle limited to m <= {guard_m}, got m={g.m}")
    best = 0

    def grow(chosen: list[int], start: int) -> None:
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + (g.m - start) <= best:
            return
        for e in range(start, g.m):
            if all(not have_common_edge(g, d, e) for d in chosen):
                chosen.append(e)
                grow(chosen, e + 1)
                chosen.pop()

    grow([], 0)
    return best


def enumerate_eop_sets(g: Graph, size: int) -> Iterator[EopSet]:
    """Every valid packing of exactly ``size`` edges, in lexicographic id order."""
    if size < 1:
        raise ValueError("size must be at least 1")
    adj = conflict_graph(g).adj

    def grow(chosen: list[int], cand: int) -> Iterator[EopSet]:
        if len(chosen) == size:
            yield EopSet(g, tuple(chosen))
            return
        for e in bits(cand):
            if _popcount(cand >> e) < size - len(chosen):
                return
            chosen.append(e)
            yield from grow(chosen, cand & ~adj[e] & ~((1 << (e + 1)) - 1))
            chosen.pop()

    yield from grow([], (1 << g.m) - 1)


def enumerate_induced_matchings(g: Graph, size: int) -> Iterator[tuple[int, ...]]:
    """Matchings of ``size`` edges with no edge of ``g`` joining two of them."""
    if size < 1:
        raise ValueError("size must be at least 1")

    def grow(chosen: list[int], used: int, start: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for e in range(start, g.m):
            u, v = g.edges[e]
            if used >> u & 1 or used >> v & 1:
                continue
            if any(g.adj[u] & (1 << a | 1 << b) or g.adj[v] & (1 << a | 1 << b)
                   for a, b in (g.edges[d] for d in chosen)):
                continue
            chosen.append(e)
            yield from grow(chosen, used | 1 << u | 1 << v, e + 1)
            chosen.pop()

    yield from grow([], 0, 0)


# Injective edge colouring

def _greedy_coloring(adj: tuple[int, ...]) -> list[int]:
    n = len(adj)
    order = sorted(range(n), key=lambda v: (-_popcount(adj[v]), v))
    colors = [-1] * n
    for v in order:
        taken = {colors[w] for w in bits(adj[v]) if colors[w] >= 0}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    return colors


def _greedy_clique(adj: tuple[int, ...]) -> int:
    best = 0
    for v in range(len(adj)):
        size = 1
        cand = adj[v]
        while cand:
            w = max(bits(cand), key=lambda x: _popcount(adj[x] & cand))
            size += 1
            cand &= adj[w]
        best = max(best, size)
    return best


def _k_coloring(adj: tuple[int, ...], k: int) -> list[int] | None:
    n = len(adj)
    colors = [-1] * n

    def pick() -> int:
        # DSATUR order: most distinct neighbour colours, then degree
        best_v, best_key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = len({colors[w] for w in bits(adj[v]) if colors[w] >= 0})
            key = (sat, _popcount(adj[v]), -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        return best_v

    def solve(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        taken = {colors[w] for w in bits(adj[v]) if colors[w] >= 0}
        # a fresh colour is interchangeable with any other unused one
        for c in range(min(used + 1, k)):
            if c in taken:
                continue
            colors[v] = c
            if solve(done + 1, max(used, c + 1)):
                return True
            colors[v] = -1
        return False

    return list(colors) if solve(0, 0) else None


def injective_coloring(g: Graph, guard_m: int = DEFAULT_GUARD_M) -> tuple[int, list[int]]:
    """Injective chromatic index and an optimal colouring (colour per edge id)."""
    if g.m < 1:
        raise GraphError("injective chromatic index needs at least one edge")
    if g.m > guard_m:
        raise GuardExceeded(f"colouring limited to m <= {guard_m}, got m={g.m}")
    adj = conflict_graph(g).adj
    upper = _greedy_coloring(adj)
    hi = max(upper) + 1
    lo = _greedy_clique(adj)
    for k in range(lo, hi):
        found = _k_coloring(adj, k)
        if found is not None:
            return k, found
    return hi, upper


def injective_chromatic_index(g: Graph, guard_m: int = DEFAULT_GUARD_M) -> int:
    return injective_coloring(g, guard_m)[0]
