"""Canonical forms, isomorphism testing and the small connected-graph corpus.

The canonical labeling is found by individualization-refinement: the
vertex partition is refined to an equitable ordered partition, and every
non-singleton cell is split by individualizing each of its vertices in
turn. The certificate is the lexicographically least upper-triangle
adjacency bit string over all leaves of that search tree.

Vertices with identical open (or closed) neighbourhoods are swapped by an
automorphism, so only one vertex per twin class is individualized in each
cell. That keeps stars and pendant-heavy trees cheap.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .graph import Graph, GraphError, bits, build_graph, is_connected, relabel


def _refine(adj: tuple[int, ...], cells: list[int]) -> list[int]:
    """Equitable refinement of an ordered partition given as cell bitmasks.

    Each cell is split by neighbour count into the splitter cell; the parts
    keep their position and are ordered by increasing count, so the result
    depends only on the graph up to relabeling.
    """
    cells = list(cells)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(cells):
            splitter = cells[i]
            new_cells = []
            for cell in cells:
                if cell & (cell - 1) == 0:
                    new_cells.append(cell)
                    continue
                groups: dict[int, int] = {}
                for v in bits(cell):
                    c = bin(adj[v] & splitter).count("1")
                    groups[c] = groups.get(c, 0) | 1 << v
                if len(groups) > 1:
                    changed = True
                new_cells.extend(groups[c] for c in sorted(groups))
            if len(new_cells) != len(cells):
                cells = new_cells
                i = 0
                continue
            i += 1
        # one full pass with no split means the partition is equitable
    return cells


def _twin_representatives(adj: tuple[int, ...], cell: int) -> list[int]:
    reps = []
    seen_open = set()
    seen_closed = set()
    for v in bits(cell):
        open_nb = adj[v]
        closed_nb = adj[v] | 1 << v
        if open_nb in seen_open or closed_nb in seen_closed:
            continue
        seen_open.add(open_nb)
        seen_closed.add(closed_nb)
        reps.append(v)
    return reps


def _order_bits(adj: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    n = len(order)
    return tuple(
        (adj[order[u]] >> order[v]) & 1 for v in range(1, n) for u in range(v)
    )


def canonical_labeling(g: Graph) -> list[int]:
    """``order`` such that ``order[i]`` is the vertex placed at position ``i``."""
    n = g.n
    if n == 0:
        return []
    adj = g.adj
    # initial partition by degree
    by_degree: dict[int, int] = {}
    for v in range(n):
        d = g.degrees[v]
        by_degree[d] = by_degree.get(d, 0) | 1 << v
    start = _refine(adj, [by_degree[d] for d in sorted(by_degree)])

    best: list = [None, None]

    def search(cells: list[int]) -> None:
        target = next((i for i, c in enumerate(cells) if c & (c - 1)), None)
        if target is None:
            order = [c.bit_length() - 1 for c in cells]
            key = _order_bits(adj, order)
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, order
            return
        cell = cells[target]
        for v in _twin_representatives(adj, cell):
            split = cells[:target] + [1 << v, cell & ~(1 << v)] + cells[target + 1 :]
            search(_refine(adj, split))

    search(start)
    return best[1]


def _pack(n: int, key: tuple[int, ...]) -> bytes:
    out = bytearray(n.to_bytes(2, "big"))
    acc = 0
    for i, b in enumerate(key):
        acc = acc << 1 | b
        if i % 8 == 7:
            out.append(acc)
            acc = 0
    if len(key) % 8:
        out.append(acc << (8 - len(key) % 8))
    return bytes(out)


def canonical_graph(g: Graph) -> Graph:
    order = canonical_labeling(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return relabel(g, perm)


def canonical_form(g: Graph) -> bytes:
    """Certificate: equal bytes exactly when the graphs are isomorphic."""
    order = canonical_labeling(g)
    return _pack(g.n, _order_bits(g.adj, order))


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(g1.degrees) != sorted(g2.degrees):
        return False
    return canonical_form(g1) == canonical_form(g2)


MAX_ENUM_N = 7


@lru_cache(maxsize=None)
def _connected_by_order(n: int) -> tuple[Graph, ...]:
    # Every connected graph on n >= 2 vertices has a vertex whose removal
    # leaves it connected, so extending each (n-1)-vertex representative by
    # a new vertex with every non-empty neighbour set reaches all classes.
    if n == 1:
        return (build_graph(1, []),)
    found: dict[bytes, Graph] = {}
    for base in _connected_by_order(n - 1):
        for mask in range(1, 1 << (n - 1)):
            g = build_graph(n, list(base.edges) + [(v, n - 1) for v in bits(mask)])
            cert = canonical_form(g)
            if cert not in found:
                found[cert] = canonical_graph(g)
    return tuple(found[c] for c in sorted(found))


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """One canonically labeled representative per isomorphism class of
    connected graphs on ``n`` vertices, sorted by certificate."""
    if not 1 <= n <= MAX_ENUM_N:
        raise GraphError(
            f"built-in enumeration supports 1 <= n <= {MAX_ENUM_N}; "
            "load larger corpora from graph6 files"
        )
    if not all(is_connected(g) for g in _connected_by_order(n)):  # pragma: no cover
        raise AssertionError("enumerator produced a disconnected graph")
    yield from _connected_by_order(n)


def corpus(max_n: int, min_n: int = 1) -> list[Graph]:
    return [g for n in range(min_n, max_n + 1) for g in enumerate_connected_graphs(n)]
