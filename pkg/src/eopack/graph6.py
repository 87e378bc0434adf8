"""graph6 encoding for graphs with at most 62 vertices."""

from __future__ import annotations

from pathlib import Path
from typing import Iterator, TextIO

from .graph import Graph, GraphError, build_graph

HEADER = ">>graph6<<"
MAX_N = 62


class Graph6Error(GraphError):
    pass


def _pairs(n: int) -> Iterator[tuple[int, int]]:
    # column order: x(0,1), x(0,2), x(1,2), x(0,3), ...
    for v in range(1, n):
        for u in range(v):
            yield u, v


def write_graph6(g: Graph) -> str:
    if g.n > MAX_N:
        raise Graph6Error(f"graph6 output supports n <= {MAX_N}, got {g.n}")
    bitlist = [1 if g.has_edge(u, v) else 0 for u, v in _pairs(g.n)]
    bitlist += [0] * (-len(bitlist) % 6)
    out = [chr(g.n + 63)]
    for i in range(0, len(bitlist), 6):
        group = 0
        for b in bitlist[i : i + 6]:
            group = group << 1 | b
        out.append(chr(group + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER) :]
    if not data:
        raise Graph6Error("empty graph6 record")
    for ch in data:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside the graph6 range 63..126")
    n = ord(data[0]) - 63
    if n > MAX_N:
        raise Graph6Error("malformed n header (extended sizes are not supported)")
    nbits = n * (n - 1) // 2
    body = data[1:]
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(
            f"bad record length: n={n} needs {(nbits + 5) // 6} data bytes, got {len(body)}"
        )
    edges = []
    pairs = _pairs(n)
    k = 0
    for ch in body:
        group = ord(ch) - 63
        for shift in range(5, -1, -1):
            if k >= nbits:
                if group >> shift & 1:
                    raise Graph6Error("non-zero padding bits")
                continue
            u, v = next(pairs)
            if group >> shift & 1:
                edges.append((u, v))
            k += 1
    return build_graph(n, edges)


def iter_graph6(stream: TextIO) -> Iterator[tuple[int, Graph]]:
    """Yield ``(record_index, graph)`` for each non-blank line.

    Parse failures are re-raised with the 0-based record index attached.
    """
    index = 0
    for line in stream:
        line = line.strip()
        if not line:
            continue
        try:
            yield index, parse_graph6(line)
        except Graph6Error as exc:
            raise Graph6Error(f"record {index}: {exc}") from exc
        index += 1


def read_graph6_file(path: str | Path) -> list[Graph]:
    with open(path, encoding="ascii") as fh:
        return [g for _, g in iter_graph6(fh)]
