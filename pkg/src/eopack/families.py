"""Generators and recognizers for the extremal families A1-A7, R1-R14 and
S1-S15, the extremal-class predictor, and the family audit.

Every generator documents its labeling. Pendant counts at different
attachment sites are independent parameters. "Attaching a pendant vertex of
a path or star to v" identifies that pendant vertex with ``v``. Path names
count vertices: P3 has two edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping

from .canon import canonical_form
from .graph import (
    Graph,
    GraphError,
    build_graph,
    is_once_subdivided_star,
    is_star,
    require_connected,
)
from .packing import eop_number


class FamilyError(ValueError):
    pass


class _Builder:
    def __init__(self, n: int = 0, edges=()):
        self.n = n
        self.edges = list(edges)

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def pendants(self, v: int, count: int) -> None:
        for _ in range(count):
            self.edges.append((v, self.vertex()))

    def hang_path(self, v: int, length: int) -> int:
        """Hang a path of ``length`` edges at ``v``; returns its far end."""
        cur = v
        for _ in range(length):
            nxt = self.vertex()
            self.edges.append((cur, nxt))
            cur = nxt
        return cur

    def graph(self) -> Graph:
        return build_graph(self.n, self.edges)


def _path(k: int) -> _Builder:
    return _Builder(k, [(i, i + 1) for i in range(k - 1)])


def _cycle(k: int) -> _Builder:
    return _Builder(k, [(i, (i + 1) % k) for i in range(k)])


def _star(s: int) -> _Builder:
    return _Builder(s + 1, [(0, i) for i in range(1, s + 1)])


# Constructions. ``p`` maps parameter names to values.

def _a_path(k):
    def make(p):
        b = _path(k)
        b.pendants(1, p["r1"])
        b.pendants(k - 2, p["r2"])
        return b.graph()

    return make


def _cycle_pendants(k):
    def make(p):
        b = _cycle(k)
        b.pendants(0, p["t"])
        return b.graph()

    return make


def _a6(p):
    b = _star(p["s"])
    b.hang_path(1, 1)
    b.hang_path(2, 1)
    return b.graph()


def _a7(p):
    b = _star(p["s"])
    b.pendants(1, 2)
    return b.graph()


def _r1(p):
    b = _star(p["s"])
    b.pendants(1, 3)
    return b.graph()


def _r2(p):
    b = _star(p["s"])
    b.hang_path(1, 2)
    b.pendants(2, 1)
    return b.graph()


def _r3(p):
    b = _star(p["s"])
    b.pendants(1, 2)
    b.pendants(2, 1)
    return b.graph()


def _r4(p):
    b = _star(p["s"])
    b.hang_path(1, 2)
    b.pendants(1, 1)
    return b.graph()


def _r5(p):
    b = _star(p["s"])
    x, y = b.vertex(), b.vertex()
    b.edges += [(1, x), (1, y), (x, y)]
    return b.graph()


def _r6(p):
    b = _star(p["s"])
    for leaf in (1, 2, 3):
        b.hang_path(leaf, 1)
    return b.graph()


def _r7(p):
    b = _cycle(3)
    b.pendants(0, p["t"])
    b.pendants(1, 1)
    return b.graph()


def _r8(p):
    b = _cycle(4)
    b.pendants(0, p["t"])
    b.pendants(2, 1)
    return b.graph()


def _r9(p):
    # K4 - e on 0..3 without edge 23; 0 and 1 have degree 3
    b = _Builder(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    b.pendants(0, p["t"])
    return b.graph()


def _r10(p):
    # K4 - e with the diagonal 01 subdivided by vertex 4
    b = _Builder(5, [(0, 2), (0, 3), (1, 2), (1, 3), (0, 4), (4, 1)])
    b.pendants(0, p["t"])
    return b.graph()


def _apex_gadget(k, gadget):
    # C_k + t pendants at vertex 0 + one gadget at vertex 0
    def make(p):
        b = _cycle(k)
        b.pendants(0, p["t"])
        b.hang_path(0, gadget)
        return b.graph()

    return make


def _r13(p):
    b = _cycle(4)
    b.pendants(0, p["t"])
    b.pendants(1, 1)
    return b.graph()


def _s1(p):
    b = _path(5)
    b.pendants(1, p["r1"])
    b.pendants(3, p["r2"])
    b.pendants(2, 1)
    return b.graph()


def _s_next_to_support(k):
    # P_k + r1 at support 1 + r2 at support k-2 + one pendant at vertex 2
    def make(p):
        b = _path(k)
        b.pendants(1, p["r1"])
        b.pendants(k - 2, p["r2"])
        b.pendants(2, 1)
        return b.graph()

    return make


def _s4(p):
    b = _path(7)
    b.pendants(1, p["r1"])
    b.pendants(5, p["r2"])
    b.pendants(3, 1)
    return b.graph()


def _s_support_and_next(k):
    # P_k + r at support k-2 + t at vertex 2 (interior neighbour of support 1)
    def make(p):
        b = _path(k)
        b.pendants(k - 2, p["r"])
        b.pendants(2, p["t"])
        return b.graph()

    return make


def _s9(p):
    b = _cycle(3)
    far = b.hang_path(0, 2)
    b.pendants(far, p["t"])
    return b.graph()


def _s10(p):
    b = _cycle(4)
    far = b.hang_path(0, 2)
    b.pendants(far, p["t1"])
    b.pendants(2, p["t2"])
    return b.graph()


def _s11(p):
    # C4 + t pendants at 0 + K_{1,r} whose leaf is identified with vertex 2
    b = _cycle(4)
    b.pendants(0, p["t"])
    centre = b.hang_path(2, 1)
    b.pendants(centre, p["r"] - 1)
    return b.graph()


def _triad(legs):
    # hub 0; each leg a path from the hub; r_i pendants at the support of leg i
    def make(p):
        b = _Builder(1)
        for i, length in enumerate(legs, start=1):
            cur = 0
            for step in range(length):
                nxt = b.vertex()
                b.edges.append((cur, nxt))
                if step == length - 2:
                    support = nxt
                cur = nxt
            b.pendants(support, p[f"r{i}"])
        return b.graph()

    return make


@dataclass(frozen=True)
class Param:
    name: str
    lower: int
    weight: int = 1  # vertices added per unit


@dataclass(frozen=True)
class Family:
    id: str
    target: int  # 2 for the m-2 families, 3 for m-3
    params: tuple[Param, ...]
    base_n: int
    build: Callable[[Mapping[str, int]], Graph] = field(repr=False)
    description: str
    labeling: str
    flagged: bool = False

    def order(self, p: Mapping[str, int]) -> int:
        return self.base_n + sum(q.weight * p[q.name] for q in self.params)

    def check(self, p: Mapping[str, int]) -> dict[str, int]:
        names = [q.name for q in self.params]
        extra = set(p) - set(names)
        if extra:
            raise FamilyError(f"{self.id} has no parameter(s) {', '.join(sorted(extra))}")
        out = {}
        for q in self.params:
            if q.name not in p:
                raise FamilyError(f"{self.id} requires parameter {q.name}")
            value = int(p[q.name])
            if value < q.lower:
                raise FamilyError(f"{self.id} requires {q.name} ≥ {q.lower}")
            out[q.name] = value
        return out


def _fam(id, target, params, base_n, build, description, labeling, flagged=False):
    ps = tuple(Param(*q) if isinstance(q, tuple) else Param(q, 0) for q in params)
    return Family(id, target, ps, base_n, build, description, labeling, flagged)


_R = [("r1", 0), ("r2", 0)]

FAMILIES: dict[str, Family] = {
    f.id: f
    for f in [
        _fam("A1", 2, _R, 5, _a_path(5), "P5 + r1, r2 pendants at its two support vertices",
             "path 0..4; supports 1 and 3"),
        _fam("A2", 2, _R, 6, _a_path(6), "P6 + r1, r2 pendants at its two support vertices",
             "path 0..5; supports 1 and 4"),
        _fam("A3", 2, _R, 7, _a_path(7), "P7 + r1, r2 pendants at its two support vertices",
             "path 0..6; supports 1 and 5"),
        _fam("A4", 2, [("t", 0)], 3, _cycle_pendants(3), "C3 + t pendants at one vertex",
             "cycle 0,1,2; pendants at 0"),
        _fam("A5", 2, [("t", 0)], 4, _cycle_pendants(4), "C4 + t pendants at one vertex",
             "cycle 0..3; pendants at 0"),
        _fam("A6", 2, [("s", 3)], 3, _a6, "K1,s with two edges subdivided once",
             "hub 0, leaves 1..s; leaves 1 and 2 extended"),
        _fam("A7", 2, [("s", 3)], 3, _a7, "K1,s + two pendants at one leaf",
             "hub 0, leaves 1..s; pendants at leaf 1"),
        _fam("R1", 3, [("s", 4)], 4, _r1, "K1,s + three pendants at one leaf",
             "hub 0, leaves 1..s; pendants at leaf 1"),
        _fam("R2", 3, [("s", 3)], 4, _r2,
             "K1,s + 2-edge path hung at one leaf + one pendant at another leaf",
             "hub 0, leaves 1..s; path at leaf 1, pendant at leaf 2"),
        _fam("R3", 3, [("s", 3)], 4, _r3,
             "K1,s + two pendants at one leaf + one pendant at another leaf",
             "hub 0, leaves 1..s; two pendants at leaf 1, one at leaf 2"),
        _fam("R4", 3, [("s", 3)], 4, _r4,
             "K1,s + 2-edge path and one pendant at the same leaf",
             "hub 0, leaves 1..s; both attached at leaf 1"),
        _fam("R5", 3, [("s", 2)], 3, _r5, "K1,s + pendant triangle at one leaf",
             "hub 0, leaves 1..s; triangle on leaf 1 and two new vertices"),
        _fam("R6", 3, [("s", 4)], 4, _r6, "K1,s with three edges subdivided once",
             "hub 0, leaves 1..s; leaves 1, 2, 3 extended"),
        _fam("R7", 3, [("t", 1)], 4, _r7,
             "C3 + t pendants at one vertex + one pendant at another",
             "cycle 0,1,2; t pendants at 0, one at 1"),
        _fam("R8", 3, [("t", 1)], 5, _r8,
             "C4 + t pendants at one vertex + one pendant at the opposite vertex",
             "cycle 0..3; t pendants at 0, one at 2"),
        _fam("R9", 3, [("t", 0)], 4, _r9, "K4-e + t pendants at a degree-3 vertex",
             "edges 01 02 03 12 13; pendants at 0"),
        _fam("R10", 3, [("t", 0)], 5, _r10,
             "K4-e with its diagonal subdivided + t pendants at an end of the diagonal",
             "edges 02 03 12 13 04 41; pendants at 0"),
        _fam("R11", 3, [("t", 0)], 5, _apex_gadget(3, 2),
             "A4 member + 2-edge path hung at its maximum-degree vertex",
             "cycle 0,1,2; t pendants and the path at 0", flagged=True),
        _fam("R12", 3, [("t", 0)], 6, _apex_gadget(4, 2),
             "A5 member + 2-edge path hung at its maximum-degree vertex",
             "cycle 0..3; t pendants and the path at 0", flagged=True),
        _fam("R13", 3, [("t", 1)], 5, _r13,
             "C4 + t pendants at one vertex + one pendant at a neighbour of it",
             "cycle 0..3; t pendants at 0, one at 1"),
        _fam("R14", 3, [("t", 0)], 5, _cycle_pendants(5), "C5 + t pendants at one vertex",
             "cycle 0..4; pendants at 0"),
        _fam("S1", 3, [("r1", 1), ("r2", 1)], 6, _s1,
             "P5 + r1, r2 pendants at its supports + one pendant at the middle vertex",
             "path 0..4; supports 1 and 3; middle 2"),
        _fam("S2", 3, _R, 7, _s_next_to_support(6),
             "A2 member + one pendant at the interior neighbour of a support vertex",
             "path 0..5; supports 1 and 4; extra pendant at 2", flagged=True),
        _fam("S3", 3, _R, 8, _s_next_to_support(7),
             "A3 member + one pendant at the interior neighbour of a support vertex",
             "path 0..6; supports 1 and 5; extra pendant at 2", flagged=True),
        _fam("S4", 3, _R, 8, _s4,
             "P7 + r1, r2 pendants at its supports + one pendant at the middle vertex",
             "path 0..6; supports 1 and 5; middle 3"),
        _fam("S5", 3, _R, 8, _a_path(8), "P8 + r1, r2 pendants at its supports",
             "path 0..7; supports 1 and 6"),
        _fam("S6", 3, [("r", 0), ("t", 1)], 6, _s_support_and_next(6),
             "P6 + r pendants at one support + t pendants next to the other support",
             "path 0..5; r at 4, t at 2", flagged=True),
        _fam("S7", 3, [("r", 0), ("t", 1)], 7, _s_support_and_next(7),
             "P7 + r pendants at one support + t pendants next to the other support",
             "path 0..6; r at 5, t at 2", flagged=True),
        _fam("S8", 3, [("r", 0), ("t", 1)], 8, _s_support_and_next(8),
             "P8 + r pendants at one support + t pendants next to the other support",
             "path 0..7; r at 6, t at 2", flagged=True),
        _fam("S9", 3, [("t", 0)], 5, _s9,
             "C3 + 2-edge path hung at a cycle vertex + t pendants at the path's far end",
             "cycle 0,1,2; path 0-3-4; pendants at 4"),
        _fam("S10", 3, [("t1", 0), ("t2", 0)], 6, _s10,
             "C4 + 2-edge path hung at a cycle vertex + t1 pendants at its far end"
             " + t2 pendants at the opposite cycle vertex",
             "cycle 0..3; path 0-4-5; t1 at 5, t2 at 2"),
        _fam("S11", 3, [("t", 0), ("r", 3)], 4, _s11,
             "C4 + t pendants at one vertex + K1,r joined by a leaf to the opposite vertex",
             "cycle 0..3; t pendants at 0; star centre 4 adjacent to 2"),
        _fam("S12", 3, [("r1", 0), ("r2", 0), ("r3", 0)], 7, _triad((2, 2, 2)),
             "triad with legs 2,2,2 + r_i pendants at each support",
             "hub 0; legs in order, supports get r1, r2, r3"),
        _fam("S13", 3, [("r1", 0), ("r2", 0), ("r3", 0)], 8, _triad((2, 2, 3)),
             "triad with legs 2,2,3 + r_i pendants at each support",
             "hub 0; legs in order, supports get r1, r2, r3"),
        _fam("S14", 3, [("r1", 0), ("r2", 0), ("r3", 0)], 9, _triad((2, 3, 3)),
             "triad with legs 2,3,3 + r_i pendants at each support",
             "hub 0; legs in order, supports get r1, r2, r3"),
        _fam("S15", 3, [("r1", 0), ("r2", 0), ("r3", 0)], 10, _triad((3, 3, 3)),
             "triad with legs 3,3,3 + r_i pendants at each support",
             "hub 0; legs in order, supports get r1, r2, r3"),
    ]
}

FAMILY_IDS = tuple(FAMILIES)


def get_family(family_id: str) -> Family:
    try:
        return FAMILIES[family_id.upper()]
    except KeyError:
        raise FamilyError(f"unknown family {family_id!r}") from None


def generate_family(family_id: str, params: Mapping[str, int] | None = None, **kw) -> Graph:
    fam = get_family(family_id)
    p = fam.check({**(params or {}), **kw})
    return fam.build(p)


def parameter_points(fam: Family, n: int) -> Iterator[dict[str, int]]:
    """All in-bounds parameter assignments whose generated graph has ``n`` vertices."""
    slack = n - fam.order({q.name: q.lower for q in fam.params})
    if slack < 0:
        return

    def rec(i: int, left: int, acc: dict) -> Iterator[dict[str, int]]:
        if i == len(fam.params):
            if left == 0:
                yield dict(acc)
            return
        q = fam.params[i]
        for extra in range(left // q.weight + 1):
            acc[q.name] = q.lower + extra
            yield from rec(i + 1, left - extra * q.weight, acc)
        del acc[q.name]

    yield from rec(0, slack, {})


def parameter_box(fam: Family, upper: int | Mapping[str, int] = 4) -> Iterator[dict[str, int]]:
    """Grid of parameter points, each parameter from its lower bound to ``upper``
    (raised to the lower bound where the bound is larger)."""
    ranges = []
    for q in fam.params:
        hi = upper[q.name] if isinstance(upper, Mapping) else upper
        ranges.append(range(q.lower, max(q.lower, hi) + 1))
    for values in itertools.product(*ranges):
        yield dict(zip((q.name for q in fam.params), values))


@dataclass(frozen=True)
class Match:
    family: str
    params: tuple[tuple[str, int], ...]

    def __str__(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}({inner})"


def recognize_families(g: Graph, families: Iterator[str] | None = None) -> list[Match]:
    """Every (family, parameters) whose generated graph is isomorphic to ``g``."""
    require_connected(g)
    ids = FAMILY_IDS if families is None else tuple(families)
    degs = sorted(g.degrees)
    cert = None
    found = []
    for fid in ids:
        fam = FAMILIES[fid]
        for p in parameter_points(fam, g.n):
            h = fam.build(p)
            if h.m != g.m or sorted(h.degrees) != degs:
                continue
            if cert is None:
                cert = canonical_form(g)
            if canonical_form(h) == cert:
                found.append(Match(fid, tuple(p.items())))
    return found


RHO_M = "rho_m"
RHO_M1 = "rho_m1"
RHO_M2 = "rho_m2"
RHO_M3 = "rho_m3"
NONE = "none"


@dataclass(frozen=True)
class ClassPrediction:
    tag: str
    matches: tuple[Match, ...] = ()
    candidates: tuple[str, ...] = ()  # every class whose test matched

    @property
    def flagged_only(self) -> bool:
        """True when the prediction rests solely on flagged families."""
        return bool(self.matches) and all(FAMILIES[x.family].flagged for x in self.matches)


def predict_extremal_class(g: Graph) -> ClassPrediction:
    require_connected(g)
    if g.m == 0:
        raise GraphError("extremal classes need at least one edge")
    hits = []
    if is_star(g):
        hits.append(RHO_M)
    if is_once_subdivided_star(g):
        hits.append(RHO_M1)
    matches = recognize_families(g)
    a = tuple(x for x in matches if FAMILIES[x.family].target == 2)
    rs = tuple(x for x in matches if FAMILIES[x.family].target == 3)
    if a:
        hits.append(RHO_M2)
    if rs:
        hits.append(RHO_M3)
    if not hits:
        return ClassPrediction(NONE)
    tag = hits[0]
    chosen = a if tag == RHO_M2 else rs if tag == RHO_M3 else ()
    return ClassPrediction(tag, chosen, tuple(hits))


def actual_class(rho: int, m: int) -> str:
    return {0: RHO_M, 1: RHO_M1, 2: RHO_M2, 3: RHO_M3}.get(m - rho, NONE)


# Audit

# Candidate constructions for the flagged families: attachment site varied
# over vertex orbits, gadget varied over a pendant edge or a 2-edge path.

def _gadget_candidates(base: Callable[[Mapping[str, int]], _Builder], sites, gadgets=(1, 2)):
    out = {}
    for site in sites:
        for gadget in gadgets:
            def make(p, site=site, gadget=gadget):
                b = base(p)
                b.hang_path(site, gadget)
                return b.graph()

            out[f"{'pendant' if gadget == 1 else 'P3'}@{site}"] = make
    return out


def _cycle_base(k):
    def base(p):
        b = _cycle(k)
        b.pendants(0, p["t"])
        return b

    return base


def _path_base(k):
    def base(p):
        b = _path(k)
        b.pendants(1, p["r1"])
        b.pendants(k - 2, p["r2"])
        return b

    return base


def _support_next_candidates(k):
    # t pendants at a vertex of P_k, r at support k-2; vary the t-site
    out = {}
    for site in range(1, k - 1):
        def make(p, site=site):
            b = _path(k)
            b.pendants(k - 2, p["r"])
            b.pendants(site, p["t"])
            return b.graph()

        out[f"t@{site}"] = make
    return out


AUDIT_CANDIDATES: dict[str, dict[str, Callable]] = {
    # literal text: a pendant vertex of P2 at the apex, i.e. one pendant edge
    "R11": {"literal": _apex_gadget(3, 1), **_gadget_candidates(_cycle_base(3), (0, 1))},
    "R12": {"literal": _apex_gadget(4, 1), **_gadget_candidates(_cycle_base(4), (0, 1, 2))},
    "S2": _gadget_candidates(_path_base(6), (1, 2)),
    "S3": _gadget_candidates(_path_base(7), (1, 2, 3)),
    "S6": _support_next_candidates(6),
    "S7": _support_next_candidates(7),
    "S8": _support_next_candidates(8),
}


@dataclass(frozen=True)
class AuditPoint:
    params: tuple[tuple[str, int], ...]
    n: int
    m: int
    rho: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.rho == self.expected


@dataclass(frozen=True)
class AuditReport:
    family: str
    points: tuple[AuditPoint, ...]
    candidates: dict = field(default_factory=dict)  # name -> (all pass, points)

    @property
    def ok(self) -> bool:
        return all(pt.ok for pt in self.points)

    @property
    def failures(self) -> list[AuditPoint]:
        return [pt for pt in self.points if not pt.ok]

    def passing_candidates(self) -> list[str]:
        return [name for name, (ok, _) in self.candidates.items() if ok]


MAX_AUDIT_BOUND = 12


def _audit_points(fam: Family, build, upper) -> tuple[AuditPoint, ...]:
    pts = []
    for p in parameter_box(fam, upper):
        g = build(p)
        pts.append(AuditPoint(tuple(p.items()), g.n, g.m, eop_number(g), g.m - fam.target))
    return tuple(pts)


def audit_family(family_id: str, upper: int | Mapping[str, int] = 4) -> AuditReport:
    """Exact packing number at every point of the parameter box."""
    fam = get_family(family_id)
    values = upper.values() if isinstance(upper, Mapping) else [upper]
    if any(v is None or v > MAX_AUDIT_BOUND for v in values):
        raise FamilyError(f"audit box must be bounded by {MAX_AUDIT_BOUND}")
    points = _audit_points(fam, fam.build, upper)
    candidates = {}
    for name, build in AUDIT_CANDIDATES.get(fam.id, {}).items():
        pts = _audit_points(fam, build, upper)
        candidates[name] = (all(pt.ok for pt in pts), pts)
    return AuditReport(fam.id, points, candidates)


def family_atlas() -> str:
    """Markdown table: family id, construction, vertex labeling, parameter bounds."""
    lines = [
        "# Family atlas",
        "",
        "Generated by `eopack.families.family_atlas()`. Flagged families ship one",
        "reading of an ambiguous construction; run `eopack audit <id>` to see how",
        "the alternatives fare.",
        "",
        "| id | target | parameters | construction | labeling | flagged |",
        "|----|--------|------------|--------------|----------|---------|",
    ]
    for f in FAMILIES.values():
        params = ", ".join(f"{q.name} ≥ {q.lower}" for q in f.params)
        lines.append(
            f"| {f.id} | m-{f.target} | {params} | {f.description} | {f.labeling} "
            f"| {'yes' if f.flagged else ''} |"
        )
    return "\n".join(lines) + "\n"
