"""Condition checkers for the window 2 <= rho <= t and the rho = 2 test.

Each checker returns a :class:`Verdict`; failures carry a concrete
witness that can be re-verified against the raw definitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .graph import (
    Graph,
    GraphError,
    diameter,
    find_induced_star,
    is_star,
    require_connected,
)
from .packing import enumerate_eop_sets, enumerate_induced_matchings, star_decomposition


@dataclass(frozen=True)
class Verdict:
    holds: bool
    vacuous: bool = False
    witness: dict[str, Any] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _check_t(t: int, low: int = 2) -> None:
    if t < low:
        raise GraphError(f"t must be at least {low}, got {t}")


def check_c1(g: Graph, t: int) -> Verdict:
    require_connected(g)
    _check_t(t)
    d = diameter(g)
    ok = 2 <= d <= 2 * t
    return Verdict(ok, witness=None if ok else {"diameter": d})


def check_c2(g: Graph, t: int) -> Verdict:
    _check_t(t)
    star = find_induced_star(g, t + 1)
    if star is None:
        return Verdict(True)
    centre, leaves = star
    return Verdict(False, witness={"centre": centre, "leaves": leaves})


def _vertex_set(g: Graph, ids) -> int:
    mask = 0
    for i in ids:
        u, v = g.edges[i]
        mask |= 1 << u | 1 << v
    return mask


def check_c3(g: Graph, t: int) -> Verdict:
    """Every vertex outside a size-t induced matching sees >= 2 of its vertices."""
    require_connected(g)
    _check_t(t)
    seen = False
    for matching in enumerate_induced_matchings(g, t):
        seen = True
        covered = _vertex_set(g, matching)
        for z in range(g.n):
            if covered >> z & 1:
                continue
            if bin(g.adj[z] & covered).count("1") <= 1:
                return Verdict(False, witness={
                    "matching": [list(g.edges[i]) for i in matching],
                    "z": z,
                })
    return Verdict(True, vacuous=not seen)


def check_c4(g: Graph, t: int) -> Verdict:
    """Centre condition over packings of size t with 2..t-1 star components.

    Both endpoints of a single-edge component are treated as centres.
    """
    require_connected(g)
    _check_t(t)
    if t == 2:
        return Verdict(True, vacuous=True)
    seen = False
    for d in enumerate_eop_sets(g, t):
        dec = star_decomposition(g, d.members)
        if not 2 <= len(dec) <= t - 1:
            continue
        seen = True
        covered = _vertex_set(g, d.members)
        for comp in dec.components:
            for u in comp.centre_choices:
                rest = covered & ~(1 << u)
                outside = g.adj[u] & ~covered
                z = 0
                while outside:
                    low = outside & -outside
                    z = low.bit_length() - 1
                    outside ^= low
                    if not g.adj[z] & rest:
                        return Verdict(False, witness={
                            "eop_set": [list(e) for e in d.edge_pairs()],
                            "centre": u,
                            "z": z,
                        })
    return Verdict(True, vacuous=not seen)


@dataclass(frozen=True)
class ConditionReport:
    t: int
    c1: Verdict
    c2: Verdict
    c3: Verdict
    c4: Verdict
    extras: dict = field(default_factory=dict)

    @property
    def window(self) -> bool:
        return bool(self.c1 and self.c2 and self.c3 and self.c4)

    def items(self):
        return [("C1", self.c1), ("C2", self.c2), ("C3", self.c3), ("C4", self.c4)]

    @property
    def witnesses(self) -> dict[str, dict]:
        return {name: v.witness for name, v in self.items() if v.witness is not None}


def condition_report(g: Graph, t: int, short_circuit: bool = False) -> ConditionReport:
    """All four verdicts; with ``short_circuit`` the later checks are skipped
    (reported as holding) once one fails."""
    c1 = check_c1(g, t)
    if short_circuit and not c1:
        skip = Verdict(True)
        return ConditionReport(t, c1, skip, skip, skip, {"short_circuit": True})
    c2 = check_c2(g, t)
    if short_circuit and not c2:
        skip = Verdict(True)
        return ConditionReport(t, c1, c2, skip, skip, {"short_circuit": True})
    c3 = check_c3(g, t)
    c4 = check_c4(g, t) if not (short_circuit and not c3) else Verdict(True)
    return ConditionReport(t, c1, c2, c3, c4, {"short_circuit": short_circuit})


def predict_rho_window(g: Graph, t: int) -> bool:
    """Prediction for 2 <= rho <= t."""
    return condition_report(g, t, short_circuit=True).window


def predict_rho_equals_t(g: Graph, t: int) -> bool:
    require_connected(g)
    _check_t(t, 3)
    if is_star(g) and g.m <= t - 1:
        raise GraphError(f"stars K1,s with s <= {t - 1} are excluded for t={t}")
    return predict_rho_window(g, t) and not predict_rho_window(g, t - 1)


def check_rho2(g: Graph) -> Verdict:
    """The three-part test for rho = 2, written against edge pairs directly."""
    require_connected(g)
    d = diameter(g)
    if not 2 <= d <= 4:
        return Verdict(False, witness={"diameter": d})
    star = find_induced_star(g, 3)
    if star is not None:
        return Verdict(False, witness={"centre": star[0], "leaves": star[1]})
    for i, (u, v) in enumerate(g.edges):
        for x, y in g.edges[i + 1 :]:
            if len({u, v, x, y}) < 4:
                continue
            # no common edge between disjoint edges: no edge joins them
            if any(g.has_edge(a, b) for a in (u, v) for b in (x, y)):
                continue
            quad = 1 << u | 1 << v | 1 << x | 1 << y
            for z in range(g.n):
                if not quad >> z & 1 and bin(g.adj[z] & quad).count("1") < 2:
                    return Verdict(False, witness={
                        "edges": [[u, v], [x, y]], "z": z,
                    })
    return Verdict(True)
