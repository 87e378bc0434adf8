"""Corpus scans: every requested theorem prediction is compared with the
exact packing number, graph by graph, and disagreements are emitted as
line-oriented JSON records with witnesses.

Record order follows the corpus order (canonical certificate), so a scan
with the same inputs always produces the same bytes.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import ceil
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import families as fam
from .canon import are_isomorphic, canonical_form, canonical_graph, corpus
from .conditions import check_rho2, condition_report, predict_rho_equals_t
from .graph import (
    Graph,
    build_graph,
    diameter,
    edge_induced_subgraph,
    is_complete,
    is_connected,
    is_once_subdivided_star,
    is_star,
    path_graph,
    star_graph,
)
from .graph6 import Graph6Error, iter_graph6, parse_graph6, write_graph6
from .packing import (
    DEFAULT_GUARD_M,
    NotDisjointStars,
    conflict_graph,
    enumerate_eop_sets,
    eop_number_exact,
    eop_number_oracle,
    have_common_edge,
    injective_chromatic_index,
    max_independent_set,
    star_decomposition,
)

# Edge-induced shapes of the three edges left out of a maximum packing
# when rho = m - 3.
COMPLEMENT_SHAPES = {
    "K1,3": star_graph(3),
    "P3+K2": build_graph(5, [(0, 1), (1, 2), (3, 4)]),
    "P4": path_graph(4),
    "C3": build_graph(3, [(0, 1), (1, 2), (0, 2)]),
    "3K2": build_graph(6, [(0, 1), (2, 3), (4, 5)]),
}

INVARIANTS = (
    "diameter_bound",
    "min_degree_bound",
    "component_count",
    "star_decomposition",
    "common_edge_shape",
    "complement_shape",
    "oracle",
    "chi_rho",
    "graph6_roundtrip",
)

CLASS_TAGS = (fam.RHO_M, fam.RHO_M1, fam.RHO_M2, fam.RHO_M3, "other")


class ScanError(ValueError):
    pass


def parse_theorems(spec: str | Iterable[str]) -> tuple[str, ...]:
    """Normalize a theorem list such as ``"window:2,window:3,m3,invariants"``.

    ``t-window(3)``, ``window3`` and ``corollary3`` forms are accepted too.
    ``all`` expands to the full default set.
    """
    items = spec.split(",") if isinstance(spec, str) else list(spec)
    out: list[str] = []
    for raw in items:
        item = raw.strip().lower().replace(" ", "")
        if not item:
            continue
        if item == "all":
            out.extend(DEFAULT_THEOREMS)
            continue
        for prefix in ("t-window(", "window:", "window", "corollary:", "corollary"):
            if item.startswith(prefix):
                kind = "corollary" if prefix.startswith("corollary") else "window"
                arg = item[len(prefix):].rstrip(")")
                if not arg.isdigit():
                    raise ScanError(f"bad theorem spec {raw!r}")
                t = int(arg)
                if t < (3 if kind == "corollary" else 2):
                    raise ScanError(f"{raw!r}: t too small")
                out.append(f"{kind}:{t}")
                break
        else:
            if item not in SIMPLE_THEOREMS:
                raise ScanError(
                    f"unknown theorem {raw!r}; expected window:T, corollary:T or one of "
                    + ", ".join(SIMPLE_THEOREMS)
                )
            out.append(item)
    return tuple(dict.fromkeys(out))


SIMPLE_THEOREMS = ("rho1", "rho2", "m0", "m1", "m2", "m3", "classes", "invariants")
DEFAULT_THEOREMS = (
    "window:2", "window:3", "window:4", "window:5", "corollary:3", "corollary:4",
    "rho1", "rho2", "m0", "m1", "m2", "m3", "classes", "invariants",
)


@dataclass(frozen=True)
class ScanRecord:
    graph: str
    n: int
    m: int
    rho: int | None
    theorem: str
    predicted: Any
    actual: Any
    verdict: str  # match | mismatch | skipped | audit
    witness: Any = None
    reason: str | None = None

    def to_json(self) -> str:
        payload = {
            "graph": self.graph,
            "n": self.n,
            "m": self.m,
            "rho": self.rho,
            "theorem": self.theorem,
            "predicted": self.predicted,
            "actual": self.actual,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            payload["witness"] = self.witness
        if self.reason is not None:
            payload["reason"] = self.reason
        return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


@dataclass
class ScanSummary:
    corpus_size: int = 0
    classes: Counter = field(default_factory=Counter)
    mismatches: Counter = field(default_factory=Counter)
    audits: Counter = field(default_factory=Counter)
    skipped: Counter = field(default_factory=Counter)
    checked: Counter = field(default_factory=Counter)
    vacuous: Counter = field(default_factory=Counter)
    wall_clock: float = 0.0

    @property
    def mismatch_total(self) -> int:
        return sum(self.mismatches.values())

    def merge(self, other: "ScanSummary") -> None:
        self.corpus_size += other.corpus_size
        for name in ("classes", "mismatches", "audits", "skipped", "checked", "vacuous"):
            getattr(self, name).update(getattr(other, name))

    def to_dict(self) -> dict:
        # wall-clock is left out so reports stay byte-identical across runs
        return {
            "corpus_size": self.corpus_size,
            "classes": {k: self.classes.get(k, 0) for k in CLASS_TAGS},
            "checked": dict(sorted(self.checked.items())),
            "mismatches": dict(sorted(self.mismatches.items())),
            "audit": dict(sorted(self.audits.items())),
            "skipped": dict(sorted(self.skipped.items())),
            "vacuous": dict(sorted(self.vacuous.items())),
        }


@dataclass(frozen=True)
class GraphResult:
    records: tuple[ScanRecord, ...]
    summary: ScanSummary


# Per-graph evaluation

def _edges(g: Graph, ids: Iterable[int]) -> list[list[int]]:
    return [list(g.edges[i]) for i in ids]


def _degree_profile(g: Graph, ids: Iterable[int]) -> Counter:
    return Counter(x for i in ids for x in g.edges[i])


# A graph with three edges and no isolated vertices is fixed by its degrees.
_THREE_EDGE_SHAPES = {
    (2, 2, 2): "C3",
    (1, 1, 2, 2): "P4",
    (1, 1, 1, 3): "K1,3",
    (1, 1, 1, 1, 2): "P3+K2",
    (1, 1, 1, 1, 1, 1): "3K2",
}


def three_edge_shape(g: Graph, ids: Sequence[int]) -> str:
    return _THREE_EDGE_SHAPES[tuple(sorted(_degree_profile(g, ids).values()))]


def _joins_as_shape(g: Graph, i: int, e: int, j: int) -> bool:
    # G<i, e, j> is C3, or P4 with e as the middle edge
    shape = three_edge_shape(g, (i, e, j))
    if shape == "C3":
        return True
    if shape != "P4":
        return False
    deg = _degree_profile(g, (i, e, j))
    a, b = g.edges[e]
    return deg[a] == 2 and deg[b] == 2


def complement_shape(g: Graph, members: Sequence[int]) -> str | None:
    """Name of G<E \\ D> among the five three-edge shapes, else None."""
    keep = set(members)
    rest = [i for i in range(g.m) if i not in keep]
    sub = edge_induced_subgraph(g, rest)[0]
    for name, shape in COMPLEMENT_SHAPES.items():
        if are_isomorphic(sub, shape):
            return name
    return None


def flagged_candidate_matches(g: Graph) -> list[str]:
    """Audit-candidate constructions of the flagged families that yield ``g``."""
    cert = None
    found = []
    for fid, cands in fam.AUDIT_CANDIDATES.items():
        family = fam.FAMILIES[fid]
        for name, build in cands.items():
            for p in fam.parameter_points(family, g.n):
                try:
                    h = build(p)
                except (KeyError, ValueError):
                    continue
                if h.n != g.n or h.m != g.m or sorted(h.degrees) != sorted(g.degrees):
                    continue
                if cert is None:
                    cert = canonical_form(g)
                if canonical_form(h) == cert:
                    inner = ",".join(f"{k}={v}" for k, v in p.items())
                    found.append(f"{fid}[{name}]({inner})")
    return found


class _Evaluator:
    def __init__(self, g: Graph, guard_m: int):
        self.g = g
        self.guard_m = guard_m
        self.g6 = write_graph6(g) if g.n <= 62 else canonical_form(g).hex()
        self.rho, self.witness = eop_number_exact(g)
        self.records: list[ScanRecord] = []
        self.summary = ScanSummary(corpus_size=1)
        self._prediction = None

    @property
    def prediction(self) -> fam.ClassPrediction:
        if self._prediction is None:
            self._prediction = fam.predict_extremal_class(self.g)
        return self._prediction

    def emit(self, theorem, predicted, actual, witness=None, verdict=None, reason=None):
        if verdict is None:
            verdict = "match" if predicted == actual else "mismatch"
        if verdict == "match":
            self.summary.checked[theorem] += 1
        elif verdict == "mismatch":
            self.summary.checked[theorem] += 1
            self.summary.mismatches[theorem] += 1
        elif verdict == "audit":
            self.summary.checked[theorem] += 1
            self.summary.audits[theorem] += 1
        else:
            self.summary.skipped[theorem] += 1
        if verdict == "mismatch" and witness is None:
            witness = {"max_eop_set": _edges(self.g, self.witness.members)}
        self.records.append(ScanRecord(
            self.g6, self.g.n, self.g.m, self.rho, theorem, predicted, actual,
            verdict, witness, reason,
        ))

    def skip(self, theorem, reason, record=True):
        # checks that simply do not apply are counted but not listed
        if not record:
            self.summary.skipped[theorem] += 1
            return
        self.emit(theorem, None, None, verdict="skipped", reason=reason)

    # theorem handlers

    def window(self, t: int):
        name = f"window:{t}"
        report = condition_report(self.g, t)
        for cname, verdict in (("C3", report.c3), ("C4", report.c4)):
            if verdict.vacuous:
                self.summary.vacuous[f"{name}:{cname}"] += 1
        actual = 2 <= self.rho <= t
        witness = None
        if report.window != actual:
            witness = {
                "conditions": {k: bool(v) for k, v in report.items()},
                "violations": report.witnesses,
                "max_eop_set": _edges(self.g, self.witness.members),
            }
        self.emit(name, report.window, actual, witness)

    def corollary(self, t: int):
        name = f"corollary:{t}"
        if is_star(self.g) and self.g.m <= t - 1:
            return self.skip(name, f"star K1,{self.g.m} excluded")
        self.emit(name, predict_rho_equals_t(self.g, t), self.rho == t)

    def rho1(self):
        self.emit("rho1", is_complete(self.g), self.rho == 1)

    def rho2(self):
        verdict = check_rho2(self.g)
        witness = None
        if bool(verdict) != (self.rho == 2):
            witness = {"violation": verdict.witness,
                       "max_eop_set": _edges(self.g, self.witness.members)}
        self.emit("rho2", bool(verdict), self.rho == 2, witness)

    def m0(self):
        self.emit("m0", is_star(self.g), self.rho == self.g.m)

    def m1(self):
        if self.g.m < 3:
            return self.skip("m1", "needs m >= 3", record=False)
        self.emit("m1", is_once_subdivided_star(self.g), self.rho == self.g.m - 1)

    def m2(self):
        matches = [str(x) for x in fam.recognize_families(self.g)
                   if fam.FAMILIES[x.family].target == 2]
        actual = self.rho == self.g.m - 2
        witness = {"matches": matches} if matches else None
        self.emit("m2", bool(matches), actual, witness)

    def m3(self):
        found = [x for x in fam.recognize_families(self.g)
                 if fam.FAMILIES[x.family].target == 3]
        actual = self.rho == self.g.m - 3
        predicted = bool(found)
        shipped_flagged_only = predicted and all(fam.FAMILIES[x.family].flagged for x in found)
        witness = {"matches": [str(x) for x in found]} if found else None
        if shipped_flagged_only:
            return self.emit("m3", predicted, actual, witness, verdict="audit",
                             reason="recognized only through flagged families")
        if actual and not predicted:
            cands = flagged_candidate_matches(self.g)
            if cands:
                return self.emit("m3", predicted, actual, {"candidates": cands},
                                 verdict="audit",
                                 reason="matches only an audit candidate of a flagged family")
            witness = self._m3_witness()
        self.emit("m3", predicted, actual, witness)

    def _m3_witness(self) -> dict:
        dec = star_decomposition(self.g, self.witness.members)
        return {
            "max_eop_set": _edges(self.g, self.witness.members),
            "components": [[c.centre, list(c.leaves)] for c in dec.components],
            "complement": _edges(self.g, [i for i in range(self.g.m)
                                          if i not in self.witness.members]),
            "complement_shape": complement_shape(self.g, self.witness.members),
        }

    def classes(self):
        actual = fam.actual_class(self.rho, self.g.m)
        self.summary.classes[actual if actual != fam.NONE else "other"] += 1
        pred = self.prediction
        if len(pred.candidates) > 1:
            return self.emit("classes", pred.tag, actual,
                             {"overlap": list(pred.candidates)}, verdict="mismatch",
                             reason="predicted in more than one class")
        if actual == fam.NONE and pred.tag == fam.NONE:
            return self.emit("classes", pred.tag, actual)
        if pred.tag == fam.RHO_M3 and pred.flagged_only:
            return self.emit("classes", pred.tag, actual,
                             {"matches": [str(x) for x in pred.matches]}, verdict="audit",
                             reason="recognized only through flagged families")
        if actual == fam.RHO_M3 and pred.tag == fam.NONE:
            cands = flagged_candidate_matches(self.g)
            if cands:
                return self.emit("classes", pred.tag, actual, {"candidates": cands},
                                 verdict="audit",
                                 reason="matches only an audit candidate of a flagged family")
            return self.emit("classes", pred.tag, actual, self._m3_witness())
        witness = None
        if pred.tag != actual:
            witness = {"matches": [str(x) for x in pred.matches],
                       "max_eop_set": _edges(self.g, self.witness.members)}
        self.emit("classes", pred.tag, actual, witness)

    def invariants(self):
        g, rho = self.g, self.rho
        name = "inv:"
        # rho >= ceil(diam / 2)
        d = diameter(g)
        self.emit(name + "diameter_bound", True, rho >= ceil(d / 2),
                  None if rho >= ceil(d / 2) else {"diameter": d})
        # rho <= floor(m / min degree)
        if g.min_degree >= 1:
            ok = rho <= g.m // g.min_degree
            self.emit(name + "min_degree_bound", True, ok,
                      None if ok else {"min_degree": g.min_degree})
        else:
            self.skip(name + "min_degree_bound", "min degree 0", record=False)
        # packing enumeration drives three checks at once
        comp_ok = dec_ok = True
        comp_witness = dec_witness = None
        nonstar = g.m >= 3 and not is_star(g)
        for size in range(1, rho + 1):
            for d_set in enumerate_eop_sets(g, size):
                try:
                    dec = star_decomposition(g, d_set.members)
                except NotDisjointStars:
                    if dec_ok:
                        dec_ok, dec_witness = False, {"eop_set": _edges(g, d_set.members)}
                    continue
                k = len(dec)
                if nonstar and k >= 2 and g.m - size < k and comp_ok:
                    comp_ok = False
                    comp_witness = {"eop_set": _edges(g, d_set.members), "components": k}
        if nonstar:
            self.emit(name + "component_count", True, comp_ok, comp_witness)
        else:
            self.skip(name + "component_count", "star or m < 3", record=False)
        self.emit(name + "star_decomposition", True, dec_ok, dec_witness)
        # pairwise definition vs the P4 / C3 edge-induced shape
        shape_ok, shape_witness = True, None
        for i, j in combinations(range(g.m), 2):
            by_shape = any(
                _joins_as_shape(g, i, e, j) for e in range(g.m) if e not in (i, j)
            )
            if by_shape != have_common_edge(g, i, j):
                shape_ok = False
                shape_witness = {"edges": _edges(g, (i, j))}
                break
        self.emit(name + "common_edge_shape", True, shape_ok, shape_witness)
        # complement shapes at rho = m - 3
        if rho == g.m - 3:
            shape_ok, bad = True, None
            for d_set in enumerate_eop_sets(g, rho):
                if complement_shape(g, d_set.members) is None:
                    shape_ok, bad = False, {"max_eop_set": _edges(g, d_set.members)}
                    break
            self.emit(name + "complement_shape", True, shape_ok, bad)
        else:
            self.skip(name + "complement_shape", "rho != m - 3", record=False)
        # exact solver vs the subset-growth oracle
        if g.m <= self.guard_m:
            oracle = eop_number_oracle(g, self.guard_m)
            self.emit(name + "oracle", rho, oracle)
        else:
            self.skip(name + "oracle", f"m > {self.guard_m}", record=False)
        # colour classes are packings, so chi * rho >= m
        if 1 <= g.m <= self.guard_m:
            chi = injective_chromatic_index(g, self.guard_m)
            ok = chi * rho >= g.m
            self.emit(name + "chi_rho", True, ok, None if ok else {"chi_inj": chi})
        else:
            self.skip(name + "chi_rho", "m = 0 or above guard", record=False)
        if g.n <= 62:
            back = parse_graph6(write_graph6(g))
            ok = back.edges == g.edges and back.n == g.n
            self.emit(name + "graph6_roundtrip", True, ok)


def evaluate_graph(g: Graph, theorems: Sequence[str], guard_m: int = DEFAULT_GUARD_M) -> GraphResult:
    ev = _Evaluator(g, guard_m)
    if not is_connected(g) or g.m == 0:
        reason = "disconnected" if not is_connected(g) else "no edges"
        for th in theorems:
            ev.skip(th, reason)
        # keep per-class counts summing to the corpus size
        ev.summary.classes["other"] += 1
        return GraphResult(tuple(ev.records), ev.summary)
    for th in theorems:
        kind, _, arg = th.partition(":")
        if kind in ("window", "corollary"):
            getattr(ev, kind)(int(arg))
        else:
            getattr(ev, th)()
    if "classes" not in theorems:
        actual = fam.actual_class(ev.rho, g.m)
        ev.summary.classes[actual if actual != fam.NONE else "other"] += 1
    return GraphResult(tuple(ev.records), ev.summary)


def _evaluate_job(args):
    g, theorems, guard_m = args
    return evaluate_graph(g, theorems, guard_m)


# Corpus handling

def load_corpus(max_n: int | None = None, corpus_file: str | Path | None = None,
                min_n: int = 1) -> list[Graph]:
    """Built-in corpus for ``min_n..max_n`` or graphs read from a graph6 file.

    File corpora are relabeled canonically and sorted by certificate.
    """
    if corpus_file is not None:
        with open(corpus_file, encoding="ascii") as fh:
            graphs = [canonical_graph(g) for _, g in iter_graph6(fh)]
        if max_n is not None:
            graphs = [g for g in graphs if g.n <= max_n]
        return sorted(graphs, key=canonical_form)
    if max_n is None or not 3 <= max_n <= 7:
        raise ScanError("built-in corpus needs 3 <= max_n <= 7")
    return corpus(max_n, min_n)


@dataclass
class ScanResult:
    records: list[ScanRecord]
    summary: ScanSummary

    def report_lines(self, include_matches: bool = False) -> list[str]:
        lines = [r.to_json() for r in self.records if include_matches or r.verdict != "match"]
        lines.append(json.dumps({"summary": self.summary.to_dict()}, separators=(",", ":")))
        return lines

    def report(self, include_matches: bool = False) -> str:
        return "\n".join(self.report_lines(include_matches)) + "\n"


def scan(
    graphs: Sequence[Graph],
    theorems: Sequence[str] = DEFAULT_THEOREMS,
    jobs: int = 1,
    guard_m: int = DEFAULT_GUARD_M,
) -> ScanResult:
    start = time.perf_counter()
    theorems = parse_theorems(theorems)
    work = [(g, theorems, guard_m) for g in graphs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate_job, work, chunksize=8))
    else:
        results = [_evaluate_job(w) for w in work]
    summary = ScanSummary()
    records: list[ScanRecord] = []
    for res in results:
        records.extend(res.records)
        summary.merge(res.summary)
    summary.wall_clock = time.perf_counter() - start
    return ScanResult(records, summary)


# Audit reporting

def audit_records(report: fam.AuditReport) -> list[str]:
    lines = []
    for label, points in [("shipped", report.points)] + [
        (name, pts) for name, (_, pts) in report.candidates.items()
    ]:
        for pt in points:
            lines.append(json.dumps({
                "family": report.family,
                "construction": label,
                "params": dict(pt.params),
                "n": pt.n,
                "m": pt.m,
                "rho": pt.rho,
                "expected": pt.expected,
                "verdict": "pass" if pt.ok else "fail",
            }, separators=(",", ":")))
    lines.append(json.dumps({
        "family": report.family,
        "summary": {
            "points": len(report.points),
            "failures": len(report.failures),
            "passing_candidates": report.passing_candidates(),
            "failing_candidates": [n for n, (ok, _) in report.candidates.items() if not ok],
        },
    }, separators=(",", ":")))
    return lines
