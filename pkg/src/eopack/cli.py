"""Command-line entry point: ``eopack <command> ...``.

Graphs are read as graph6 (one per line) or as edge lists ``"n; u v; u v"``,
from a literal argument, a file, or standard input.

Exit status is 0 when everything ran clean, 1 for usage or parse errors and
2 when a scan or audit found counterexamples.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterator

from . import families as fam
from .conditions import condition_report
from .graph import Graph, GraphError, build_graph, components, induced_subgraph, is_connected
from .graph6 import Graph6Error, iter_graph6, parse_graph6, write_graph6
from .harness import DEFAULT_THEOREMS, ScanError, audit_records, load_corpus, parse_theorems, scan
from .packing import DEFAULT_GUARD_M, GuardExceeded, eop_number_exact, injective_coloring, star_decomposition

EXIT_OK, EXIT_USAGE, EXIT_FOUND = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for counterexamples here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# Input handling

def parse_edge_list(text: str) -> Graph:
    """``"4; 0 1; 1 2; 2 3"`` -> P4. Vertices are 0-based."""
    parts = [p.strip() for p in text.strip().split(";")]
    if not parts or not parts[0].isdigit():
        raise GraphError(f"edge list must start with the vertex count: {text!r}")
    edges = []
    for p in parts[1:]:
        if not p:
            continue
        fields = p.replace(",", " ").split()
        if len(fields) != 2 or not all(f.lstrip("-").isdigit() for f in fields):
            raise GraphError(f"bad edge {p!r} in edge list")
        edges.append((int(fields[0]), int(fields[1])))
    return build_graph(int(parts[0]), edges)


def _looks_like_edges(text: str) -> bool:
    return ";" in text or text.strip().isdigit()


def read_graphs(source: str | None, fmt: str = "auto") -> Iterator[Graph]:
    """Graphs from ``source``: a literal, a file path, or stdin for ``None``/``-``."""
    if source is None or source == "-":
        text = sys.stdin.read()
    elif Path(source).is_file():
        text = Path(source).read_text(encoding="ascii")
    else:
        text = source
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphError("no graph given")
    if fmt == "auto":
        fmt = "edges" if all(_looks_like_edges(ln) for ln in lines) else "graph6"
    if fmt == "edges":
        for ln in lines:
            yield parse_edge_list(ln)
    else:
        for _, g in iter_graph6(lines):
            yield g


def _graph_args(p: argparse.ArgumentParser, output: bool = True) -> None:
    p.add_argument("graph", nargs="?", help="graph6 string, edge list, or file (default: stdin)")
    p.add_argument("--input-format", choices=("auto", "graph6", "edges"), default="auto")
    if output:
        p.add_argument("--format", choices=("text", "records", "edges"), default="text",
                       help="output style; 'edges' reads the input as an edge list")


def _input_format(args) -> str:
    return "edges" if getattr(args, "format", None) == "edges" else args.input_format


def _out_format(args) -> str:
    return "text" if args.format == "edges" else args.format


def _fmt_edges(pairs) -> str:
    return " ".join(f"{u}-{v}" for u, v in pairs)


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def _connected(g: Graph) -> Graph:
    if not is_connected(g):
        raise GraphError(f"{write_graph6(g)}: graph is disconnected")
    return g


# Commands

def _rho_of(g: Graph) -> tuple[int, list[tuple[int, int]], tuple[int, ...], int]:
    """Packing number, witness and witness shape, summed over components."""
    comps = components(g)
    rho, witness, shape = 0, [], []
    for vs in comps:
        sub, pos = induced_subgraph(g, vs)
        if sub.m == 0:
            continue
        inv = {i: v for v, i in pos.items()}
        size, d = eop_number_exact(sub)
        rho += size
        witness += [tuple(sorted((inv[a], inv[b]))) for a, b in d.edge_pairs()]
        shape += star_decomposition(sub, d.members).shape
    return rho, sorted(witness), tuple(sorted(shape)), len(comps)


def cmd_rho(args) -> int:
    for g in read_graphs(args.graph, _input_format(args)):
        rho, witness, shape, k = _rho_of(g)
        if _out_format(args) == "records":
            print(_dump({"graph": write_graph6(g), "n": g.n, "m": g.m, "rho": rho,
                         "witness": [list(e) for e in witness], "shape": list(shape),
                         "components": k}))
            continue
        print(f"rho={rho}")
        print(f"witness: {_fmt_edges(witness)}")
        print(f"shape: {list(shape)}")
        if k > 1:
            print(f"note: disconnected ({k} components); rho is the sum over components")
    return EXIT_OK


def cmd_conditions(args) -> int:
    for g in read_graphs(args.graph, _input_format(args)):
        report = condition_report(_connected(g), args.t)
        if _out_format(args) == "records":
            print(_dump({
                "graph": write_graph6(g),
                "t": args.t,
                "conditions": {name: {"holds": v.holds, "vacuous": v.vacuous,
                                      "witness": v.witness} for name, v in report.items()},
                "window": report.window,
            }))
            continue
        for name, v in report.items():
            note = " (vacuous)" if v.vacuous else ""
            status = "holds" if v.holds else "fails"
            print(f"{name} {status}{note}" + (f" {_dump(v.witness)}" if v.witness else ""))
        print(f"window 2<=rho<={args.t}: {'yes' if report.window else 'no'}")
    return EXIT_OK


def cmd_classify(args) -> int:
    for g in read_graphs(args.graph, _input_format(args)):
        g = _connected(g)
        pred = fam.predict_extremal_class(g)
        rho, _ = eop_number_exact(g)
        actual = fam.actual_class(rho, g.m)
        if _out_format(args) == "records":
            print(_dump({"graph": write_graph6(g), "n": g.n, "m": g.m, "rho": rho,
                         "predicted": pred.tag, "actual": actual,
                         "matches": [str(x) for x in pred.matches],
                         "flagged_only": pred.flagged_only}))
            continue
        print(f"class={pred.tag}")
        for x in pred.matches:
            flag = " [flagged]" if fam.FAMILIES[x.family].flagged else ""
            print(f"match: {x}{flag}")
        print(f"rho={rho} m={g.m} actual={actual}")
    return EXIT_OK


def _key_values(items: list[str]) -> dict[str, int]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not value.lstrip("-").isdigit():
            raise UsageError(f"expected name=integer, got {item!r}")
        out[key.strip()] = int(value)
    return out


def cmd_generate(args) -> int:
    g = fam.generate_family(args.family, _key_values(args.params))
    print(write_graph6(g))
    return EXIT_OK


def cmd_scan(args) -> int:
    graphs = load_corpus(args.max_n, args.corpus)
    result = scan(graphs, parse_theorems(args.theorems), jobs=args.jobs, guard_m=args.guard_m)
    s = result.summary
    if args.format == "records":
        sys.stdout.write(result.report(args.include_matches))
    else:
        for r in result.records:
            if r.verdict in ("mismatch", "audit") or (args.include_matches and r.verdict == "match"):
                print(f"{r.verdict:8} {r.theorem:14} {r.graph:10} rho={r.rho} "
                      f"predicted={r.predicted} actual={r.actual}")
        d = s.to_dict()
        print(f"graphs: {d['corpus_size']}")
        print("classes: " + ", ".join(f"{k}={v}" for k, v in d["classes"].items()))
        for th in sorted(d["checked"]):
            print(f"{th:28} checked={d['checked'][th]:5} "
                  f"mismatches={d['mismatches'].get(th, 0)} audit={d['audit'].get(th, 0)}")
    print(f"scan finished in {s.wall_clock:.1f}s", file=sys.stderr)
    return EXIT_FOUND if s.mismatch_total else EXIT_OK


def cmd_audit(args) -> int:
    upper = _key_values(args.bounds) if args.bounds else args.upper
    ids = fam.FAMILY_IDS if args.family.lower() == "all" else (args.family,)
    failed = False
    for fid in ids:
        report = fam.audit_family(fid, upper)
        failed |= not report.ok
        if args.format == "records":
            print("\n".join(audit_records(report)))
            continue
        family = fam.FAMILIES[report.family]
        flag = " [flagged]" if family.flagged else ""
        status = "ok" if report.ok else f"{len(report.failures)} failure(s)"
        print(f"{report.family}{flag}: {len(report.points)} points, {status}")
        for pt in report.failures:
            print(f"  fail {dict(pt.params)}: rho={pt.rho} expected={pt.expected}")
        for name, (ok, _) in report.candidates.items():
            print(f"  candidate {name}: {'pass' if ok else 'fail'}")
    return EXIT_FOUND if failed else EXIT_OK


def cmd_chi_inj(args) -> int:
    for g in read_graphs(args.graph, _input_format(args)):
        g = _connected(g)
        k, colors = injective_coloring(g, args.guard_m)
        if _out_format(args) == "records":
            print(_dump({"graph": write_graph6(g), "chi_inj": k,
                         "coloring": [[u, v, c] for (u, v), c in zip(g.edges, colors)]}))
            continue
        print(f"chi_inj={k}")
        for c in range(k):
            print(f"class {c}: {_fmt_edges(e for e, x in zip(g.edges, colors) if x == c)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eopack", description="Edge open packing toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rho", help="edge open packing number and a maximum packing")
    _graph_args(p)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("conditions", help="the four window conditions for a given t")
    _graph_args(p)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("classify", help="predicted extremal class and family matches")
    _graph_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("generate", help="graph6 record of a family member")
    p.add_argument("family")
    p.add_argument("params", nargs="*", help="name=value pairs, e.g. s=4")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("scan", help="check theorem predictions over a corpus")
    p.add_argument("--max-n", type=int)
    p.add_argument("--corpus", metavar="FILE", help="graph6 file instead of the built-in corpus")
    p.add_argument("--theorems", default=",".join(DEFAULT_THEOREMS), metavar="LIST")
    p.add_argument("--format", choices=("text", "records"), default="records")
    p.add_argument("--include-matches", action="store_true")
    p.add_argument("--jobs", type=int, default=1, metavar="N")
    p.add_argument("--guard-m", type=int, default=DEFAULT_GUARD_M, metavar="N")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("audit", help="exact check of a family over a parameter box")
    p.add_argument("family", help="family id or 'all'")
    p.add_argument("bounds", nargs="*", help="per-parameter upper bounds, e.g. t=6")
    p.add_argument("--upper", type=int, default=4, help="upper bound for every parameter")
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("chi-inj", help="injective chromatic index and an optimal colouring")
    _graph_args(p)
    p.add_argument("--guard-m", type=int, default=DEFAULT_GUARD_M, metavar="N")
    p.set_defaults(func=cmd_chi_inj)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "t", None) is not None and args.t < 2:
        parser.error("--t must be at least 2")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    if args.command == "scan" and args.corpus is None and args.max_n is None:
        parser.error("scan needs --max-n or --corpus")
    try:
        return args.func(args)
    except (UsageError, GraphError, Graph6Error, ScanError, fam.FamilyError,
            GuardExceeded, OSError) as exc:
        print(f"eopack: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
