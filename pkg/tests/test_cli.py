import io
import json
import subprocess
import sys

import pytest

from eopack.cli import main, parse_edge_list
from eopack.graph import GraphError, path_graph
from eopack.graph6 import parse_graph6


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_edge_list():
    assert parse_edge_list("4; 0 1; 1 2; 2 3") == path_graph(4)
    assert parse_edge_list("3").m == 0
    for bad in ("x; 0 1", "3; 0", "3; 0 5"):
        with pytest.raises(GraphError):
            parse_edge_list(bad)


def test_rho_c5(capsys):
    code, out, _ = run(capsys, "rho", "Dhc")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "rho=2"
    (a, b) = [tuple(map(int, e.split("-"))) for e in lines[1].split(": ")[1].split()]
    assert set(a) & set(b)


def test_rho_star_and_edges_format(capsys):
    code, out, _ = run(capsys, "rho", "--format", "edges", "8; " + "; ".join(f"0 {i}" for i in range(1, 8)))
    assert code == 0 and out.startswith("rho=7")


def test_rho_disconnected_note(capsys):
    code, out, _ = run(capsys, "rho", "4; 0 1; 2 3")
    assert code == 0
    assert out.splitlines()[0] == "rho=2"
    assert "sum over components" in out


def test_rho_from_stdin_and_file(capsys, monkeypatch, tmp_path):
    code, out, _ = run(capsys, "rho", stdin="Bw\nDhc\n", monkeypatch=monkeypatch)
    assert code == 0 and out.count("rho=") == 2
    f = tmp_path / "g.g6"
    f.write_text("Dhc\n")
    code, out, _ = run(capsys, "rho", str(f), "--format", "records")
    assert json.loads(out)["rho"] == 2


def test_parse_error_exit_1(capsys):
    code, _, err = run(capsys, "rho", "B!")
    assert code == 1 and "record 0" in err


def test_usage_error_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["rho", "--bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["scan"])
    assert exc.value.code == 1


def test_conditions(capsys):
    code, out, _ = run(capsys, "conditions", "--t", "3", "6; 0 1; 1 2; 2 3; 3 4; 4 5")
    assert out.splitlines() == [
        "C1 holds", "C2 holds", "C3 holds (vacuous)", "C4 holds", "window 2<=rho<=3: yes",
    ]
    code, out, _ = run(capsys, "conditions", "--t", "3", "C~")
    assert out.startswith('C1 fails {"diameter":1}')
    p10 = "10; " + "; ".join(f"{i} {i + 1}" for i in range(9))
    code, out, _ = run(capsys, "conditions", "--t", "3", "--format", "records", p10)
    rec = json.loads(out)
    assert not rec["conditions"]["C3"]["holds"]
    assert set(rec["conditions"]["C3"]["witness"]) == {"matching", "z"}


def test_conditions_rejects_disconnected(capsys):
    code, _, err = run(capsys, "conditions", "--t", "2", "4; 0 1; 2 3")
    assert code == 1 and "disconnected" in err


def test_classify(capsys):
    _, out, _ = run(capsys, "classify", "4; 0 1; 1 2; 2 3")
    assert out.splitlines()[0] == "class=rho_m1"
    _, out, _ = run(capsys, "classify", "4; 0 1; 1 2; 2 3; 3 0")
    assert out.splitlines()[:2] == ["class=rho_m2", "match: A5(t=0)"]
    _, out, _ = run(capsys, "classify", "Dhc")
    assert out.splitlines()[:2] == ["class=rho_m3", "match: R14(t=0)"]


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "R1", "s=4")
    g = parse_graph6(out.strip())
    assert code == 0 and g.n == 8 and g.m == 7
    _, out, _ = run(capsys, "generate", "A4", "t=2")
    g = parse_graph6(out.strip())
    assert sorted(g.degrees) == [1, 1, 2, 2, 4]
    code, _, err = run(capsys, "generate", "R1", "s=3")
    assert code == 1 and "R1 requires s ≥ 4" in err
    code, _, err = run(capsys, "generate", "R1", "s")
    assert code == 1


@pytest.mark.parametrize("graph, chi", [("3; 0 1; 1 2; 0 2", 3), ("6; 0 1; 0 2; 0 3; 0 4; 0 5", 1),
                                        ("4; 0 1; 1 2; 2 3", 2)])
def test_chi_inj(capsys, graph, chi):
    _, out, _ = run(capsys, "chi-inj", graph)
    assert out.splitlines()[0] == f"chi_inj={chi}"


def test_chi_inj_guard(capsys):
    code, _, err = run(capsys, "chi-inj", "--guard-m", "3", "Dhc")
    assert code == 1 and "m <= 3" in err


def test_audit(capsys):
    code, out, _ = run(capsys, "audit", "R11")
    assert code == 0
    assert "candidate literal: fail" in out
    code, out, _ = run(capsys, "audit", "A4", "t=6", "--format", "records")
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and rows[-1]["summary"]["points"] == 7


def test_scan_clean_exit_0(capsys):
    code, out, _ = run(capsys, "scan", "--max-n", "6", "--theorems", "m2")
    assert code == 0
    assert json.loads(out.splitlines()[-1])["summary"]["mismatches"] == {}


def test_scan_counterexamples_exit_2(capsys, tmp_path):
    # two graphs with rho = m - 3 outside every family
    f = tmp_path / "cx.g6"
    f.write_text("F?C}O\nF?StG\n")
    code, out, _ = run(capsys, "scan", "--corpus", str(f), "--theorems", "m3")
    assert code == 2
    recs = [json.loads(x) for x in out.splitlines()[:-1]]
    assert [r["verdict"] for r in recs] == ["mismatch", "mismatch"]
    assert all(r["witness"]["complement_shape"] for r in recs)


def test_mismatch_records_reverify_with_classify(capsys, tmp_path):
    f = tmp_path / "cx.g6"
    f.write_text("F?C}O\n")
    _, out, _ = run(capsys, "scan", "--corpus", str(f), "--theorems", "classes")
    rec = json.loads(out.splitlines()[0])
    _, out, _ = run(capsys, "classify", "--format", "records", rec["graph"])
    again = json.loads(out)
    assert (again["predicted"], again["actual"]) == (rec["predicted"], rec["actual"])


def test_scan_text_format(capsys):
    code, out, _ = run(capsys, "scan", "--max-n", "5", "--theorems", "window:2", "--format", "text")
    assert code == 0 and "graphs: 31" in out


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "eopack.cli", "rho", "Dhc"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("rho=2")
