import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from geoshell.cli import run
from geoshell.formats import load_family, load_tree, parse_family
from geoshell.trees import edge_shelling_circuits

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
FORK_EDGES = str(FIXTURES / "fork-edges.circ")
FORK_TREE = str(FIXTURES / "fork.tree")
TYPE_O = str(FIXTURES / "type-o.circ")


def named(family):
    return {(frozenset(family.name(s) for s in c.stem), family.name(c.root)) for c in family.circuits}


def invoke(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_recognize_fork(capsys, tmp_path):
    dot, hasse = tmp_path / "t.dot", tmp_path / "h.dot"
    code, out, _ = invoke(capsys, "recognize", FORK_EDGES, "--dot", str(dot), "--hasse-dot", str(hasse))
    assert code == 0
    assert out.startswith("edge-shelling\nvertices: 5\n")
    assert dot.read_text().startswith("graph tree {")
    assert hasse.read_text().startswith("digraph hasse {")


def test_recognize_type_o_json(capsys):
    code, out, _ = invoke(capsys, "recognize", TYPE_O, "--json")
    assert code == 1
    cert = json.loads(out)
    assert cert["verdict"] == "not-edge-shelling"
    assert cert["minor_type"] == "O"
    assert cert["mapping"] == {"x": "x", "y": "y", "z": "z", "u": "u"}


def test_recognize_type_o_text(capsys):
    code, out, _ = invoke(capsys, "recognize", TYPE_O)
    assert code == 1 and "Type O" in out


def test_check(capsys, tmp_path):
    assert invoke(capsys, "check", FORK_EDGES)[0] == 0
    bad = tmp_path / "bad.circ"
    bad.write_text("ground: x y z\nx y -> z\nx z -> y\n")
    code, out, _ = invoke(capsys, "check", str(bad), "--json")
    assert code == 1
    data = json.loads(out)
    assert data["convex_geometry"] is False and data["oracle"] is False
    assert data["violation"]["which"]


def test_tree_circuits_piped_into_recognize(capsys, monkeypatch):
    code, circ, _ = invoke(capsys, "tree-circuits", FORK_TREE)
    assert code == 0
    assert parse_family(circ) == load_family((FIXTURES / "fork-edges.circ").read_text())
    code, out, _ = invoke(capsys, "recognize", "-", "--json", stdin=circ, monkeypatch=monkeypatch)
    assert code == 0
    rebuilt = load_tree(json.dumps(json.loads(out)["tree"]))
    assert named(edge_shelling_circuits(rebuilt)) == named(parse_family(circ))


def test_trace_and_canon(capsys):
    code, out, _ = invoke(capsys, "trace", FORK_EDGES, "--subset", "a b c")
    assert code == 0 and out == "ground: a b c\na c -> b\n"
    code, out, _ = invoke(capsys, "canon", TYPE_O, "--json")
    assert code == 0 and json.loads(out)["n"] == 4


def test_vertex_circuits_and_contract(capsys, tmp_path):
    code, out, _ = invoke(capsys, "vertex-circuits", FORK_TREE, "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data["circuits"]) == 8 and data["wide_stems"] == []
    dot = tmp_path / "c.dot"
    code, out, _ = invoke(capsys, "contract", FORK_TREE, "--remove", "b", "--dot", str(dot))
    assert code == 0 and out.startswith("vertices: 4\n")
    assert dot.exists()


def test_enumerate_size4(capsys, monkeypatch):
    code, out, _ = invoke(capsys, "enumerate", "--size", "4")
    assert code == 0
    assert out.count("# entry") == 11
    monkeypatch.setenv("GEOSHELL_WORKERS", "2")
    code, again, _ = invoke(capsys, "enumerate", "--size", "4")
    assert again == out


def test_chordal_commands(capsys, tmp_path):
    code, out, _ = invoke(capsys, "chordal-circuits", str(FIXTURES / "house.graph"))
    assert code == 0 and "b e -> c" in out
    code, out, _ = invoke(capsys, "chordal-circuits", str(FIXTURES / "c4.graph"), "--json")
    assert code == 1 and len(json.loads(out)["chordless_cycle"]) == 4
    code, out, _ = invoke(capsys, "chordal-escape", "--max-n", "4")
    assert code == 1
    code, out, _ = invoke(capsys, "chordal-escape", "--max-n", "6", "--json")
    assert code == 0 and json.loads(out)["found"] is True


def test_size_bound(capsys):
    code, out, _ = invoke(capsys, "size-bound", "--samples", "300", "--seed", "2", "--json")
    assert code == 0 and json.loads(out)["counterexamples"] == 0


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "o.txt"
    code, out, _ = invoke(capsys, "check", FORK_EDGES, "--out", str(target))
    assert code == 0 and out == "" and target.read_text() == "convex geometry\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["recognize", FORK_EDGES, "--bogus"],
        [],
        ["enumerate", "--size", "9"],
        ["recognize", "/nonexistent/file.circ"],
        ["trace", FORK_EDGES, "--subset", "a q"],
        ["contract", FORK_TREE, "--remove", "zz"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 2
    assert err.startswith("geoshell: error:")


def test_parse_error_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.circ"
    bad.write_text("ground: a b c\na q -> b\n")
    code, _, err = invoke(capsys, "check", str(bad))
    assert code == 2 and "line 2, col 3" in err


def test_recognize_rejects_non_geometry(capsys, tmp_path):
    bad = tmp_path / "bad.circ"
    bad.write_text("ground: x y z\nx y -> z\nx z -> y\n")
    assert invoke(capsys, "recognize", str(bad))[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "geoshell.cli", "recognize", TYPE_O, "--json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["minor_type"] == "O"
