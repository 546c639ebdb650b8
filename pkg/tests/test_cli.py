import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest
from conftest import simple_bipartite_params
from hypothesis import given, settings
from hypothesis import strategies as st

from toroham import ham_builder as hb
from toroham import oracle
from toroham.cli import main
from toroham.docs import CycleDoc, DocumentError, InstanceDoc, dumps, load, save
from toroham.export import to_dot, to_svg
from toroham.torus_quad import Color, DiagonalSpec, Face, TorusParams, build, diagonal_endpoints, faces


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# --- documents ------------------------------------------------------------------


@settings(max_examples=40)
@given(simple_bipartite_params(120), st.data())
def test_instance_round_trip(p, data):
    fs = faces(p)
    picked = data.draw(st.lists(st.sampled_from(fs), max_size=3, unique=True))
    colors = data.draw(st.lists(st.sampled_from(list(Color)), min_size=len(picked), max_size=len(picked)))
    try:
        doc = InstanceDoc(p, tuple(DiagonalSpec(f, c) for f, c in zip(picked, colors)), {"e": ((0, 0), (0, 1))})
    except ValueError:
        return  # two diagonals landed on the same edge
    again = InstanceDoc.from_json(json.loads(dumps(doc)))
    assert again == doc and again.named_edges == doc.named_edges


def test_cycle_round_trip_and_status(tmp_path, q1083):
    e1, e2 = DiagonalSpec(Face(1, 1), Color.BLACK), DiagonalSpec(Face(4, 4), Color.WHITE)
    inst = InstanceDoc(q1083, (e1, e2))
    cyc = hb.ham_through_two_diagonals(q1083, e1, e2)
    doc = CycleDoc(inst, cyc.vertices, (diagonal_endpoints(q1083, e1), diagonal_endpoints(q1083, e2)))
    path = tmp_path / "cycle.json"
    save(doc, path)
    assert load(path) == doc
    assert json.loads(path.read_text())["status"]["ok"] is True


def test_cycle_status_is_recomputed_on_load(tmp_path, q183):
    inst = InstanceDoc(q183)
    bad = CycleDoc(inst, tuple((0, x) for x in (0, 2, 4, 6, 1, 3, 5, 7)))
    data = bad.to_json()
    assert data["status"]["ok"] is False
    data["status"] = {"ok": True, "violations": []}
    path = tmp_path / "tampered.json"
    path.write_text(json.dumps(data))
    assert not load(path).status.ok


@pytest.mark.parametrize(
    "text",
    ["[]", "{}", '{"params": {"m": 0, "n": 8, "q": 2}}', '{"params": {"m": 1, "n": 8, "q": 3}, "diagonals": [{"column": 0}]}'],
)
def test_invalid_documents(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(DocumentError):
        load(path)


def test_instance_rejects_duplicate_face(q1083):
    with pytest.raises(ValueError):
        InstanceDoc(q1083, (DiagonalSpec(Face(1, 1), Color.BLACK), DiagonalSpec(Face(1, 1), Color.WHITE)))


# --- export ---------------------------------------------------------------------


def test_dot_counts(q183):
    text = to_dot(InstanceDoc(q183))
    assert sum(1 for line in text.splitlines() if line.strip().startswith('"') and "--" not in line) == 8
    assert text.count(" -- ") == 16
    assert '"0,3"' in text


def test_dot_marks_diagonals_and_cycle(q1083):
    e1, e2 = DiagonalSpec(Face(1, 1), Color.BLACK), DiagonalSpec(Face(4, 4), Color.WHITE)
    cyc = hb.ham_through_two_diagonals(q1083, e1, e2)
    text = to_dot(CycleDoc(InstanceDoc(q1083, (e1, e2)), cyc.vertices))
    assert text.count("style=dashed") == 2
    assert text.count("penwidth=3") == 80


def test_svg_structure(q1083):
    e1, e2 = DiagonalSpec(Face(1, 1), Color.BLACK), DiagonalSpec(Face(4, 4), Color.WHITE)
    cyc = hb.ham_through_two_diagonals(q1083, e1, e2)
    root = ET.fromstring(to_svg(CycleDoc(InstanceDoc(q1083, (e1, e2)), cyc.vertices)))
    tags = [el.tag.split("}")[-1] for el in root.iter()]
    assert tags.count("circle") == 80
    lines = [el for el in root.iter() if el.tag.endswith("line")]
    assert len(lines) >= 162
    assert sum(el.get("stroke-dasharray") is not None for el in lines) >= 2


# --- command line ---------------------------------------------------------------


def test_gen_classifies(capsys, tmp_path):
    out = tmp_path / "inst.json"
    code, stdout, _ = run(capsys, "gen", 10, 8, 2, "--out", out)
    assert code == 0
    assert "simple bipartite k=4" in stdout
    assert load(out) == InstanceDoc(TorusParams(10, 8, 2))


def test_gen_non_simple_warns(capsys):
    code, stdout, err = run(capsys, "gen", "--m", 1, "--n", 8, "--q", 4)
    assert code == 0
    assert "non-simple" in err and "warning" in err
    assert json.loads(stdout)["params"] == {"m": 1, "n": 8, "q": 4}


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", 0, 8, 2],
        ["gen", 10, 8],
        ["ham", "--m", 10, "--n", 8, "--q", 2, "--face", "1,1"],
        ["ham", "--m", 10, "--n", 8, "--q", 2, "--face", "1,1", "--face", "x"],
        ["ham", "--m", 10, "--n", 8, "--q", 2, "--face", "1,1", "--face", "1,1"],
        ["ham", "--m", 3, "--n", 4, "--q", 0, "--face", "1,1", "--face", "2,2"],
        ["cover", "--m", 10, "--n", 8, "--q", 2, "--face", "4,4", "--color", "white"],
        ["oracle", "--m", 10, "--n", 8, "--q", 2],
        ["export", "nonexistent.json"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_export_unknown_format(capsys, tmp_path, q183):
    path = tmp_path / "inst.json"
    save(InstanceDoc(q183), path)
    assert run(capsys, "export", path, "--format", "png")[0] == 2


def test_ham_matches_library(capsys, tmp_path, q1083):
    out = tmp_path / "cycle.json"
    code, _, _ = run(capsys, "ham", "--m", 10, "--n", 8, "--q", 2, "--face", "1,1", "--face", "4,4", "--out", out)
    assert code == 0
    doc = load(out)
    direct = hb.ham_through_two_diagonals(q1083, DiagonalSpec(Face(1, 1), Color.BLACK), DiagonalSpec(Face(4, 4), Color.WHITE))
    assert doc.vertices == direct.vertices
    assert doc.status.ok


def test_ham_reads_instance_file(capsys, tmp_path, q1083):
    inst = tmp_path / "inst.json"
    save(InstanceDoc(q1083, (DiagonalSpec(Face(1, 1), Color.BLACK),)), inst)
    code, stdout, _ = run(capsys, "ham", inst, "--face", "4,4", "--color", "white")
    assert code == 0
    assert json.loads(stdout)["status"]["ok"]


def test_cover_table(capsys):
    code, stdout, err = run(capsys, "cover", "--m", 1, "--n", 8, "--q", 3, "--face", "0,0", "--face", "0,3")
    assert code == 0
    rows = stdout.strip().splitlines()
    assert len(rows) == 18
    assert all(r.endswith("\tok") for r in rows)
    assert "covered 18/18" in err


def test_oracle_counts_match_library(capsys, q183):
    code, stdout, _ = run(capsys, "oracle", "--m", 1, "--n", 8, "--q", 3)
    assert code == 0
    assert stdout.strip() == f"all\t{oracle.enumerate_ham_cycles(build(q183)).count}"
    code, stdout, _ = run(capsys, "oracle", "--m", 1, "--n", 8, "--q", 3, "--face", "0,0")
    assert code == 0 and stdout.strip() == "0,0:0,4\t0"
    code, stdout, _ = run(capsys, "oracle", "--m", 1, "--n", 8, "--q", 3, "--through", "0,0:0,3")
    assert stdout.strip() == f"0,0:0,3\t{oracle.enumerate_ham_cycles(build(q183), through=((0, 0), (0, 3))).count}"


def test_oracle_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("TOROHAM_BUDGET", "6")
    assert run(capsys, "oracle", "--m", 1, "--n", 8, "--q", 3)[0] == 2
    assert run(capsys, "oracle", "--m", 1, "--n", 8, "--q", 3, "--budget", 8)[0] == 0


@pytest.mark.parametrize("mode, bound", [("prop2", 16), ("negative", 12), ("cover", 12)])
def test_sweep_small(capsys, mode, bound):
    code, stdout, _ = run(capsys, "sweep", bound, mode)
    report = json.loads(stdout)
    assert code == 0 and report["ok"] and report["checked"] > 0
    assert report["mode"] == mode and report["failures"] == []


def test_sweep_no_dedup_checks_more(capsys):
    dedup = json.loads(run(capsys, "sweep", 16, "prop2")[1])
    raw = json.loads(run(capsys, "sweep", 16, "prop2", "--no-dedup")[1])
    assert raw["ok"] and raw["checked"] > dedup["checked"]


def test_export_formats(capsys, tmp_path, q183):
    path = tmp_path / "inst.json"
    save(InstanceDoc(q183), path)
    assert run(capsys, "export", path, "--format", "dot")[1] == to_dot(InstanceDoc(q183))
    assert run(capsys, "export", path, "--format", "svg")[1] == to_svg(InstanceDoc(q183))
    assert json.loads(run(capsys, "export", path)[1]) == InstanceDoc(q183).to_json()


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "toroham", "gen", "1", "8", "4"], capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run([sys.executable, "-m", "toroham", "gen", "0", "8", "2"], capture_output=True, text=True)
    assert proc.returncode == 2
