from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest
from conftest import edge_set, edge_set_of_boxes

from boxrep.boxmodel import Box, BoxRepresentation, Interval, rep_from_json, rep_to_json, segments_from_json
from boxrep.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from boxrep.families import tetrahedron
from boxrep.graph import Graph, format_graph, parse_graph
from boxrep.surface import format_rotation


@pytest.fixture(autouse=True)
def _in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv: str) -> tuple[int, str, str]:
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def fields(text: str) -> dict[str, str]:
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


def write_graph(name: str, g: Graph) -> str:
    Path(name).write_text(format_graph(g), encoding="utf-8")
    return name


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def test_analyze_k7(capsys):
    assert run(capsys, "fixture", "k7", "--out", "k7.rot")[0] == EXIT_OK
    rc, out, _ = run(capsys, "analyze", "k7.rot")
    f = fields(out)
    assert rc == EXIT_OK
    assert (f["vertices"], f["edges"], f["faces"], f["euler_genus"]) == ("7", "21", "14", "2")
    assert (f["edge_width"], f["face_width"]) == ("3", "3")
    assert (f["triangles_facial"], f["triangles_non_facial"], f["triangles_non_contractible"]) == ("14", "21", "21")


def test_analyze_plane_graph_has_no_widths(capsys):
    Path("tet.rot").write_text(format_rotation(tetrahedron()), encoding="utf-8")
    rc, out, _ = run(capsys, "analyze", "tet.rot")
    f = fields(out)
    assert rc == EXIT_OK and f["euler_genus"] == "0"
    assert f["edge_width"].startswith("undefined")


def test_malformed_input_reports_the_line(capsys):
    Path("bad.rot").write_text("# triangle\n0: 0-1 0-2\n1: 0-1 1-x\n2: 0-2 1-2\n", encoding="utf-8")
    rc, _, err = run(capsys, "analyze", "bad.rot")
    assert rc == EXIT_INPUT and "line 3" in err
    rc, _, err = run(capsys, "analyze", "missing.rot")
    assert rc == EXIT_INPUT and "missing.rot" in err


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def c4_files() -> tuple[str, str]:
    g = Graph.cycle(4)
    rep = BoxRepresentation(
        2,
        {
            0: Box([Interval(0, 1), Interval(0, 3)]),
            1: Box([Interval(0, 3), Interval(3, 4)]),
            2: Box([Interval(3, 4), Interval(-1, 4)]),
            3: Box([Interval(0, 3), Interval(-1, 0)]),
        },
    )
    assert edge_set_of_boxes(dict(rep.boxes)) == edge_set(g)
    Path("c4.rep.json").write_text(rep_to_json(rep), encoding="utf-8")
    return "c4.rep.json", write_graph("c4.graph", g)


def test_verify_accepts_and_rejects(capsys):
    rep, graph = c4_files()
    rc, out, err = run(capsys, "verify", rep, graph)
    assert rc == EXIT_OK and out.strip() == "ok" and not err
    wrong = write_graph("c4chord.graph", Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]))
    rc, out, err = run(capsys, "verify", rep, wrong)
    assert rc == EXIT_FAIL and out.startswith("FAILED") and "0" in err and "2" in err


def test_verify_strict_flags_corner_contacts(capsys):
    rep, graph = c4_files()
    assert run(capsys, "verify", rep, graph, "--strict")[0] == EXIT_OK
    touching = BoxRepresentation(
        2,
        {
            0: Box([Interval(0, 1), Interval(0, 1)]),
            1: Box([Interval(1, 2), Interval(1, 2)]),
        },
    )
    Path("touch.rep.json").write_text(rep_to_json(touching), encoding="utf-8")
    edge = write_graph("edge.graph", Graph.from_edges(2, [(0, 1)]))
    assert run(capsys, "verify", "touch.rep.json", edge)[0] == EXIT_OK
    rc, _, err = run(capsys, "verify", "touch.rep.json", edge, "--strict")
    assert rc == EXIT_FAIL and err


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------


def test_build_torus_outputs_and_manifest(capsys):
    run(capsys, "fixture", "torus-grid:5x5", "--out", "g55.rot")
    rc, out, _ = run(capsys, "build", "torus", "g55.rot", "--out", "t.rep.json")
    assert rc == EXIT_OK and "d=5" in out
    rep = rep_from_json(Path("t.rep.json").read_text())
    g = parse_graph(Path("t.rep.json.graph").read_text())
    assert g.n == 25 and edge_set_of_boxes(dict(rep.boxes)) == edge_set(g)
    assert Path("t.rep.json.audit").read_text().splitlines()[-1] == "verify: ok"
    manifest = json.loads(Path("t.rep.json.manifest.json").read_text())
    assert manifest["tie_break"] == "lowest-id" and manifest["command"][:2] == ["build", "torus"]
    assert set(manifest["inputs"]) == {"g55.rot"} and len(manifest["inputs"]["g55.rot"]) == 64


def test_build_is_byte_identical_on_rerun(capsys):
    run(capsys, "fixture", "torus-grid:4x6", "--out", "g46.rot")
    names = ("r.json", "r.json.graph", "r.json.audit", "r.json.manifest.json")
    assert run(capsys, "build", "torus", "g46.rot", "--out", "r.json")[0] == EXIT_OK
    first = [Path(n).read_bytes() for n in names]
    assert run(capsys, "build", "torus", "g46.rot", "--out", "r.json")[0] == EXIT_OK
    assert [Path(n).read_bytes() for n in names] == first


def test_build_deletion_reindexes(capsys):
    run(capsys, "fixture", "deletion", "--out", "del.rot")
    rc, out, _ = run(capsys, "build", "deletion", "del.rot", "del.rot.partition.json", "--out", "d.json")
    assert rc == EXIT_OK and "d=5" in out
    rep = rep_from_json(Path("d.json").read_text())
    part = json.loads(Path("del.rot.partition.json").read_text())
    kept = sorted(set(part["A"]) | {v for p in part["paths"] for v in p})
    assert rep.metadata["original_ids"] == kept
    assert sorted(rep.boxes) == list(range(len(kept)))
    rc, _, err = run(capsys, "build", "deletion", "del.rot", "--out", "d2.json")
    assert rc == EXIT_INPUT and "partition" in err


def test_build_clique_path_and_segments(capsys):
    Path("tab.json").write_text(json.dumps({"k": 2, "path_len": 5, "nbrs": {"0": [1, 2], "1": [4]}, "t": "1/2"}))
    rc, out, _ = run(capsys, "build", "lemma-tech", "tab.json", "--out", "lt.json")
    assert rc == EXIT_OK and "d=3" in out
    rep = rep_from_json(Path("lt.json").read_text())
    assert all(rep.boxes[v][2].hi == Fraction(1, 2) for v in (5, 6))
    assert all(rep.boxes[v][2].hi < Fraction(1, 2) for v in range(5))
    Path("bad.json").write_text(json.dumps({"k": 1, "path_len": 5, "nbrs": {"0": [0, 4]}}))
    rc, _, err = run(capsys, "build", "lemma-tech", "bad.json")
    assert rc == EXIT_INPUT and "window" in err

    write_graph("c9.graph", Graph.cycle(9))
    rc, out, _ = run(capsys, "build", "segment-5pd", "c9.graph", "--out", "s.json")
    assert rc == EXIT_OK
    segments_from_json(Path("s.json").read_text())
    assert run(capsys, "verify", "s.json", "c9.graph", "--segments")[0] == EXIT_OK
    write_graph("k4.graph", Graph.complete(4))
    assert run(capsys, "build", "segment-5pd", "k4.graph")[0] == EXIT_INPUT


def test_build_five_box_with_explicit_collection(capsys):
    run(capsys, "fixture", "torus-grid:9x9", "--out", "g99.rot")
    Path("coll.json").write_text(json.dumps({"cycles": [list(range(9))], "min_distance": 4}))
    rc, out, _ = run(capsys, "build", "five-box", "g99.rot", "--collection", "coll.json", "--out", "f.json")
    assert rc == EXIT_OK and "d=5" in out
    manifest = json.loads(Path("f.json.manifest.json").read_text())
    assert set(manifest["inputs"]) == {"g99.rot", "coll.json"}
    Path("near.json").write_text(json.dumps({"cycles": [list(range(9))], "min_distance": 2}))
    assert run(capsys, "build", "seven-box", "g99.rot", "--collection", "near.json")[0] == EXIT_INPUT


# ---------------------------------------------------------------------------
# boxicity
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("args", "expected"),
    [((), "3"), (("--workers", "2"), "3"), (("--max-d", "2"), "> 2")],
)
def test_boxicity_k6_minus_pm(capsys, args, expected):
    run(capsys, "fixture", "k6-minus-pm", "--out", "k6.graph")
    rc, out, _ = run(capsys, "boxicity", "k6.graph", *args)
    assert rc == EXIT_OK and fields(out)["boxicity"] == expected


def test_boxicity_engines_and_witness(capsys):
    write_graph("c4.graph", Graph.cycle(4))
    for engine in ("assign", "grid"):
        rc, out, _ = run(capsys, "boxicity", "c4.graph", "--engine", engine, "--out", f"w-{engine}.json")
        assert rc == EXIT_OK and fields(out)["boxicity"] == "2"
        assert run(capsys, "verify", f"w-{engine}.json", "c4.graph")[0] == EXIT_OK
    write_graph("k5.graph", Graph.complete(5))
    assert fields(run(capsys, "boxicity", "k5.graph")[1])["boxicity"] == "0"


def test_boxicity_budget_exhaustion(capsys):
    k8pm = Graph.from_edges(8, [(i, j) for i in range(8) for j in range(i + 1, 8) if j != i + 4])
    write_graph("k8.graph", k8pm)
    rc, _, err = run(capsys, "boxicity", "k8.graph", "--max-d", "4", "--budget", "3")
    assert rc == EXIT_BUDGET and err


def test_unknown_fixture(capsys):
    assert run(capsys, "fixture", "nope", "--out", "x")[0] == EXIT_INPUT
    assert run(capsys, "fixture", "torus-grid:2x9", "--out", "x")[0] == EXIT_INPUT
