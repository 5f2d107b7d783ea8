import json
import subprocess
import sys
from pathlib import Path

import pytest

from commdiff.cli import main

from conftest import SEVEN_EDGES, TWO_TRIANGLES, edge_text


@pytest.fixture
def files(tmp_path):
    (tmp_path / "g.edges").write_text(edge_text(SEVEN_EDGES))
    (tmp_path / "p.cmty").write_text("4 5 6\n")
    (tmp_path / "a.cmty").write_text("3 4\n")
    (tmp_path / "split.cmty").write_text("1 2 3\n4 5 6\n")
    (tmp_path / "other.cmty").write_text("1 2\n3 4 5 6\n")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compare(files, capsys):
    code, out, _ = run(capsys, "compare", "--graph", files / "g.edges", "--primary", files / "p.cmty",
                       "--alt", files / "a.cmty", "--dump-pairs", files / "pairs.json")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == 0.5
    assert doc["pairs"] == [{"i": 0, "j": 0, "overlap": 1, "analytical": 2, "tv": 0.5}]
    pairs = json.loads((files / "pairs.json").read_text())
    assert pairs["pairs"][0]["analytical_nodes"] == ["5", "6"]


def test_heatmap(files, capsys):
    code, out, _ = run(capsys, "heatmap", "--graph", files / "g.edges",
                       "--communities", f"x={files / 'p.cmty'}", "--communities", f"y={files / 'a.cmty'}")
    assert code == 0
    # rows = alternative: row y, column x holds TV(x as primary, y as alternative)
    assert out.splitlines() == ["alternative\\primary,x,y", "x,0.000,0.000", "y,0.500,0.000"]


def test_rank_from_grid(capsys, tmp_path):
    code, out, _ = run(capsys, "rank", "--atv-grid", "tests/data/published_atv_grid.csv", "--out-dir", tmp_path)
    assert code == 0
    doc = json.loads(out)
    assert {a: v["rank"] for a, v in doc["otv"].items()} == {"SCAN": 5, "LPA": 4, "GM": 2, "Gdmp2": 6, "AGDL": 1, "Kcut": 3}
    assert sorted(p.name for p in tmp_path.iterdir()) == ["atv.csv", "dtv.csv", "otv.csv", "rank.json"]


def test_rank_from_communities_and_matrix(files, capsys):
    code, out, _ = run(capsys, "heatmap", "--graph", files / "g.edges", "--out", files / "h.csv",
                       "--communities", f"x={files / 'split.cmty'}", "--communities", f"y={files / 'other.cmty'}")
    assert code == 0
    code, out, _ = run(capsys, "rank", "--tv-matrix", f"saved={files / 'h.csv'}", "--graph", files / "g.edges",
                       "--dataset", "live", "--communities", f"x={files / 'split.cmty'}",
                       "--communities", f"y={files / 'other.cmty'}")
    assert code == 0
    assert json.loads(out)["datasets"] == ["saved", "live"]


def test_metrics(files, capsys):
    code, out, _ = run(capsys, "metrics", "--graph", files / "g.edges", "--dataset", "fx",
                       "--communities", f"split={files / 'split.cmty'}")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# conductance_aggregate=mean"
    assert lines[1] == "algorithm,dataset,isolability,modularity,conductance"
    assert lines[2] == "split,fx,0.750,0.357,0.143"


def test_detect(tmp_path, capsys):
    (tmp_path / "t.edges").write_text(edge_text(TWO_TRIANGLES))
    code, out, _ = run(capsys, "detect", "--graph", tmp_path / "t.edges", "--algo", "lpa", "--seed", 7)
    assert code == 0
    assert out == "# format: A\n1 2 3\n4 5 6\n"


def test_stats(files, capsys):
    code, out, _ = run(capsys, "stats", "--graph", files / "g.edges")
    assert json.loads(out) == {"nodes": 6, "edges": 7, "avg_degree": 2.33}


def test_validation_error_exit_code(files, capsys):
    (files / "bad.cmty").write_text("1 2 99\n")
    code, _, err = run(capsys, "compare", "--graph", files / "g.edges", "--primary", files / "bad.cmty", "--alt", files / "a.cmty")
    assert code == 1 and "99" in err


def test_io_error_exit_code(tmp_path, capsys):
    code, _, _ = run(capsys, "stats", "--graph", tmp_path / "missing.edges")
    assert code == 2


def test_console_script_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "commdiff.cli", "stats", "--graph", str(files / "g.edges")],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["edges"] == 7
