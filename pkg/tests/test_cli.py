import json

import pytest

from graph_shotgun.cli import EXIT_CONFIG, EXIT_INVARIANT, EXIT_IO, main
from graph_shotgun.graph import Graph, load_graph, save_graph
from graph_shotgun.shotgun import load_collection


def test_sample_shred_assemble(tmp_path, capsys):
    g_path, c_path, h_path = tmp_path / "g.txt", tmp_path / "c.txt", tmp_path / "h.txt"
    assert main(["sample", "--n", "40", "--p", "0.6", "--seed", "3", "--out", str(g_path)]) == 0
    assert main(["shred", str(g_path), "--radius", "2", "--seed", "1", "--out", str(c_path)]) == 0
    assert load_collection(c_path).radius == 2
    capsys.readouterr()
    assert main(["assemble", str(c_path), "--method", "diameter2", "--out", str(h_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["status"] == "ExactSuccess"
    assert load_graph(h_path) == load_graph(g_path)


def test_assemble_unlabeled(tmp_path, capsys):
    g_path, c_path = tmp_path / "g.txt", tmp_path / "c.txt"
    assert main(["sample", "--n", "60", "--p", "0.75", "--seed", "1", "--out", str(g_path)]) == 0
    assert main(["shred", str(g_path), "--no-labeled-centers", "--out", str(c_path)]) == 0
    capsys.readouterr()
    assert main(["assemble", str(c_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["labeled"] is False and report["method"] == "fingerprint1"


def test_sample_to_stdout(capsys):
    assert main(["sample", "--n", "5", "--p", "1"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "5 10"


def test_sweep_with_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n_values": [20], "alpha_values": [0.5], "trials": 2,
                               "radius": 1, "method": "fingerprint1", "base_seed": 3}))
    out = tmp_path / "res"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
    first = (tmp_path / "res.csv").read_bytes()
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
    assert (tmp_path / "res.csv").read_bytes() == first
    assert (tmp_path / "res.jsonl").exists()
    capsys.readouterr()
    assert main(["sweep", "--config", str(cfg), "--format", "jsonl", "--trials", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1 and json.loads(lines[0])["trial"] == 0


@pytest.mark.parametrize("argv", [
    ["sweep", "--n", "10"],
    ["sweep", "--n", "10", "--alpha", "1.5"],
    ["sweep", "--n", "10", "--alpha", "0.5", "--method", "diameter2", "--radius", "1"],
    ["sample", "--n", "5"],
    ["sample", "--n", "5", "--p", "2"],
    ["diameter-check", "--n", "2", "--c", "50"],
    ["star-witness", "--n", "10"],
    ["nonsense"],
])
def test_config_errors(argv):
    assert main(argv) == EXIT_CONFIG


def test_bad_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{not json")
    assert main(["sweep", "--config", str(cfg)]) == EXIT_CONFIG


def test_io_errors(tmp_path):
    assert main(["shred", str(tmp_path / "missing.txt")]) == EXIT_IO
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 7\n")
    assert main(["shred", str(bad)]) == EXIT_IO
    assert main(["sweep", "--n", "10", "--alpha", "0.5", "--out", str(tmp_path / "no" / "x")]) == EXIT_IO


def test_invariant_exit(monkeypatch, tmp_path):
    from graph_shotgun import cli

    def broken(*args, **kwargs):
        from graph_shotgun.errors import InvariantViolation
        raise InvariantViolation("forced")

    monkeypatch.setattr(cli, "run_sweep", broken)
    assert main(["sweep", "--n", "10", "--alpha", "0.5"]) == EXIT_INVARIANT


def test_diameter_and_star(capsys):
    assert main(["diameter-check", "--n", "100", "--c", "3", "--trials", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["fraction_diameter_2"] == 1.0
    assert main(["star-witness", "--n", "300", "--alpha", "0.8", "--seed", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["beta"] == pytest.approx((0.8 + 2 / 3) / 2) and report["pigeonhole_holds"]


def test_search_pair(tmp_path, capsys):
    g_path, h_path = tmp_path / "g.txt", tmp_path / "h.txt"
    save_graph(Graph.from_edges(4, [(0, 1), (2, 3)]), g_path)
    assert main(["search-pair", str(g_path), "--out", str(h_path)]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result == {"found": True, "isomorphic": True, "edges": [[0, 2], [1, 3]]}
    assert load_graph(h_path) == Graph.from_edges(4, [(0, 2), (1, 3)])
    save_graph(Graph.complete(4), g_path)
    assert main(["search-pair", str(g_path)]) == 0
    assert json.loads(capsys.readouterr().out) == {"found": False}
