import itertools
import json

import pytest

from qnetrel.cli import EXIT_ERROR, EXIT_FAILED, EXIT_OK, main


def write_graph(path, num_nodes, edges):
    doc = {"num_nodes": num_nodes, "edges": [{"u": u, "v": v, "p_fail": p} for u, v, p in edges]}
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def bridge_file(tmp_path):
    return write_graph(tmp_path / "bridge.json", 2, [(0, 1, 0.25)])


@pytest.fixture
def triangle_file(tmp_path):
    return write_graph(tmp_path / "tri.json", 3, [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5)])


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_exact(capsys, bridge_file, triangle_file):
    code, out = run(capsys, "exact", "--graph", bridge_file)
    assert code == EXIT_OK
    assert out["reliability"] == 0.75 and out["method"] == "enumeration" and out["configs"] == 2
    code, out = run(capsys, "exact", "--graph", triangle_file)
    assert out["reliability"] == pytest.approx(0.5, abs=1e-15)


def test_exact_over_cap(capsys, tmp_path):
    pairs = list(itertools.combinations(range(9), 2))[:30]
    path = write_graph(tmp_path / "big.json", 9, [(u, v, 0.5) for u, v in pairs])
    code, out = run(capsys, "exact", "--graph", path)
    assert code == EXIT_ERROR
    assert out["error"]["type"] == "InstanceTooLargeError"


def test_invalid_graph(capsys, tmp_path):
    path = write_graph(tmp_path / "loop.json", 2, [(0, 0, 0.1)])
    code, out = run(capsys, "exact", "--graph", path)
    assert code == EXIT_ERROR and out["error"]["type"] == "SelfLoopError"
    code, out = run(capsys, "exact", "--graph", str(tmp_path / "missing.json"))
    assert code == EXIT_ERROR and out["error"]["type"] == "UsageError"


def test_simulate(capsys, bridge_file, tmp_path):
    code, out = run(capsys, "simulate", "--graph", bridge_file)
    assert code == EXIT_OK and out["method"] == "exact-readout"
    assert abs(out["value"] - 0.75) <= 1e-9
    lone = write_graph(tmp_path / "lone.json", 2, [])
    code, out = run(capsys, "simulate", "--graph", lone, "--terminals", "2")
    assert out["value"] == 0.0


def test_simulate_seed_invariant_value(capsys, triangle_file):
    _, a = run(capsys, "simulate", "--graph", triangle_file, "--seed", "1")
    _, b = run(capsys, "simulate", "--graph", triangle_file, "--seed", "2")
    assert json.dumps(a["value"]) == json.dumps(b["value"])


def test_sample(capsys, bridge_file):
    code, out = run(capsys, "sample", "--graph", bridge_file, "--shots", "10000", "--seed", "0")
    assert code == EXIT_OK and 0.73 <= out["value"] <= 0.77
    assert out["ci_low"] <= out["value"] <= out["ci_high"]
    _, out = run(capsys, "sample", "--graph", bridge_file, "--shots", "1")
    assert out["value"] in (0.0, 1.0)
    code, out = run(capsys, "sample", "--graph", bridge_file, "--shots", "0")
    assert code == EXIT_ERROR


def test_verify(capsys):
    code, out = run(capsys, "verify", "--trials", "0")
    assert code == EXIT_OK and out["summary"]["passed"] and out["trials"] == []
    code, out = run(capsys, "verify", "--trials", "30", "--tolerance", "0")
    assert code == EXIT_FAILED and out["summary"]["max_deviation"] > 0
    code, out = run(capsys, "verify", "--trials", "30")
    assert code == EXIT_OK


def test_resources(capsys, triangle_file):
    code, out = run(capsys, "resources", "--num-edges", "3", "--num-nodes", "3", "--epsilon", "0.1")
    assert code == EXIT_OK and out["cnot_real"] == 2640 and out["model"] == "paper-eq13"
    _, out = run(capsys, "resources", "--num-edges", "1", "--num-nodes", "2", "--epsilon", "1")
    assert (out["cnot_real"], out["t_real"]) == (56, 62)
    _, from_graph = run(capsys, "resources", "--graph", triangle_file, "--epsilon", "0.2")
    _, explicit = run(capsys, "resources", "--num-edges", "3", "--num-nodes", "3", "--epsilon", "0.1")
    assert from_graph["cnot_real"] * 2 == explicit["cnot_real"]
    code, out = run(capsys, "resources", "--epsilon", "0.1")
    assert code == EXIT_ERROR
    code, out = run(capsys, "resources", "--num-edges", "3", "--num-nodes", "3", "--epsilon", "0")
    assert code == EXIT_ERROR and out["error"]["type"] == "ValueError"
