import io
import json
import math

import pytest

from xspace.cli import RunReport, main
from xspace.graphs import Graph
from xspace.polylog import PolylogSpec

TRIANGLE_JSON = json.dumps({"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"], ["a", "c"]]})
EDGE_JSON = json.dumps({"vertices": ["a", "b"], "edges": [["a", "b"]]})


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_orient_count_triangle(capsys):
    code, rep = run_json(capsys, "graph", "orient", "count", "--graph", TRIANGLE_JSON)
    assert code == 0 and rep["results"]["count"] == 6
    code, rep = run_json(capsys, "graph", "orient", "list", "--preset", "banana3")
    assert code == 0 and len(rep["results"]["orientations"]) == 2


def test_graph_other_actions(capsys):
    code, rep = run_json(capsys, "graph", "nests", "--preset", "triangle")
    assert code == 0 and rep["results"]["count"] == 15
    code, rep = run_json(capsys, "graph", "subgraphs", "biconnected", "--preset", "triangle")
    assert code == 0
    code, rep = run_json(capsys, "graph", "laplacian", "--preset", "triangle")
    assert code == 0 and all(sum(row) == 0 for row in rep["results"]["laplacian"])


def test_graph_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(TRIANGLE_JSON))
    code, rep = run_json(capsys, "graph", "orient", "count", "--graph", "-")
    assert code == 0 and rep["results"]["count"] == 6


def test_motive_single_edge(capsys):
    code, rep = run_json(capsys, "motive", "--graph", EDGE_JSON, "--dimX", "2", "--x-class", "1+L+L^2")
    assert code == 0
    assert rep["results"]["class"] == "1 + 5*L + 13*L^2 + 22*L^3 + 26*L^4 + 22*L^5 + 13*L^6 + 5*L^7 + L^8"


def test_sing_report(capsys):
    code, rep = run_json(capsys, "sing", "--preset", "triangle", "--dimension", "4")
    assert code == 0 and rep["results"]["convergence"]["all"] is True
    orders = sorted(s["order"] for s in rep["results"]["singularity_orders"])
    assert orders == [-8, -4, -4, -4]


def test_polylog_zeta2(capsys):
    code, rep = run_json(capsys, "polylog", '{"domain":"P","s":[2],"z":[1]}')
    v = rep["results"]["value"]
    assert code == 0 and v["value"] == pytest.approx(math.pi**2 / 6, abs=1e-12) and v["tail_bound"] < 1e-12


def test_polylog_oracle_side_by_side(capsys):
    code, rep = run_json(capsys, "polylog", '{"domain":"MP","s":[1,2],"z":[0.5,0.5]}', "--oracle")
    assert code == 0 and rep["oracle"]["agree"] is True
    assert PolylogSpec.from_json(rep["inputs"]["spec"]) == PolylogSpec("MP", (1, 2), (0.5, 0.5))


def test_amp_commands(capsys):
    code, rep = run_json(capsys, "amp", "polygon", "--paths", "1,1")
    assert code == 0 and rep["results"]["exact"]["text"] == "-1 + zeta(2)"
    assert rep["results"]["absolute_value"]["value"] == pytest.approx(2 * math.pi**8 * (math.pi**2 / 6 - 1))
    code, rep = run_json(capsys, "amp", "star", "--case", "o1", "--t", "0.5,0.4,0.3")
    assert code == 0 and rep["results"]["alpha0"] == -3
    code, rep = run_json(capsys, "amp", "banana3", "--eps", "1e-8")
    assert code == 0 and rep["results"]["normalized_value"]["value"] == pytest.approx(0.0804817085, abs=1e-8)


def test_input_errors_exit_two(capsys):
    for argv in (
        ["graph", "orient", "sideways", "--preset", "triangle"],
        ["graph", "orient", "count", "--graph", "{not json"],
        ["graph", "orient", "count", "--graph", '{"vertices": ["a"]}'],
        ["amp", "polygon", "--k", "5", "--paths", "1,1"],
        ["polylog", '{"domain":"P","s":[2],"z":[1.5]}'],
        ["motive", "--preset", "edge", "--dimX", "2", "--x-class", "1+x"],
        ["nonsense"],
    ):
        code, out = run(capsys, *argv)
        assert code == 2, argv
        err = json.loads(out)
        assert set(err["error"]) == {"type", "message"}


def test_text_format(capsys):
    code, out = run(capsys, "graph", "orient", "count", "--preset", "triangle", "--format", "text")
    assert code == 0 and "count: 6" in out
    code, out = run(capsys, "--format", "text", "graph", "orient", "count", "--preset", "triangle")
    assert code == 0 and "count: 6" in out


def test_reports_are_deterministic(capsys):
    argv = ["polylog", '{"domain":"T","s":[3,3,3],"z":[0.5,0.5,0.5]}', "--oracle"]
    _, a = run_json(capsys, *argv)
    _, b = run_json(capsys, *argv)
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b
    assert RunReport([], a["inputs"], {}).inputs_digest == a["inputs_digest"]


def test_graph_echo_round_trips(capsys):
    _, rep = run_json(capsys, "graph", "orient", "count", "--graph", TRIANGLE_JSON)
    assert Graph.from_json(rep["inputs"]["graph"]) == Graph.from_json(json.loads(TRIANGLE_JSON))


def test_verify_subset_exit_codes(capsys):
    code, rep = run_json(capsys, "verify", "--criteria", "1,2")
    assert code == 0 and all(c["passed"] for c in rep["results"]["criteria"])
    code, rep = run_json(capsys, "verify", "--criteria", "5")
    assert code == 1 and not rep["ok"]
