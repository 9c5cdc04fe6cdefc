import json

import pytest

from toricgraph.cli import EXIT_CLAIM, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main
from toricgraph.graphs import cycle_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_toric_gb_c4(capsys):
    code, out, _ = run(capsys, "toric-gb", "--family", "C4")
    assert code == EXIT_OK
    assert "e1*e3 - e2*e4" in out


def test_toric_gb_primitive_json(capsys):
    code, out, _ = run(capsys, "toric-gb", "--family", "K2t", "--t", "3", "--primitive", "--max-walk-len", "6",
                       "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert len(data["groebner_basis"]) == 3
    assert len(data["primitive"]["binomials"]) == 3


def test_invariants_gt3_json(capsys):
    code, out, _ = run(capsys, "invariants", "--family", "Gt", "--t", "3", "--order", "paper-gt", "--format", "json")
    d = json.loads(out)
    assert code == EXIT_OK
    assert (d["reg"], d["deg_h"], d["depth"], d["dim"]) == (4, 6, 7, 9)


def test_invariants_graph_file(capsys, tmp_path):
    from toricgraph.repro import data_text
    path = tmp_path / "z.json"
    path.write_text(data_text("z.json"))
    code, out, _ = run(capsys, "invariants", "--graph", str(path), "--budget-cells", "200000")
    assert code == EXIT_OK
    assert "(1 + 5x + 10x^2 + 13x^3 + 10x^4)/(1-x)^10" in out


def test_json_output_is_deterministic(capsys):
    args = ("invariants", "--family", "C4r", "--r", "2", "--format", "json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_family_and_dot(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = run(capsys, "family", "--family", "Cn", "--n", "6", "--dot", str(dot))
    assert code == EXIT_OK and "6 vertices, 6 edges" in out
    assert dot.read_text().startswith("graph")


def test_glue(capsys):
    code, out, _ = run(capsys, "glue", "--family", "C4", "--s", "2", "--edge", "e1")
    assert code == EXIT_OK
    assert "deg h 1 -> 2" in out and "ok" in out


@pytest.mark.parametrize("argv", [
    ("toric-gb",),
    ("toric-gb", "--family", "C4", "--graph", "x.json"),
    ("toric-gb", "--family", "Gt", "--t", "0"),
    ("toric-gb", "--family", "C4", "--order", "e1,e2"),
    ("glue", "--family", "C4", "--s", "2", "--edge", "nope"),
    ("invariants", "--family", "C4", "--budget-cells", "0"),
    ("bogus",),
])
def test_usage_errors(capsys, argv):
    assert main(list(argv)) == EXIT_USAGE


def test_resource_exit(capsys):
    code, _, err = run(capsys, "toric-gb", "--family", "Gt", "--t", "3", "--primitive", "--max-walk-len", "40",
                       "--budget-cells", "1000")
    assert code == EXIT_RESOURCE
    assert "resource cap" in err


def test_reproduce_c4r(capsys):
    code, out, _ = run(capsys, "reproduce", "c4r")
    assert code == EXIT_OK
    assert "FAIL=0" in out


def test_reproduce_gt_reports_failures(capsys):
    # the printed dimension 2t + 4 disagrees with |V(G_t)| = t + 6 for t >= 3
    code, out, _ = run(capsys, "reproduce", "gt", "--format", "json", "--jobs", "2")
    data = json.loads(out)
    failed = sorted(r["claim"] for r in data["results"] if r["status"] == "FAIL")
    assert code == EXIT_CLAIM
    assert failed == [f"Gt.t{t}.dim" for t in range(3, 7)]


def test_cache_dir_used(capsys, tmp_path):
    run(capsys, "toric-gb", "--family", "C4", "--cache", str(tmp_path))
    assert len(list(tmp_path.glob("*.tgb"))) == 1
    g = cycle_graph(4)
    assert g.num_edges == 4
