import json

from toricgraph import fixtures, repro
from toricgraph.repro import ReproResult, judge, load_expected, reproduce, results_json, summary


def test_fixture_file_matches_bootstrap_for_stated_claims():
    expected = load_expected()
    stated = fixtures.stated_claims()
    for claim, spec in stated.items():
        assert expected[claim] == spec
    assert {v["provenance"] for v in expected.values()} == {"stated", "derived"}


def test_every_task_claim_has_a_fixture():
    expected = load_expected()
    for scope in ("k2t", "c4r", "z"):
        for r in reproduce(scope):
            assert r.claim in expected


def test_judge_rules():
    spec = {"value": 4, "provenance": "stated", "compare": "eq"}
    assert judge("x", spec, 4, True, "").status == "match"
    assert judge("x", spec, 5, True, "").status == "FAIL"
    assert judge("x", spec, 5, False, "").status == "bound-consistent"
    assert judge("x", spec, 3, False, "").status == "FAIL"
    assert judge("x", spec, None, False, "cap").status == "skipped"
    le = {"value": 3, "provenance": "stated", "compare": "le"}
    assert judge("x", le, 2, True, "").status == "match"
    assert judge("x", le, 4, True, "").status == "FAIL"


def test_scopes_pass():
    for scope in ("k2t", "c4r", "z"):
        res = reproduce(scope)
        assert summary(res)["FAIL"] == 0, [r.line() for r in res if r.status == "FAIL"]


def test_order_fixed_by_claim_id_and_jobs_irrelevant():
    a = reproduce("c4r", jobs=1)
    b = reproduce("c4r", jobs=3)
    assert [r.claim for r in a] == sorted(r.claim for r in a)
    assert json.dumps(results_json("c4r", a), sort_keys=True, default=str) == \
        json.dumps(results_json("c4r", b), sort_keys=True, default=str)


def test_missing_fixture_is_a_failure():
    res = reproduce("c4r", expected={})
    assert res and all(r.status == "FAIL" for r in res)


def test_resource_skip_is_not_failure():
    res = reproduce("z", budget_cells=10)
    row = next(r for r in res if r.claim == "Z.betti.row1")
    assert row.status == "skipped"
    assert summary(res)["FAIL"] == 0


def test_line_format():
    r = ReproResult("Gt.t2.reg", 4, "stated", 4, "match", "exact")
    assert r.line().startswith("match") and r.line().endswith("[exact]")
