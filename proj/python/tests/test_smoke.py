import json

import pytest

import bigmcg


def test_atlas_basics():
    atlas = bigmcg.Atlas(4)
    assert atlas.ends == 4 and atlas.depth == 6
    assert "c0[3]" in atlas.curves()
    assert atlas.intersection("a[1,1]", "b[1,1]") == 1
    assert atlas.intersection("a[1,1]", "a[2,1]") == 0
    assert atlas.homology_str("c0[1]") == "a[1,1] - a[2,1]"


def test_atlas_json_round_trip():
    atlas = bigmcg.Atlas(3)
    again = bigmcg.Atlas.from_json(atlas.to_json())
    assert again.curves() == atlas.curves()
    assert json.loads(again.to_json()) == json.loads(atlas.to_json())


def test_engine_evaluate_and_matrix():
    engine = bigmcg.Engine(bigmcg.Atlas(3))
    assert engine.evaluate("h[1]", "b[1,1]") == "b[2,1]"
    assert engine.evaluate("A[1,1]", "b[1,1]") == "-a[1,1] + b[1,1]"
    m = engine.matrix("h[1]")
    assert len(m) == 36
    assert any(entry is None for entry in m[0])
    assert engine.preserves_form("rho1*A[2,3]*tau2")


def test_words_and_ends():
    assert bigmcg.parse_word("R") == "rho1*rho2"
    assert bigmcg.free_reduce("A[1,1]*inv(A[1,1])*h[1]") == "h[1]"
    assert bigmcg.invert("rho1*B[1,1]") == "inv(B[1,1])*inv(rho1)"
    assert bigmcg.perm("R", 4) == [2, 3, 4, 1]
    assert bigmcg.perm_str("tau1", 4) == "(1 2)(3)(4)"
    assert bigmcg.closure_order(["R", "tau1"], 5) == 120


def test_run_script():
    report = bigmcg.run_script("lem33", bigmcg.Atlas(5))
    assert report["verdict"] == "pass"
    assert report["ends"] == 5
    assert "lem44" in bigmcg.script_ids()


def test_errors_carry_kind():
    with pytest.raises(bigmcg.Error) as info:
        bigmcg.run_script("lem5", bigmcg.Atlas(7))
    assert info.value.kind == "ScriptNotApplicable"
    with pytest.raises(bigmcg.Error) as info:
        bigmcg.parse_word("A[1,1]**B")
    assert info.value.kind == "SyntaxError"
    with pytest.raises(bigmcg.Error):
        bigmcg.Atlas(1)
