import pytest

import hyperseq


def test_parse_and_print():
    assert hyperseq.parse_formula("[]( p&q )") == "[](p & q)"
    assert hyperseq.parse_hypersequent("=> p // []q =>") == "=> p // []q =>"
    assert hyperseq.modal_depth("~[]~[](p & q) | [](~[]p | []~[]q)") == 3
    assert hyperseq.closure_size("~[]~[](p & q) | [](~[]p | []~[]q)") == 15
    with pytest.raises(ValueError):
        hyperseq.parse_formula("p &")


def test_hypersequent_json_shape():
    j = hyperseq.hypersequent_json("p => q")
    assert j == {"components": [{"left": [{"atom": "p"}], "right": [{"atom": "q"}]}]}


def test_translate_named_goals():
    assert hyperseq.translate("C3") == "~[]~[](p & q) | [](~[]p | []~[]q)"
    assert hyperseq.translate("J") == "p | []([](~[][]p & ~[][]q) | []q)"
    assert "J" in hyperseq.goal_names()
    with pytest.raises(ValueError):
        hyperseq.translate("p => // =>")


def test_search_and_check():
    r = hyperseq.search("J'", "RKB")
    assert r["status"] == "proof"
    assert hyperseq.check(r["proof"], "RKB") == (True, "")
    assert hyperseq.search("J", "RTB")["status"] == "unprovable-exhausted"


def test_decide_and_models():
    assert hyperseq.decide("C", "RS4Cut")["verdict"] == "valid"
    r = hyperseq.decide("[]p => p", "RK4Cut")
    assert r["verdict"] == "invalid"
    assert len(r["branch"]) == 1
    assert not hyperseq.bounded_validity("C", "S4", 4)["countermodel_found"]
    assert hyperseq.ps4_countermodel("C") == ["i"]
    assert hyperseq.ps4_countermodel("C3") == ["i", "j", "k"]


def test_replicate_single_criterion():
    rep = hyperseq.replicate([4])
    assert rep["all_pass"]
    assert [e["criterion"] for e in rep["entries"]] == [4]
    assert rep["entries"][0]["verdict"] == "pass"
