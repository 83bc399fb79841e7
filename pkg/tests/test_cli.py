import io
import json

import pytest

from freearr.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def structured(*argv):
    code, text = call(*argv, "--format", "structured")
    assert code == 0
    doc = json.loads(text)
    assert doc["schema_version"] == 1
    return doc


def test_check_free_example():
    doc = structured("check-free", "examples/a1.arr", "--pivot", "w")
    rep = doc["report"]
    assert (rep["b2"], rep["sigma2"], rep["verdict"]) == (18, 18, "locally-free-codim3-only")
    assert rep["higher_sigma"] == {"3": "unavailable"}


def test_charpoly_text():
    assert call("charpoly", "examples/a2_decone.arr") == (0, "t^3 - 7t^2 + 18t - 19\n")


def test_ziegler_boolean():
    doc = structured("ziegler", "examples/boolean3.arr", "--pivot", "2")
    assert doc["multiplicities"] == {"x": 1, "y": 1}


def test_betti_and_poset():
    assert structured("betti", "braid4.arr", "-k", "2")["betti"] == 11
    doc = structured("poset", "braid3.arr")
    assert [len(level) for level in doc["levels"]] == [1, 3, 1]


def test_exponents2_and_sigma():
    assert structured("exponents2", "rank2_222.arr")["exponents"] == [3, 3]
    code, text = call("sigma", "rank2_222.arr")
    assert code == 0 and "sigma2: 9" in text


def test_certify_and_gap():
    doc = structured("certify", "braid4.arr")
    assert doc["free"] and doc["exponents"] == [0, 1, 2, 3]
    gap = structured("gap", "a2.arr", "--pivot", "w")["gap"]
    assert gap["b2_minus_sigma2"] == 0 and gap["polynomial_gap"] is None


def test_decone_names_variables():
    doc = structured("decone", "a1.arr", "--pivot", "w")
    assert doc["arrangement"]["variables"] == ["x", "y", "z"]
    assert doc["charpoly"]["pretty"] == "t^3 - 7t^2 + 18t - 17"


def test_exit_codes(tmp_path, capsys):
    assert call("ziegler", "a1_decone.arr", "--pivot", "0")[0] == 3
    assert call("decone", "a1.arr")[0] == 3
    assert call("decone", "a1.arr", "--pivot", "nope")[0] == 3
    bad = tmp_path / "bad.arr"
    bad.write_text('{"dim": 1, "hyperplanes": [{"coeffs": ["1"]},\n {"coeffs": ["2"]}]}')
    assert call("charpoly", str(bad))[0] == 2
    assert "bad.arr:2" in capsys.readouterr().err
    assert call("charpoly", str(tmp_path / "missing.arr"))[0] == 2


def test_selftest_passes():
    code, text = call("selftest")
    assert code == 0
    assert text.strip().splitlines()[-1].endswith("checks passed")


def test_selftest_fails_on_wrong_expectation(tmp_path):
    (tmp_path / "x.arr").write_text(json.dumps({
        "dim": 2, "hyperplanes": [{"coeffs": ["1", "0"]}, {"coeffs": ["0", "1"]}],
        "expect": {"charpoly": [0, 0, 1]}}))
    assert call("selftest", "--catalog", str(tmp_path))[0] == 1


@pytest.mark.parametrize("cmd", ["decone", "ziegler", "check-free", "gap"])
def test_pivot_required(cmd):
    assert call(cmd, "braid4.arr")[0] == 3
