import io
import json

import pytest

from tropgr.cli import run

QUARTET = {"n": 4, "entries": {"1,2": "0", "1,3": "1", "1,4": "1", "2,3": "1", "2,4": "1", "3,4": "0"}}
BOUNDARY = {"n": 4, "entries": {"1,2": "-inf", "1,3": "0", "1,4": "0", "2,3": "0", "2,4": "0", "3,4": "-inf"}}
BAD = {"n": 4, "entries": {"1,2": "5", "1,3": "0", "1,4": "0", "2,3": "0", "2,4": "0", "3,4": "0"}}


def call(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    old = __import__("sys").stdin
    __import__("sys").stdin = io.StringIO(stdin)
    try:
        code = run(argv, out, err)
    finally:
        __import__("sys").stdin = old
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, data in [("q", QUARTET), ("b", BOUNDARY), ("bad", BAD)]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(data))
        paths[name] = str(p)
    nwk = tmp_path / "q.nwk"
    nwk.write_text("((1:0,2:0):1,(3:0,4:0):0);")
    paths["nwk"] = str(nwk)
    return paths


def test_section_eval(files):
    assert call(["section", "eval", files["q"], "-f", "u_2_4"]) == (0, "1\n", "")
    assert call(["section", "eval", files["q"], "-f", "u_3_4"])[1] == "0\n"
    code, out, _ = call(["section", "eval", files["q"], "-f", "u_2_4", "--json"])
    data = json.loads(out)
    assert data["value"] == "1" and data["I"] == ["13", "14", "23", "34"]


def test_section_eval_with_anchor(files):
    # anchored at 13: u_2_4 now means p24/p13, with log value x24 - x13 = 0
    assert call(["section", "eval", files["q"], "-f", "u_2_4", "--ij", "1,3"])[1] == "0\n"


def test_metric_from_tree(files):
    code, out, _ = call(["metric", "from-tree", files["nwk"], "--json"])
    assert code == 0
    assert json.loads(out) == QUARTET


def test_check_metric(files):
    assert call(["check-metric", files["q"]])[0] == 0
    code, out, _ = call(["check-metric", files["bad"], "--json"])
    assert code == 1 and json.loads(out)["witness"] == [1, 2, 3, 4]


def test_stdin_input():
    code, out, _ = call(["check-metric", "-", "--json"], stdin=json.dumps(BOUNDARY))
    assert code == 0 and json.loads(out)["J"] == ["12", "34"]


def test_tree_infer(files):
    code, out, _ = call(["tree", "infer", files["q"], "--json"])
    data = json.loads(out)
    assert data["T"] == "(2,(3,4))" and data["newick"] == "(1:0,2:0,(3:0,4:0):1);"


def test_section_verify_and_glue(files):
    assert call(["section", "verify", files["b"]])[0] == 0
    assert call(["section", "glue", files["b"], "--ij", "1,3", "--pq", "2,4"])[0] == 0


def test_initial_ideal_and_multiplicity(files):
    code, out, _ = call(["initial-ideal", files["q"], "--json"])
    assert json.loads(out)["generators"] == ["u_2_4 - u_1_3^(-1)*u_1_4*u_2_3"]
    code, out, _ = call(["multiplicity", files["q"], "--json"])
    assert code == 0 and json.loads(out)["m"] == 1
    code, out, _ = call(["multiplicity", files["bad"], "--json"])
    assert code == 1 and json.loads(out)["verdict"] == "unit"


def test_gr24_catalog_schema():
    code, out, _ = call(["gr24-catalog", "--json"])
    entries = json.loads(out)
    assert code == 0 and len(entries) == 27
    for e in entries:
        assert set(e) >= {"case", "J", "ij", "I", "generators"}


def test_fan():
    code, out, _ = call(["fan", "--n", "5", "--json"])
    data = json.loads(out)
    assert code == 0 and data["checks"]["petersen"] is True
    assert len(data["vertices"]) == 10 and len(data["edges"]) == 15


def test_fiber_check():
    code, out, _ = call(["fiber-check", "--n", "5", "--seed", "42", "--count", "5", "--json"])
    assert code == 0 and json.loads(out)["ok"] is True


def test_descent_check(files):
    assert call(["descent-check", files["q"], "--lambda", "1,2,3,1/2"])[0] == 0
    code, _, err = call(["descent-check", files["q"], "--lambda", "1,2,x,1/2"])
    assert code == 2 and "byte 4" in err


def test_input_errors(files, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"n": 4, "entries": {')
    code, out, err = call(["check-metric", str(broken)])
    assert code == 2 and out == "" and "byte 21" in err
    code, _, err = call(["section", "eval", files["q"], "-f", "u_2_4 + * 3"])
    assert code == 2 and "byte 8" in err
    assert call(["check-metric", str(tmp_path / "missing.json")])[0] == 2
    assert call(["no-such-command"])[0] == 2
    bad_tree = tmp_path / "bad.nwk"
    bad_tree.write_text("((1:1,2))")
    assert call(["metric", "from-tree", str(bad_tree)])[0] == 2


def test_output_is_deterministic(files):
    for argv in (["gr24-catalog", "--json"], ["fan", "--n", "5", "--json"], ["section", "verify", files["q"], "--json"]):
        assert call(argv) == call(argv)
