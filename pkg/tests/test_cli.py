import json

import pytest

from cgc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_classify_examples(capsys):
    code, out = run(capsys, "classify", "--kind", "gl", "--matrix", "1,0;1,1")
    assert code == 0 and out["result"]["type"] == {"factors": [{"poly": [2, 1], "parts": [2]}]}
    code, out = run(capsys, "classify", "--kind", "sp", "--matrix", "0,2;1,0")
    assert out["result"]["type"] == {"factors": [{"poly": [1, 0, 1], "parts": [1]}]}
    code, out = run(capsys, "classify", "--kind", "sp", "--matrix", "1,0;0,1")
    assert out["result"]["refl_length"] == 0 and out["result"]["fixed_dim"] == 2
    assert out["config"]["matrix"] == "1,0;0,1"


@pytest.mark.parametrize("matrix,kind,err", [
    ("1,x", "gl", "parse"), ("1,1;1,1", "gl", "singular"), ("1,1;0,2", "sp", "not_symplectic"),
    ("1,0,0;0,1,0;0,0,1", "sp", "not_symplectic"),
])
def test_classify_input_errors(capsys, matrix, kind, err):
    code, out = run(capsys, "classify", "--kind", kind, "--matrix", matrix)
    assert code == 2 and out["error"]["kind"] == err


def test_sc_trivial_lambda(capsys):
    code, out = run(capsys, "sc", "--kind", "gl", "--n", "2", "--lambda", "", "--mu", "1", "--eta", "1")
    assert code == 0 and out["result"]["c"] == 1
    code, out = run(capsys, "sc", "--kind", "sym", "--n", "6", "--lambda", "1", "--mu", "1",
                    "--eta", "2")
    assert out["result"]["c"] == 3


def test_expand_reports_mass(capsys):
    code, out = run(capsys, "expand", "--kind", "sp", "--n", "1", "--lambda", "1", "--mu", "1")
    assert code == 0 and out["result"]["mass"] == {"lhs": 16, "rhs": 16, "holds": True}


def test_stability_sp(capsys):
    code, out = run(capsys, "stability", "--kind", "sp", "--n", "1", "--n2", "2")
    assert code == 0 and out["result"]["holds"] and out["result"]["count"] == 57


def test_growth_and_budget(capsys):
    code, out = run(capsys, "growth", "--kind", "sp", "--matrix", "1,0;1,1", "--n2", "2")
    assert code == 0 and out["result"]["left"] == out["result"]["right"]
    code, out = run(capsys, "growth", "--kind", "sp", "--matrix", "1,0;1,1", "--n2", "2",
                    "--budget-filter", "10")
    assert code == 3 and out["status"] == "budget_exceeded"


def test_deterministic_output(capsys):
    argv = ["expand", "--kind", "gl", "--n", "2", "--lambda", "1", "--mu", "1"]
    main(argv)
    a = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == a


def test_bad_type_and_field(capsys):
    code, out = run(capsys, "sc", "--kind", "gl", "--lambda", "{bad", "--mu", "", "--eta", "")
    assert code == 2
    code, out = run(capsys, "sc", "--q", "6", "--kind", "gl", "--lambda", "", "--mu", "", "--eta", "")
    assert code == 2


def test_selftest_subset(capsys):
    code, out = run(capsys, "selftest", "--only", "3")
    assert code == 0 and out["result"]["criteria"][0]["ok"]


def test_table_format(capsys):
    assert main(["classify", "--kind", "gl", "--matrix", "2,0;0,2", "--format", "table"]) == 0
    assert "refl_length: 2" in capsys.readouterr().out
