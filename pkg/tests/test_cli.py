import json
import math

import pytest

from tropnet.cli import main
from tropnet.latin import PAIR_ORDER_4


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out else None


def test_ols(capsys):
    code, obj = run_json(capsys, "ols", "--order", "4")
    assert code == 0 and obj["count"] == 1 and obj["schema_version"] == 1
    assert run_json(capsys, "ols", "--order", "2")[1]["count"] == 0
    code, out, err = run(capsys, "ols", "--order", "6")
    assert code == 2 and "no 6x6 orthogonal pairs" in err


def test_json_output_is_deterministic(capsys):
    a = run(capsys, "table", "--json")
    b = run(capsys, "table", "--json")
    assert a == b and a[0] == 0


def test_bad_arguments_exit_2(capsys):
    assert run(capsys, "ols")[0] == 2
    assert run(capsys, "tropicalize", "/nonexistent.json")[0] == 2


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_net_build_and_verify(capsys, tmp_path):
    sq = _write(tmp_path, "pair.json", PAIR_ORDER_4.to_json())
    out = str(tmp_path / "net.json")
    code, obj = run_json(capsys, "net", "build", "--squares", sq, "--out", out)
    assert code == 0 and obj["net"]["k"] == 4
    code, obj = run_json(capsys, "net", "verify", out)
    assert code == 0 and obj["valid"] and obj["kind"] == "abstract"
    broken = json.loads(open(out).read())
    broken["incidence"]["1,1"].append([3, 2])
    code, obj = run_json(capsys, "net", "verify", _write(tmp_path, "bad.json", broken))
    assert code == 1 and not obj["valid"]
    assert any(r["condition"] == "unique-line" for r in obj["report"])


def test_tropicalize_32(capsys, tmp_path):
    net = {"lines": {"l11": [1, 0, 0], "l12": [0, 1, -1], "l21": [0, 0, 1],
                     "l22": [1, -1, 0], "l31": [0, 1, 0], "l32": [1, 0, -1]}}
    svg = str(tmp_path / "f.svg")
    code, obj = run_json(capsys, "tropicalize", _write(tmp_path, "n.json", net), "--matrix", "32", "--svg", svg)
    assert code == 0
    assert list(obj["centers"].values()) == [[1, -1], [1, 3], [-4, -2], [3, 2], [3, 4], [-2, -1]]
    assert open(svg).read().startswith("<svg")


def test_tropicalize_44_and_empty(capsys, tmp_path):
    net = {"lines": {"l11": [0, 0, 1], "l12": [1, 1, 1], "l21": [1, 0, 0],
                     "l22": [0, 1, 0], "l31": [1, 0, 1], "l32": [0, 1, 1]},
           "points": {"p11": [0, 1, 0], "p22": ["1/1", "0/1", "-1/1"]}}
    code, obj = run_json(capsys, "tropicalize", _write(tmp_path, "n.json", net))
    assert list(obj["centers"].values()) == [[-4, -3], [4, 3], [0, -1], [1, 5], [-2, 0], [3, 2]]
    assert obj["locations"] == {"p11": [-2, -1], "p22": [1, 3]}
    code, obj = run_json(capsys, "tropicalize", _write(tmp_path, "e.json", {}))
    assert code == 0 and obj["centers"] == {} and obj["locations"] == {}


def test_tropicalize_vanishing_is_input_error(capsys, tmp_path):
    mat = _write(tmp_path, "id.json", [[{"0": "1/1"}, {}, {}], [{}, {"0": "1/1"}, {}], [{}, {}, {"0": "1/1"}]])
    net = _write(tmp_path, "n.json", {"lines": {"l7": [1, 0, 0]}})
    code, out, err = run(capsys, "tropicalize", net, "--matrix", mat)
    assert code == 2 and "l7" in err


def test_table(capsys):
    code, obj = run_json(capsys, "table")
    rows = {tuple(r["coordinate"]): (r["points"], r["lines"]) for r in obj["rows"]}
    assert len(rows) == 12
    assert rows[(-2, 0)] == ("NS", "{d-f=0, e=0}")
    assert rows[(1, 2)] == ("{no relations}", "{no relations}")


def test_prove_and_verify(capsys, tmp_path):
    cert = str(tmp_path / "c44.json")
    report = str(tmp_path / "r.json")
    code, out, err = run(capsys, "prove", "44-nonexistence", "--out", cert, "--report", report)
    assert code == 0
    assert "witness constant 2 = (-1)*(3*k1^2 - 3*k1 + 1) + (3)*(k1^2 - k1 + 1)" in out
    rep = json.loads(open(report).read())
    assert rep["outcome"] == "trivial" and rep["artifacts"] == [cert] and rep["schema_version"] == 1
    assert run(capsys, "verify", "--cert", cert)[0] == 0

    obj = json.loads(open(cert).read())
    assert obj["schema_version"] == 1
    obj["witness"]["member"] = 0
    code, vobj = run_json(capsys, "verify", "--cert", _write(tmp_path, "bad.json", obj))
    assert code == 1 and not vobj["accepted"]


def test_prove_43(capsys, tmp_path):
    cert = str(tmp_path / "c43.json")
    code, obj = run_json(capsys, "prove", "43-uniqueness", "--out", cert)
    assert code == 0 and obj["minimal_polynomial"] == "k2^2 - k2 + 1"
    code, obj = run_json(capsys, "verify", "--cert", cert)
    assert code == 0 and obj["accepted"]


def test_step_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("TROPNET_STEP_BUDGET", "oops")
    assert run(capsys, "prove", "43-uniqueness")[0] == 2
    monkeypatch.setenv("TROPNET_STEP_BUDGET", "1")
    assert run(capsys, "prove", "44-nonexistence")[0] == 3


def test_amoeba(capsys, tmp_path):
    csv_path = str(tmp_path / "a.csv")
    code, obj = run_json(capsys, "amoeba", "--out", csv_path, "--xmin", "-1", "--xmax", "1", "--count", "3")
    assert code == 0 and obj["upper_at_zero"] == pytest.approx(math.log(2))
    rows = open(csv_path).read().splitlines()
    assert "upper,0.0," + repr(math.log(2)) in rows
    y100 = run_json(capsys, "amoeba", "--base", "t", "--t", "100")[1]["upper_at_zero"]
    y10k = run_json(capsys, "amoeba", "--base", "t", "--t", "10000")[1]["upper_at_zero"]
    assert 0 < y10k < y100
    assert run(capsys, "amoeba", "--base", "t", "--t", "0.5")[0] == 2
    assert run(capsys, "amoeba", "--base", "t")[0] == 2
