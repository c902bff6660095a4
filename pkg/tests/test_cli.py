import csv
import io
import json
import subprocess
import sys

import pytest

from coverlab.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema"] == "1"
    assert doc["command"] == argv[0]
    return doc


def test_density():
    doc = call_json("density", "--set", "0,1,3")
    assert (doc["nu"], doc["kappa"], doc["eff"]) == ("2/5", "6/5", "5/6")
    assert doc["config"]["variant"] == "gs-reduced"
    assert doc["config"]["width_limit"] == 24
    assert call_json("density", "--set", "0,1,2,4", "--variant", "gs")["eff"] == "3/4"


def test_period_and_cover_round_trip():
    assert call_json("period", "--set", "0,1,4,6")["period"] == 13
    doc = call_json("cover", "--set", "0,1,3")
    assert doc["verified"] and doc["period"] == 5
    again = call_json("cover", "--set", "0,1,3", "--period", str(doc["period"]),
                      "--offsets", doc["offsets"])
    assert again["verified"] and again["source"] == "given"
    bad = call_json("cover", "--set", "0,1,3", "--period", "6", "--offsets", "0,3")
    assert bad["verified"] is False


def test_cyclic_and_interval():
    doc = call_json("cyclic", "--set", "0,1,5", "--n", "6")
    assert doc["tau"] == 2 and doc["verified"]
    assert call_json("cyclic", "--set", "0,1,5", "--n", "6", "--greedy")["exact"] is False
    assert call_json("cyclic", "--set", "0,1,16", "--n", "40", "--solver", "milp")["tau"] == 16
    check = call_json("cyclic", "--set", "0,1,5", "--n", "6", "--witness", doc["witness"])
    assert check["verified"]
    doc = call_json("interval", "--set", "0,1,5", "--n", "6")
    assert doc["tau"] == 3 and doc["verified"]
    assert call_json("interval", "--set", "0,1,5", "--n", "6", "--method", "bnb")["tau"] == 3


def test_sweep_and_alpha():
    doc = call_json("sweep", "--s-max", "5")
    assert [r["value"] for r in doc["rows"]] == [1, 2, 4, 5, 8, 8]
    doc = call_json("sweep", "--mode", "lsk", "--k", "3", "--s-max", "6")
    assert [r["value"] for r in doc["rows"]][1:] == [5, 5, 8, 11]
    assert call_json("alpha", "--k", "3", "--d-max", "6")["rows"][0]["value"] == "5/6"


def test_sweep_shards_merge(tmp_path):
    paths = []
    for i in range(2):
        code, out, err = call("sweep", "--s-max", "6", "--shards", "2", "--shard", str(i))
        assert code == 0, err
        path = tmp_path / f"shard{i}.json"
        path.write_text(out)
        paths.append(str(path))
    merged = call_json("sweep", "--s-max", "6", "--merge", *paths)
    assert [r["value"] for r in merged["rows"]] == [1, 2, 4, 5, 8, 8, 13]


def test_random_is_reproducible():
    a = call("random", "--n", "20", "--k", "3", "--trials", "5", "--seed", "4")
    b = call("random", "--n", "20", "--k", "3", "--trials", "5", "--seed", "4", "--workers", "2")
    assert a[0] == 0
    da, db = json.loads(a[1]), json.loads(b[1])
    da["config"].pop("workers"), db["config"].pop("workers")
    assert da == db


def test_intervals():
    doc = call_json("intervals", "--example", "ER1", "--eps", "1/10")
    assert doc["lower_bound"] == "41/60" and doc["upper_bound"] == "7/10" and doc["verified"]
    doc = call_json("intervals", "--spec", "0,1;3/2,5/2", "--method", "IV")
    assert doc["certificate"]["method"] == "IV" and doc["verified"]
    doc = call_json("intervals", "--spec", "0,2;3,4", "--method", "grid", "--delta", "1")
    assert doc["lower_bound"] == "5/6"


def test_csv_output():
    code, out, _ = call("--format", "csv", "sweep", "--s-max", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["value"] for r in rows] == ["1", "2", "4", "5"]
    code, out, _ = call("--format", "csv", "density", "--set", "0,1,3")
    assert next(csv.DictReader(io.StringIO(out)))["eff"] == "5/6"


@pytest.mark.parametrize("argv", [
    ["density", "--set", "x"],
    ["density"],
    ["cyclic", "--set", "0,1", "--n", "0"],
    ["intervals", "--spec", "0,2;1,3"],
    ["intervals", "--example", "ER1", "--eps", "-1"],
    ["nonsense"],
])
def test_invalid_input_exits_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and "error" in err


@pytest.mark.parametrize("argv", [
    ["density", "--set", "0,1,3", "--width-limit", "2"],
    ["cyclic", "--set", "0,1", "--n", "200"],
    ["sweep", "--s-max", "11"],
    ["alpha", "--k", "3", "--d-max", "22"],
    ["cyclic", "--set", "0,1,40", "--n", "80", "--node-budget", "1", "--solver", "bnb"],
])
def test_limits_exit_3(argv):
    code, out, err = call(*argv)
    assert code == 3 and out == "" and "limit" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "coverlab", "density", "--set", "0,1,3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["eff"] == "5/6"
