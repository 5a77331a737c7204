import json
from importlib import resources

import pytest

from logiczono.cli import main

DATA = resources.files("logiczono") / "data"


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def toy_net(tmp_path):
    p = tmp_path / "toy.bn"
    p.write_text("state b[1]\nnext b = b\n")
    return str(p)


def test_reach_identity_singleton(tmp_path, toy_net, capsys):
    init = write(tmp_path / "init.json", {"b": {"points": ["0"]}})
    code = main(["reach", "--net", toy_net, "--init", init, "--steps", "3", "--enumerate"])
    out = capsys.readouterr().out
    assert code == 0
    rows = [l.split() for l in out.splitlines() if l.strip() and l.strip()[0].isdigit()]
    assert [r[2] for r in rows] == ["1", "1", "1"]


def test_reach_missing_file(tmp_path, toy_net, capsys):
    code = main(["reach", "--net", toy_net, "--init", str(tmp_path / "nope.json"), "--steps", "1"])
    err = capsys.readouterr().err
    assert code == 2
    assert "cannot open" in err


def test_reach_bad_flags(capsys):
    assert main(["reach", "--net", "x"]) == 2


def test_reach_unsafe_exit_code(tmp_path, capsys):
    net = tmp_path / "alt.bn"
    net.write_text("state b[1]\nnext b = ~b\n")
    init = write(tmp_path / "init.json", {"b": {"points": ["0"]}})
    unsafe = write(tmp_path / "unsafe.json", {"state": "b", "set": {"points": ["0"]}})
    report = tmp_path / "report.json"
    code = main([
        "reach", "--net", str(net), "--init", init, "--steps", "2",
        "--unsafe", unsafe, "--json", str(report),
    ])
    out = capsys.readouterr().out
    assert code == 1
    doc = json.loads(report.read_text())
    verdicts = [row["verdict"] for row in doc["per_step"]]
    assert verdicts == ["SAFE", "UNSAFE"]
    assert doc["step0_verdict"] == "UNSAFE"
    assert doc["per_step"][1]["witness"] == "0"
    assert "UNSAFE" in out


def test_reach_example_circuit(tmp_path, capsys):
    report = tmp_path / "r.json"
    code = main([
        "reach",
        "--net", str(DATA / "circuit3x10.bn"),
        "--init", str(DATA / "circuit3x10_init.json"),
        "--inputs", str(DATA / "circuit3x10_inputs.json"),
        "--steps", "3",
        "--rep", "cplz", "--mode", "exact", "--enumerate",
        "--json", str(report),
    ])
    assert code == 0
    doc = json.loads(report.read_text())
    assert [row["size"] for row in doc["per_step"]] == [64, 150, 180]


def test_reach_union_split(tmp_path, capsys):
    net3 = tmp_path / "wide.bn"
    net3.write_text("state b[2]\nnext b = b\n")
    init3 = write(tmp_path / "init3.json", {"b": {"points": ["00", "01", "10"]}})
    code = main(["reach", "--net", str(net3), "--init", init3, "--steps", "2", "--enumerate"])
    out = capsys.readouterr().out
    assert code == 0
    assert "subproblems" in out
    sizes = [l.split()[2] for l in out.splitlines() if l.strip() and l.strip()[0].isdigit()]
    assert sizes == ["3", "3"]


def test_enumerate_singleton(tmp_path, capsys):
    p = write(tmp_path / "s.json", {"points": ["10"]})
    assert main(["enumerate", "--set", p]) == 0
    assert json.loads(capsys.readouterr().out) == ["10"]


def test_enumerate_two_generators(tmp_path, capsys):
    doc = {"kind": "cplz", "n": 2, "c": "00", "G": ["10", "01"], "E": ["10", "01"], "id": [1, 2]}
    p = write(tmp_path / "g2.json", doc)
    assert main(["enumerate", "--set", p]) == 0
    assert sorted(json.loads(capsys.readouterr().out)) == ["00", "01", "10", "11"]


def test_enumerate_budget_exit(tmp_path, capsys):
    ids = list(range(1, 31))
    doc = {"kind": "cplz", "n": 1, "c": "0", "G": ["1"], "E": ["11" + "0" * 28], "id": ids}
    p = write(tmp_path / "p30.json", doc)
    assert main(["enumerate", "--set", p]) == 3


def test_enumerate_env_budget(tmp_path, capsys, monkeypatch):
    ids = list(range(1, 7))
    doc = {"kind": "cplz", "n": 1, "c": "0", "G": ["1"], "E": ["11" + "0" * 4], "id": ids}
    p = write(tmp_path / "p6.json", doc)
    monkeypatch.setenv("LOGICZONO_MAX_FACTORS", "5")
    assert main(["enumerate", "--set", p]) == 3
    monkeypatch.setenv("LOGICZONO_MAX_FACTORS", "10")
    assert main(["enumerate", "--set", p]) == 0


def test_intersect_random_trials(tmp_path, capsys):
    report = tmp_path / "bench.json"
    code = main([
        "intersect", "--dim", "5", "--gens", "4", "--seed", "1", "--trials", "2",
        "--json", str(report),
    ])
    assert code == 0
    doc = json.loads(report.read_text())
    assert len(doc["records"]) == 6
    for rec in doc["records"]:
        assert rec["size"] <= 2 ** 5
        assert {"kind", "operation", "time_ms", "size", "dim", "gens", "seed", "trial"} <= set(rec)


def test_intersect_report_reproducible(tmp_path):
    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["intersect", "--dim", "6", "--gens", "4", "--seed", "9", "--trials", "3"]
    assert main(args + ["--json", str(r1)]) == 0
    assert main(args + ["--json", str(r2)]) == 0
    d1 = json.loads(r1.read_text())
    d2 = json.loads(r2.read_text())
    strip = lambda recs: [{k: v for k, v in r.items() if k != "time_ms"} for r in recs]
    assert strip(d1["records"]) == strip(d2["records"])


def test_intersect_explicit_disjoint_singletons(tmp_path, capsys):
    a = write(tmp_path / "a.json", {"points": ["0"]})
    b = write(tmp_path / "b.json", {"points": ["1"]})
    assert main(["intersect", "--a", a, "--b", b]) == 0
    assert "size 0" in capsys.readouterr().out


def test_intersect_containment_assertion_runs(capsys):
    # size ordering lz >= plz >= cplz must hold on every trial
    assert main(["intersect", "--dim", "7", "--gens", "5", "--seed", "3", "--trials", "2"]) == 0
    out = capsys.readouterr().out
    for line in out.splitlines():
        parts = line.split()
        if parts and parts[0].isdigit():
            lz, plz, cplz = int(parts[2]), int(parts[4]), int(parts[6])
            assert cplz <= plz <= lz
