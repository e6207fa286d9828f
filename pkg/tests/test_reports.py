import json

from envelope_lab.reports import failures, make_report, to_json, to_text, write_atomic
from envelope_lab.suites import Check


def test_empty_report():
    r = make_report({"seed": 0}, [])
    assert failures(r) == []
    assert json.loads(to_json(r))["checks"] == []
    assert to_text(r).endswith("summary: \n")


def test_statuses_and_strict():
    ok = Check("a.ok", "x")
    ok.record(True)
    dev = Check("a.dev", "x", tol=1e-3, deviation=True)
    dev.residual(0.5, {"k": 1})
    bad = Check("a.bad", "x")
    bad.record(False, {"why": "no"})
    r = make_report({}, [c.to_json() for c in (ok, dev, bad)])
    assert [c["name"] for c in failures(r)] == ["a.bad"]
    assert len(failures(r, strict=True)) == 2
    assert dev.to_json()["max_residual"] == "5.000e-01"
    assert "DEVIATION" in to_text(r)


def test_json_is_sorted_and_stable():
    r = make_report({"b": 1, "a": 2}, [])
    assert to_json(r) == to_json(json.loads(to_json(r)))
    assert to_json(r).index('"a"') < to_json(r).index('"b"')


def test_witness_cap():
    c = Check("x", "y")
    for i in range(50):
        c.record(False, {"i": i})
    assert c.failed == 50 and len(c.witnesses) == 10


def test_write_atomic(tmp_path):
    p = tmp_path / "r.txt"
    write_atomic(str(p), "hello\n")
    write_atomic(str(p), "again\n")
    assert p.read_text() == "again\n"
    assert [f.name for f in tmp_path.iterdir()] == ["r.txt"]
