from latpoly.verify import FAIL, INDETERMINATE, PASS, Report, _fan_out, check, run_suite


def test_indeterminate_never_masks_fail():
    r = Report("x", [check("a", None), check("b", True)])
    assert r.ok and r.counts() == {PASS: 1, FAIL: 0, INDETERMINATE: 1}
    r.checks.append(check("c", False))
    assert not r.ok and [c["id"] for c in r.failed] == ["c"]


def test_fan_out_keeps_order():
    items = list(range(20))
    assert _fan_out(lambda x: x * x, items, workers=4) == [x * x for x in items]


def test_tables_small():
    r = run_suite("tables", dmax=4, kmax=2, workers=2)
    assert r.ok and r.counts()[PASS] == len(r.checks)
    ids = [c["id"] for c in r.checks]
    assert "table2/P2" in ids and "table3/B4/k=2" in ids


def test_matrices_k2_reports_printed_b57():
    r = run_suite("matrices", kmax=2)
    failed = [c["id"] for c in r.failed]
    assert failed == ["identity/B:U_{5,7}/k=2"]
    by_id = {c["id"]: c for c in r.checks}
    assert by_id["identity/B:U_{5,7}'/k=2"]["status"] == PASS
    assert by_id["identity/A:U_{1,4}/k=2"]["details"]["note"] == "undefined in source, hypothesis U_{1,5} tested"
    assert all(c["status"] == PASS for c in r.checks if c["id"].startswith("det/"))


def test_feasibility_flags_printed_rule():
    r = run_suite("feasibility", dmax=3)
    assert r.ok
    last = r.checks[-1]
    assert last["id"] == "printed-V3-rule/(1,2),d=2" and "rejects" in last["details"]["verdict"]


def test_deterministic_report():
    a = run_suite("enumeration", dmax=3).to_dict()
    b = run_suite("enumeration", dmax=3).to_dict()
    assert a == b and a["ok"]
