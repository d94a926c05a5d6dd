import json

from isoclass import classify as cl


def test_l2_report_shape():
    r = cl.classify(2)
    assert r.counts() == {"humbert_surface": 1, "shimura_curve": 5, "cm_point": 12}
    d = json.loads(r.dumps())
    assert list(d) == ["l", "components", "verification"]
    assert all(list(c)[0] == "kind" for c in d["components"])
    assert all(list(v) == ["name", "pass", "millis"] for v in d["verification"])
    assert r.all_pass()


def test_l2_geometric_points():
    r = cl.classify(2)
    cm = [c for c in r.components if c["kind"] == "cm_point"]
    assert sum(c["galois_orbit"] for c in cm) == 13


def test_run_check_catches_exceptions():
    def boom():
        raise ArithmeticError("x")
    c = cl.run_check("boom", boom)
    assert not c.passed and "ArithmeticError" in c.detail


def test_figure1_negative_control():
    # a perturbed point is not on H8, so the numeric test can fail
    import mpmath
    from isoclass import modular
    H = modular.load_humbert(8)
    with mpmath.workdps(60):
        vals = cl._numeric_igusa_c(mpmath.mpf(3), mpmath.mpf("0.123456789")).values()
        assert modular.humbert_eval_numeric(H, vals, 60) > mpmath.mpf(10) ** -20
    assert cl.figure1_on_h8()


def test_suites_pass():
    for name in ("counts", "tables", "humbert", "figure1"):
        checks = cl.verify_suite(name)
        assert checks and all(c.passed for c in checks), [c.name for c in checks if not c.passed]


def test_l3_reports_omissions():
    r = cl.classify(3)
    assert r.counts()["humbert_surface"] == 1
    assert "omissions" in r.to_json()
