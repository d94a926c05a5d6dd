import json
from fractions import Fraction

from isoclass.cli import main, parse_scalar
from isoclass.exactmath import quadratic_field


def _run(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def test_parse_scalar():
    assert parse_scalar("3/4") == Fraction(3, 4)
    K = quadratic_field(2)
    assert parse_scalar("1/2 + sqrt(2)/2") == K(["1/2", "1/2"])
    assert parse_scalar("3*sqrt(-7)") == quadratic_field(-7)([0, 3])


def test_weil_and_torsion(capsys):
    rc, out = _run(capsys, "weil", "--l", "2", "--degree", "4")
    assert rc == 0 and len(json.loads(out)) == 12
    rc, out = _run(capsys, "torsion", "--n", "3", "--classify")
    assert json.loads(out) == {"n": 3, "maximal_isotropic": 40, "product": 16, "graph": 24}


def test_hermitian_and_humbert(capsys):
    rc, out = _run(capsys, "hermitian", "--disc", "-8", "--mode", "definite")
    assert rc == 0 and len(json.loads(out)["classes"]) == 2
    rc, out = _run(capsys, "humbert", "--check", "20,-20,-40,8")
    assert json.loads(out)["contains"] is True


def test_glue_igusa_hcp(capsys):
    rc, out = _run(capsys, "glue2", "--a", "2", "--b", "-1")
    assert rc == 0 and json.loads(out)["igusa"]["invariants"][0] == "276"
    rc, out = _run(capsys, "igusa", "--poly", "0,1,0,0,0,1")
    assert json.loads(out)["invariants"] == ["40", "-80", "-320", "256"]
    rc, out = _run(capsys, "hcp", "--disc", "-7")
    assert json.loads(out)["coefficients"] == [3375, 1]


def test_verify_and_classify_exit_codes(capsys):
    rc, out = _run(capsys, "verify", "--suite", "counts")
    assert rc == 0 and all(c["pass"] for c in json.loads(out)["verification"])
    rc, out = _run(capsys, "classify", "--l", "2", "--json")
    assert rc == 0 and json.loads(out)["l"] == 2
    rc, out = _run(capsys, "classify", "--l", "4")
    assert rc == 1


def test_bad_data_dir(capsys, tmp_path):
    rc = main(["--data-dir", str(tmp_path), "hcp", "--disc", "-4"])
    assert rc == 0
    rc = main(["--data-dir", str(tmp_path), "humbert", "--check", "1,2,3,4"])
    assert rc == 1
    from isoclass import modular
    modular.set_data_dir(None)


def test_env_data_dir(monkeypatch, tmp_path):
    from isoclass import modular
    monkeypatch.setenv("ISOCLASS_DATA", str(tmp_path))
    assert modular.data_dir() == tmp_path
