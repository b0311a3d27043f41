import io
import json
import subprocess
import sys

import pytest

from nvalued import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pn_sigma_text(capsys):
    code, out, _ = run(capsys, "pn", "--n", "3", "--m", "2", "--route", "all", "--basis", "sigma",
                       "--out", "text")
    assert code == 0
    assert "s1^3 - 27*s3" in out
    assert "all-routes-agree=true" in out


def test_pn_json_provenance(capsys):
    code, out, _ = run(capsys, "pn", "--n", "2", "--basis", "sigma")
    j = json.loads(out)
    assert code == 0 and j["ok"] and j["all_routes_agree"]
    assert j["routes"] == ["kronecker", "wendt", "blockpower", "resultant"]
    assert j["sigma_text"] == "s1^2 - 4*s2"
    assert j["block_power_convention"] == "twisted"


def test_pn_three_args(capsys):
    code, out, _ = run(capsys, "pn", "--n", "2", "--m", "3", "--basis", "sigma")
    j = json.loads(out)
    assert code == 0 and j["routes"] == ["kronecker", "blockpower"]


def test_route_needing_m2_is_usage_error(capsys):
    code, _, err = run(capsys, "pn", "--n", "2", "--m", "3", "--route", "wendt")
    assert code == 2
    assert "usage" in err


def test_bad_flag_exits_2():
    with pytest.raises(SystemExit) as e:
        cli.main(["pn", "--n", "x"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["nonsense"])
    assert e.value.code == 2


def test_disc_check(capsys):
    code, out, _ = run(capsys, "disc-check", "--n", "3")
    j = json.loads(out)
    assert code == 0
    assert j["constant_abs"] == "16" and j["ok"] is True
    assert j["constant"] == "16" and j["sign"] == 1


def test_wendt(capsys):
    code, out, _ = run(capsys, "wendt", "--n", "3")
    j = json.loads(out)
    assert code == 0 and j["det_matrix"] == "28" and j["agree"]


def test_divis(capsys):
    code, out, _ = run(capsys, "divis", "--n", "5")
    j = json.loads(out)
    assert code == 0 and j["divisible_n4"] and not j["divisible_n5"]
    code, _, _ = run(capsys, "divis", "--n", "4")
    assert code == 2


def test_irred(capsys):
    code, out, _ = run(capsys, "irred", "--poly", "[1,0,-10,0,1]")
    assert code == 0 and json.loads(out)["status"] == "Irreducible"
    code, out, _ = run(capsys, "irred", "--poly", "[-1,0,1]", "--out", "text")
    assert code == 0 and out.startswith("Reducible")
    code, _, _ = run(capsys, "irred", "--poly", "not json")
    assert code == 2
    code, _, _ = run(capsys, "irred", "--poly", "[2,4]")
    assert code == 2


def test_irred_polynomial_json(capsys):
    poly = {"vars": ["z"], "terms": [{"exp": [2], "coeff": "1"}, {"exp": [0], "coeff": "-1"}]}
    code, out, _ = run(capsys, "irred", "--poly", json.dumps(poly))
    assert code == 0 and json.loads(out)["status"] == "Reducible"
    two = {"vars": ["z", "x1"], "terms": [{"exp": [1, 1], "coeff": "1"}]}
    code, _, _ = run(capsys, "irred", "--poly", json.dumps(two))
    assert code == 2


def test_assoc_reproducible(capsys):
    code1, out1, _ = run(capsys, "assoc", "--n", "3", "--samples", "50", "--seed", "9")
    code2, out2, _ = run(capsys, "assoc", "--n", "3", "--samples", "50", "--seed", "9")
    assert code1 == code2 == 0
    assert out1 == out2
    j = json.loads(out1)
    assert j["passed"] == 50 and j["failed"] == 0 and j["seed"] == 9


def test_family_check(capsys):
    code, out, _ = run(capsys, "family-check", "--family", "p3b", "--samples", "30")
    j = json.loads(out)
    assert code == 0
    assert set(j) >= {"passed", "failed", "skipped_degenerate", "max_mismatch"}


def test_wendt_criterion(capsys):
    code, out, _ = run(capsys, "wendt-criterion", "--p", "3", "--k", "1")
    j = json.loads(out)
    assert code == 0 and j["cases"][0]["q"] == 7 and j["cases"][0]["divides"] is False
    code, _, _ = run(capsys, "wendt-criterion", "--p", "7", "--k", "1")
    assert code == 2
    code, _, _ = run(capsys, "wendt-criterion", "--p", "3")
    assert code == 2
    code, out, _ = run(capsys, "wendt-criterion", "--q-max", "60")
    assert code == 0 and json.loads(out)["all_consistent"]


def test_compose_check(capsys):
    code, out, _ = run(capsys, "compose-check", "--samples", "10")
    j = json.loads(out)
    assert code == 0 and j["passed"] == 10


def test_verification_failure_exits_1(monkeypatch):
    cfg = cli.RunConfig("wendt", {"n": 3})
    monkeypatch.setitem(cli.COMMANDS, "wendt", lambda c: ({}, None, False))
    assert cli.run(cfg, out=io.StringIO()) == 1


def test_factor_coeffs_p18(capsys):
    code, out, _ = run(capsys, "factor-coeffs", "--n", "18", "--out", "text")
    assert code == 0
    assert "(0,9,0) -> - 2^18" in out.splitlines()


def test_factor_coeffs_threads_same_output(capsys, monkeypatch):
    _, a, _ = run(capsys, "factor-coeffs", "--n", "6")
    monkeypatch.setenv("NVAL_THREADS", "2")
    _, b, _ = run(capsys, "factor-coeffs", "--n", "6")
    assert a == b


def test_threads_env(monkeypatch):
    monkeypatch.setenv("NVAL_THREADS", "bogus")
    assert cli.threads() == 1
    monkeypatch.setenv("NVAL_THREADS", "3")
    assert cli.threads() == 3


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "nvalued.cli", "wendt", "--n", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["det_matrix"] == "-3"
