import io
from fractions import Fraction as Q

import pytest

from kstab3.cli import main, parse_coeff
from kstab3.geom import PreconditionError


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_coeff():
    assert parse_coeff("3/4") == Q(3, 4)
    assert parse_coeff("0") == 0
    for bad in ("1", "0.5", "a/b", "-1/2", "1/2/3", "5/4"):
        with pytest.raises(PreconditionError):
            parse_coeff(bad)


def test_list():
    code, out, _ = run("list")
    rows = out.splitlines()[1:]
    assert code == 0 and len(rows) == 25
    d6 = next(r for r in rows if r.startswith("D6 "))
    assert " 3/2 " in d6
    q1 = next(r for r in rows if r.startswith("Q1 "))
    assert q1.endswith("For m=1 and some a, b")


def test_beta_examples():
    code, out, _ = run("beta", "--case", "F4", "--a", "0", "--b", "0", "--divisor", "D1")
    assert code == 0 and "beta' = 27/2 " in out
    code, out, _ = run("beta", "--case", "E1", "--a", "1/2", "--b", "1/2", "--divisor", "D2")
    assert "beta' = -635/128" in out and "(negative)" in out
    code, out, _ = run("beta", "--case", "D5", "--a", "1/2", "--b", "1/4", "--divisor", "F")
    assert "beta' = 729/128 " in out


def test_beta_errors():
    code, _, err = run("beta", "--case", "D4", "--n", "2", "--a", "1/2", "--b", "0")
    assert code == 1 and "ample" in err
    code, _, err = run("beta", "--case", "E1", "--a", "1/2")
    assert code == 1 and "2 coefficients" in err
    code, _, err = run("beta", "--case", "E1", "--a", "x", "--b", "0")
    assert code == 1 and "p/q" in err
    code, _, err = run("beta", "--case", "C6", "--k", "1", "--n", "1", "--a", "0", "--b", "0")
    assert code == 1 and "(k, n)" in err


def test_beta_reports_small_contraction():
    args = ("beta", "--case", "C5", "--k", "1", "--n", "1", "--m", "1", "--a", "0", "--b", "1/20", "--c", "0")
    code, out, _ = run(*args)
    assert code == 0
    assert "C5 Ff: skipped" in out and "verdict: divisorially_unstable" in out
    code, _, err = run(*args, "--divisor", "Ff")
    assert code == 1 and "small contraction" in err


def test_region(tmp_path):
    csv, svg = tmp_path / "f3.csv", tmp_path / "f3.svg"
    code, _, _ = run("region", "--case", "F3", "--step", "1/4", "--out", str(csv), "--svg", str(svg))
    assert code == 0
    assert "3/4,1/2,semistable_certified" in csv.read_text().splitlines()
    assert svg.read_text().startswith("<svg")
    code, _, err = run("region", "--case", "F3", "--step", "1/4", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 2 and "cannot write" in err
    code, _, err = run("region", "--case", "F3", "--step", "1/3")
    assert code == 1 and "step" in err


def test_az():
    code, out, _ = run("az", "--case", "F3", "--a", "1/2", "--b", "1/4")
    assert code == 0 and "S(W;Z) = 11/16" in out and "K_polystable_certified" in out
    code, _, err = run("az", "--case", "E1", "--a", "0", "--b", "0")
    assert code == 1


def test_scan():
    code, out, _ = run("scan", "--case", "F4", "--step", "1/20")
    assert code == 0 and "0 discrepant points" in out
    code, out, _ = run("scan", "--case", "D3", "--cap", "1")
    assert code == 0 and "0 not unstable" in out


def test_verify_negative_control():
    code, out, _ = run("verify", "--tamper", "E1:D2,D2,D2=-5")
    assert code == 3
    assert "FAIL     fixture E1" in out
    assert "unexpected failure" in out
