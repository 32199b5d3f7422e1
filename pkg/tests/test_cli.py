from __future__ import annotations

import json

import pytest

from msect import cli
from msect.chebyshev import T
from msect.polynomials import parse_poly
from msect.quadfield import parse_elem
from msect.verify import KNOWN_T


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide(capsys):
    code, out, _ = run(capsys, "decide", "--a", "1/2", "--m", "3")
    assert code == 0
    d = json.loads(out)
    assert d["sectable"] is False and d["m_odd"] == 3 and d["certificate"]["candidates"] == 8
    code, out, _ = run(capsys, "decide", "--a", "1/2*sqrt(2)", "--m", "3", "--field", "Q(sqrt 2)")
    d = json.loads(out)
    assert d["sectable"] and parse_elem(d["witness"]) is not None


def test_chebyshev(capsys):
    for m, text in enumerate(KNOWN_T):
        code, out, _ = run(capsys, "chebyshev", "--m", str(m))
        assert code == 0 and out.strip() == text
    code, out, _ = run(capsys, "chebyshev", "--m", "9")
    assert parse_poly(out.strip()) == T(9)
    code, out, _ = run(capsys, "chebyshev", "--m", "3", "--format", "json")
    assert json.loads(out) == ["0", "-3", "0", "4"]


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--poly", "4*x^3-3*x-1")
    assert json.loads(out)["roots"] == ["-1/2", "1"]
    code, out, _ = run(capsys, "roots", "--poly", "x^2-x-1", "--field", "Q(sqrt 5)")
    assert sorted(json.loads(out)["roots"]) == ["1/2+1/2*sqrt(5)", "1/2-1/2*sqrt(5)"]


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--field", "Q", "--B", "3")
    assert out.splitlines() == ["field,B,total,in_unit", "Q,3,15,9"]
    code, out, _ = run(capsys, "census", "--field", "Q(sqrt 2)", "--grid", "1:4:x2")
    assert out.splitlines()[1:] == ["Q(sqrt 2),1,3,3", "Q(sqrt 2),2,7,5", "Q(sqrt 2),4,23,13"]


def test_enumerate_round_trip(capsys):
    code, out, _ = run(capsys, "enumerate", "--field", "Q(sqrt 2)", "--B", "5")
    lines = out.splitlines()
    assert lines[:3] == ["-1", "0", "1"]
    assert len(lines) == 31
    for line in lines:
        assert parse_elem(line, None) is not None
    code, out, _ = run(capsys, "enumerate", "--B", "3", "--emit", "count")
    assert out.strip() == "15"


def test_shard_outputs_identical(capsys, monkeypatch):
    outs = []
    for shards in ("1", "3"):
        monkeypatch.setenv("MSECT_SHARDS", shards)
        outs.append(run(capsys, "enumerate", "--field", "Q(sqrt 5)", "--B", "9")[1])
        outs.append(run(capsys, "census", "--B", "120")[1])
        outs.append(run(capsys, "density", "--m", "3", "--grid", "8:64:x2", "--method", "per-element")[1])
    assert outs[:3] == outs[3:]


def test_density_and_fit(capsys, tmp_path):
    csv_path = tmp_path / "d.csv"
    code, out, _ = run(capsys, "density", "--m", "3", "--grid", "32:1024:x2", "--out", str(csv_path))
    assert code == 0 and out == ""
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "field,m,m_odd,B,numerator,denominator,delta,delta_float"
    assert lines[1].startswith("Q,3,3,32/1,15,649,15/649,")
    svg = tmp_path / "fit.svg"
    code, out, _ = run(capsys, "fit", "--in", str(csv_path), "--plot", str(svg))
    d = json.loads(out)
    assert set(d) >= {"fitted_slope", "theoretical_slope", "intercept", "points_used"}
    assert d["points_used"] == 6 and abs(d["fitted_slope"] + 4 / 3) < 0.25
    assert svg.exists()


def test_density_both(capsys):
    code, out, _ = run(capsys, "density", "--m", "5", "--B", "50", "--method", "both")
    assert code == 0 and out.splitlines()[1].startswith("Q,5,5,50/1,")


def test_density_quadratic_limit(capsys):
    code, _, err = run(capsys, "density", "--field", "Q(sqrt 2)", "--m", "3", "--B", "150")
    assert code == 2 and "--allow-large" in err


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--m", "10")
    d = json.loads(out)
    assert d["a"] == "241/243" and d["nu3_exponent"] == 5 and d["sectable"]
    code, out, _ = run(capsys, "witness", "--m", "2", "--a", "1/4")
    assert abs(json.loads(out)["chain"][0] - (5 / 8) ** 0.5) < 1e-12


def test_schanuel(capsys):
    code, out, _ = run(capsys, "schanuel", "--B", "100,200")
    d = json.loads(out)
    assert d["matched_constant"] == "12/pi^2" and len(d["samples"]) == 2


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--quick", "--seed", "3")
    assert code == 0 and "FAIL" not in out and "invariants hold (seed 3)" in out


def test_verify_failure_exit(capsys, monkeypatch):
    from msect.verify import CheckResult

    monkeypatch.setattr(cli, "run_suite", lambda seed, quick: [CheckResult("x", False, "broken", 0.0)])
    code, out, _ = run(capsys, "verify")
    assert code == 1 and "FAIL x" in out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["decide", "--m", "3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["census"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "decide", "--a", "3/2", "--m", "3")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "density", "--m", "3", "--grid", "1:10")
    assert code == 2
    code, _, _ = run(capsys, "decide", "--a", "1/2", "--m", "3", "--field", "Q(sqrt 4)")
    assert code == 2


def test_inconsistency_exit(capsys, monkeypatch):
    from msect.errors import InconsistencyError

    def boom(*a, **k):
        raise InconsistencyError("forced")

    monkeypatch.setattr(cli, "census", boom)
    code, _, err = run(capsys, "census", "--B", "5")
    assert code == 3 and "forced" in err
