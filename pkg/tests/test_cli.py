import io
import json
import os

import pytest

from quartic_brauer import cli


def run(capsys, *argv):
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_purity_example(capsys):
    rc, out, _ = run(capsys, "purity", "--element", "A", "--mode", "geometric")
    assert rc == 0
    assert out.strip() == "PASS: 0/24 nontrivial residues"


def test_purity_arithmetic_over_M(capsys):
    rc, out, _ = run(capsys, "purity", "--element", "E1", "--mode", "arithmetic", "--field", "M")
    assert rc == 0 and out.startswith("PASS: 0/24")


def test_purity_mismatch_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(cli.PURITY_EXPECTED, ("A", "geometric"), False)
    rc, out, _ = run(capsys, "purity", "--element", "A")
    assert rc == 2 and out.startswith("FAIL")


def test_screen_example(capsys):
    rc, out, _ = run(capsys, "screen", "--coeffs", "1,1,2,2")
    assert rc == 0
    assert out.strip() == "in_W=false; verdict=inconclusive"


def test_screen_sd_and_all_odd(capsys):
    rc, out, _ = run(capsys, "screen", "--sd", "3,5,1")
    assert rc == 0 and "in_W=true" in out
    rc, out, _ = run(capsys, "screen", "--coeffs", "1,3,5,7", "--family", "all_odd")
    assert rc == 0 and "verdict=ST_holds_by_ccprop" in out


def test_screen_stdin_tsv(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("1 1 2 2\n# comment\n1 3 5 7\n"))
    rc, out, _ = run(capsys, "screen", "--stdin", "--format", "tsv")
    lines = out.strip().splitlines()
    assert rc == 0
    assert lines[0] == "input\tin_W\tverdict\treason"
    assert lines[1].startswith("1 1 2 2\tfalse\tinconclusive")
    assert lines[2].startswith("1 3 5 7\ttrue\tST_holds_by_ccprop")


def test_obstruction_json(capsys):
    rc, out, _ = run(capsys, "obstruction", "--format", "json")
    data = json.loads(out)
    assert rc == 0
    assert data["schema"] == 1
    assert (data["inv_P"], data["inv_Q"], data["sum"]) == ("1/2", "0", "1/2")
    assert all(r["verified"] for r in data["log_P"] + data["log_Q"])
    assert {r["rule"] for r in data["log_P"]} <= {"R1", "R2", "R3", "R4", "identity"}


def test_global_options_before_subcommand(capsys):
    rc, out, _ = run(capsys, "--format", "json", "lines")
    assert rc == 0 and json.loads(out)["schema"] == 1
    assert len(json.loads(out)["rows"]) == 24


def test_divisors_text(capsys):
    rc, out, _ = run(capsys, "divisors")
    assert rc == 0
    assert out.count("[matches golden]") == 2
    assert "div(G) = 2*l1 + 2*l2 + l5" in out


def test_tables_and_faddeev(capsys):
    rc, out, _ = run(capsys, "tables", "--variant", "x2")
    assert rc == 0
    assert "x2 l13" in out and "sqrt2*b" in out
    assert "x2: 24/24 entries match up to squares" in out
    rc, out, _ = run(capsys, "faddeev", "--variant", "A")
    assert rc == 0 and "descends=false" in out and "obstruction sqrt2" in out
    rc, out, _ = run(capsys, "faddeev", "--variant", "D", "--field", "M")
    assert rc == 0 and "descends=true" in out


def test_dyadic_demo(capsys):
    rc, out, _ = run(capsys, "dyadic-demo")
    assert rc == 0 and "MISMATCH" not in out
    assert "l^4 = d: true" in out


@pytest.mark.parametrize("argv", [
    ["bogus"],
    [],
    ["screen", "--coeffs", "1,2"],
    ["screen"],
    ["screen", "--coeffs", "1,1,2,0"],
    ["purity"],
    ["purity", "--element", "Q"],
    ["purity", "--element", "A", "--mode", "arithmetic", "--field", "Q(nope)"],
    ["lines", "--unknown-flag"],
    ["selftest", "--criteria", "42"],
    ["obstruction", "--precision", "3"],
])
def test_usage_errors(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 1
    assert "error" in err


def test_output_is_deterministic(capsys):
    first = run(capsys, "lines", "--format", "tsv")
    second = run(capsys, "lines", "--format", "tsv")
    assert first == second
    first = run(capsys, "screen", "--coeffs", "1,-4,-162,18", "--format", "json")
    assert first == run(capsys, "screen", "--coeffs", "1,-4,-162,18", "--format", "json")


def test_precision_flag_sets_environment(capsys, monkeypatch):
    monkeypatch.delenv("QB_PRECISION", raising=False)
    rc, out, _ = run(capsys, "dyadic-demo", "--precision", "48")
    assert rc == 0
    assert os.environ["QB_PRECISION"] == "48"
    assert "O(sqrt2^48)" in out


def test_selftest_subset(capsys):
    rc, out, _ = run(capsys, "selftest", "--criteria", "1,2")
    assert rc == 0
    assert out.splitlines()[-1] == "2/2 criteria pass"


def test_selftest_strict_counts_known_conflicts(capsys):
    rc, out, _ = run(capsys, "selftest", "--criteria", "6", "--strict")
    assert rc == 2
    assert "known conflict" in out
