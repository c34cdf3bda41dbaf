"""End-to-end CLI tests: subcommands, exit codes, report formats."""
from __future__ import annotations

import json

import pytest

from idmat.cli import main, parse_poly_literal, parse_range, UsageError
from idmat.rings import Polynomial


# ---------------------------------------------------------------------------
# literal parsing helpers
# ---------------------------------------------------------------------------

def test_parse_range():
    assert parse_range("1..6") == (1, 6)
    assert parse_range("4") == (4, 4)
    assert parse_range("-3..3") == (-3, 3)
    with pytest.raises(UsageError):
        parse_range("6..1")
    with pytest.raises(UsageError):
        parse_range("a..b")


def test_parse_poly_literal():
    assert parse_poly_literal("1+2x^2") == Polynomial((1, 0, 2))
    assert parse_poly_literal("-x^3+4") == Polynomial((4, 0, 0, -1))
    assert parse_poly_literal("x") == Polynomial((0, 1))
    assert parse_poly_literal("2x - x") == Polynomial((0, 1))
    assert parse_poly_literal("0") == 0
    assert parse_poly_literal("7") == 7
    assert parse_poly_literal("3*x^2") == Polynomial((0, 0, 3))
    with pytest.raises(UsageError):
        parse_poly_literal("2y")
    with pytest.raises(UsageError):
        parse_poly_literal("x^")


# ---------------------------------------------------------------------------
# power
# ---------------------------------------------------------------------------

def test_power_fibonacci_with_check(capsys):
    assert main(["power", "1", "1", "1", "0", "10", "--check"]) == 0
    out = capsys.readouterr().out
    assert "[[89, 55]" in out
    assert "check: pass" in out
    assert "ms" in out  # both timings are reported


def test_power_polynomial_entry(capsys):
    assert main(["power", "1", "1", "x", "0", "4"]) == 0
    out = capsys.readouterr().out
    assert "1 + 3x + x^2" in out  # y_4
    assert "x + 2x^2" in out  # x * y_3


def test_power_zero_exponent_is_identity(capsys):
    assert main(["power", "2", "0", "0", "3", "0"]) == 0
    out = capsys.readouterr().out
    assert "[[1, 0]" in out and "[0, 1]]" in out


def test_power_parse_error_exits_2(capsys):
    assert main(["power", "1", "1", "zz", "0", "3"]) == 2
    assert "error" in capsys.readouterr().err


def test_power_negative_exponent_exits_2(capsys):
    assert main(["power", "1", "1", "1", "0", "--", "-3"]) == 2


# ---------------------------------------------------------------------------
# fib
# ---------------------------------------------------------------------------

def test_fib_prints_polynomial(capsys):
    assert main(["fib", "4"]) == 0
    assert "x^3 + 2xs" in capsys.readouterr().out


def test_fib_check_and_functional(capsys):
    assert main(["fib", "6", "--check", "--functional", "4"]) == 0
    out = capsys.readouterr().out
    assert "check: pass" in out
    assert "functional equation (m=6, n=4): pass" in out


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_mns_passes(capsys):
    assert main(["verify", "mns", "--m", "1..4", "--n", "1..4"]) == 0
    out = capsys.readouterr().out
    assert "status: PASS" in out


def test_verify_cubic3_printed_reports_counterexample(capsys):
    assert main(["verify", "cubic3-printed", "--n", "1..4"]) == 1
    out = capsys.readouterr().out
    assert "n=1 s=1: lhs=4 rhs=1" in out
    assert "status: FAIL" in out


def test_verify_unknown_identity_exits_2(capsys):
    assert main(["verify", "nosuch"]) == 2
    assert "unknown identity" in capsys.readouterr().err


def test_verify_missing_required_range_exits_2(capsys):
    assert main(["verify", "mns", "--n", "1..3"]) == 2
    assert "explicit range" in capsys.readouterr().err


def test_verify_negative_w_range(capsys):
    assert main(["verify", "nmw", "--n", "1..3", "--w=-1..1"]) == 0


def test_verify_json_report(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code = main([
        "verify", "determinant", "--n", "1..12", "--format", "json",
        "--out", str(out_file),
    ])
    assert code == 0
    payload = json.loads(out_file.read_text())
    assert payload["schema"] == 1
    assert payload["identity"] == "determinant"
    assert payload["cases_checked"] == sum(range(1, 13))
    assert payload["failures"] == []
    assert payload["grid"] == {"n": [1, 12], "s": "auto"}
    assert "elapsed_ms" in payload and "errata_notes" in payload


def test_verify_json_roundtrip_rerun_identical(tmp_path):
    from idmat.identities import IdentityReport

    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    for path in (first, second):
        assert main([
            "verify", "trace-sum", "--n", "1..20", "--format", "json",
            "--out", str(path),
        ]) == 0
    report_a = IdentityReport.from_dict(json.loads(first.read_text()))
    report_b = IdentityReport.from_dict(json.loads(second.read_text()))
    assert report_a.canonical_bytes() == report_b.canonical_bytes()


def test_verify_csv_output(capsys):
    assert main(["verify", "cubic3-printed", "--n", "1..2", "--format", "csv"]) == 1
    out = capsys.readouterr().out
    lines = [line for line in out.splitlines() if line.strip()]
    assert lines[0] == "identity,n,s,lhs,rhs"
    assert lines[1].startswith("cubic3-printed,1,1,4,1")


# ---------------------------------------------------------------------------
# specmul
# ---------------------------------------------------------------------------

@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "demo.spec"
    path.write_text("2 3 2\n")
    return str(path)


def test_specmul_all_routes(spec_file, capsys):
    assert main(["specmul", spec_file, "8", "--all-routes"]) == 0
    out = capsys.readouterr().out
    assert "recurrence=15 closed=15 matrix=15" in out
    assert "f(8) = 15" in out


def test_specmul_power_query(spec_file, capsys):
    assert main(["specmul", spec_file, "2^3"]) == 0
    assert "f(8) = 15" in capsys.readouterr().out


def test_specmul_query_one(spec_file, capsys):
    assert main(["specmul", spec_file, "1"]) == 0
    assert "f(1) = 1" in capsys.readouterr().out


def test_specmul_missing_prime_exits_1(spec_file, capsys):
    assert main(["specmul", spec_file, "10"]) == 1
    assert "prime 5" in capsys.readouterr().err


def test_specmul_bad_query_exits_2(spec_file, capsys):
    assert main(["specmul", spec_file, "abc"]) == 2


def test_specmul_unreadable_file_exits_2(tmp_path, capsys):
    assert main(["specmul", str(tmp_path / "missing.spec"), "8"]) == 2


# ---------------------------------------------------------------------------
# limit
# ---------------------------------------------------------------------------

def test_limit_golden_ratio(capsys):
    assert main(["limit", "1"]) == 0
    out = capsys.readouterr().out
    assert "1.618033988750" in out
    assert "converged at n =" in out


def test_limit_x_two(capsys):
    assert main(["limit", "2"]) == 0
    assert "2.414213562373" in capsys.readouterr().out


def test_limit_rational_argument(capsys):
    assert main(["limit", "1/2"]) == 0


def test_limit_negative_x_exits_2(capsys):
    assert main(["limit", "-1"]) == 2
    assert main(["limit", "0"]) == 2


def test_limit_non_convergence_exits_1(capsys):
    assert main(["limit", "1/100", "--nmax", "10"]) == 1
    assert "did not reach tolerance" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# report-merge
# ---------------------------------------------------------------------------

def test_report_merge(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    merged_path = tmp_path / "merged.json"
    main(["verify", "determinant", "--n", "1..6", "--format", "json", "--out", str(a)])
    main(["verify", "cubic3-printed", "--n", "1..2", "--format", "json", "--out", str(b)])
    code = main(["report-merge", str(a), str(b), "--out", str(merged_path)])
    assert code == 1  # the printed variant contributes failures
    merged = json.loads(merged_path.read_text())
    assert merged["schema"] == 1
    assert [r["identity"] for r in merged["reports"]] == ["cubic3-printed", "determinant"]
    # determinant: s in 0..n-1 for n <= 6; cubic3-printed: s in 0..(3n-1)/2 for n <= 2
    assert merged["total_cases"] == sum(range(1, 7)) + (2 + 3)
    assert merged["total_failures"] > 0


def test_report_merge_all_green(tmp_path):
    a = tmp_path / "a.json"
    main(["verify", "waring", "--n", "1..5", "--format", "json", "--out", str(a)])
    assert main(["report-merge", str(a)]) == 0


def test_report_merge_bad_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["report-merge", str(bad)]) == 2


def test_report_merge_wrong_schema_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": 99}))
    assert main(["report-merge", str(bad)]) == 2


# ---------------------------------------------------------------------------
# top-level behaviour
# ---------------------------------------------------------------------------

def test_help_exits_zero():
    assert main(["--help"]) == 0


def test_no_arguments_exits_2():
    assert main([]) == 2
