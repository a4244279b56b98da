import csv
import io
import json

import pytest

from FracPolya.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main, parse_grid
from FracPolya.core.errors import InputError


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stream=out)
    return code, out.getvalue()


def csv_blocks(text):
    return [list(csv.reader(io.StringIO(block))) for block in text.strip().split("\n\n")]


# ============================================================
# GRIDS
# ============================================================

def test_parse_grid_is_inclusive():
    grid = parse_grid("0.01:2.0:0.01")
    assert len(grid) == 200
    assert grid[0] == 0.01 and grid[-1] == 2.0
    assert parse_grid("0.5:0.5:0.1") == [0.5]


@pytest.mark.parametrize("text", ["1:0:0.1", "0:1", "a:b:c", "0:1:0", "0:1:-0.1"])
def test_parse_grid_rejects(text):
    with pytest.raises(InputError):
        parse_grid(text)


# ============================================================
# INTERVAL
# ============================================================

def test_interval_csv():
    code, text = run("interval", "--alpha", "1", "--basis", "64", "--nmax", "10",
                     "--format", "csv")
    assert code == EXIT_OK
    (rows,) = csv_blocks(text)
    assert rows[0] == ["n", "lambda_hat", "polya_term", "deficit", "verdict"]
    assert len(rows) == 11
    assert [r[0] for r in rows[1:4]] == ["1", "2", "3"]
    assert all(r[4] == "CounterexampleConfirmed" for r in rows[1:4])
    assert float(rows[1][1]) < float(rows[1][2])


def test_interval_classical_order_is_inconclusive():
    code, text = run("interval", "--alpha", "2", "--basis", "32", "--format", "csv")
    assert code == EXIT_OK
    (rows,) = csv_blocks(text)
    assert len(rows) == 9
    assert {r[4] for r in rows[1:]} == {"Inconclusive"}


def test_interval_json():
    code, text = run("interval", "--alpha", "0.5", "--basis", "32", "--nmax", "2",
                     "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc["schema_version"] == 1
    assert [r["n"] for r in doc["records"]] == [1, 2]
    assert doc["parameters"]["alpha"] == 0.5


@pytest.mark.parametrize("argv", [
    ("interval", "--alpha", "3"),
    ("interval", "--alpha", "0"),
    ("interval", "--alpha", "1", "--basis", "16", "--nmax", "5"),
    ("interval", "--alpha", "1", "--length", "-1"),
    ("interval", "--alpha", "1", "--panel-nodes", "4"),
    ("interval", "--alpha", "1", "--workers", "0"),
])
def test_interval_usage_errors(argv, capsys):
    code, text = run(*argv)
    assert code == EXIT_USAGE and text == ""
    assert "fracpolya: error:" in capsys.readouterr().err


def test_missing_alpha_is_a_usage_error(capsys):
    code, _ = run("interval")
    assert code == EXIT_USAGE
    assert "--alpha" in capsys.readouterr().err


# ============================================================
# DISK / SQUARE
# ============================================================

def test_disk_single_point():
    code, text = run("disk", "--grid", "0.5:0.5:0.1", "--format", "csv")
    assert code == EXIT_OK
    curves, thresholds = csv_blocks(text)
    assert curves[0] == ["alpha", "bk", "dkk", "dyda", "two_pow_alpha"]
    assert len(curves) == 2 and curves[1][0] == "0.5"
    assert [r[0] for r in thresholds[1:]] == ["bk", "dkk", "dyda"]
    star = {r[0]: float(r[2]) for r in thresholds[1:]}
    assert star["bk"] == pytest.approx(0.699, abs=1e-3)
    assert star["dyda"] == pytest.approx(0.984, abs=1e-3)


def test_disk_default_grid():
    code, text = run("disk", "--format", "csv")
    assert code == EXIT_OK
    curves, _ = csv_blocks(text)
    assert len(curves) == 201
    assert curves[-1][0] == "2"


def test_disk_thresholds_only():
    code, text = run("disk", "--thresholds-only", "--format", "csv")
    assert code == EXIT_OK
    (block,) = csv_blocks(text)
    assert block[0][0] == "bound" and len(block) == 4


def test_square_reports_nonexistence():
    code, text = run("square", "--grid", "0.1:0.3:0.1", "--format", "csv")
    assert code == EXIT_OK
    curves, thresholds = csv_blocks(text)
    assert curves[0][-1] == "pi_pow_half_alpha" and len(curves) == 4
    never = thresholds[-1]
    assert never[0] == "bk" and never[2] == "" and float(never[-1]) > 0.0


def test_square_empty_grid():
    assert run("square", "--grid", "0.5:0.4:0.1")[0] == EXIT_USAGE


def test_disk_tolerance_is_validated():
    assert run("disk", "--tol", "0.1")[0] == EXIT_USAGE


def test_plain_output_is_aligned():
    code, text = run("disk", "--grid", "1:1:1")
    assert code == EXIT_OK
    first = text.splitlines()[0].split()
    assert first == ["alpha", "bk", "dkk", "dyda", "two_pow_alpha"]


# ============================================================
# VERIFY
# ============================================================

def test_verify_thresholds_json():
    code, text = run("verify", "--suite", "thresholds")
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc["suite"] == "thresholds" and doc["overall"] == "pass"


def test_verify_writes_output_file(tmp_path):
    target = tmp_path / "out" / "bounds.json"
    code, text = run("verify", "--suite", "bounds", "--output", str(target))
    assert code == EXIT_OK and text == ""
    assert json.loads(target.read_text())["overall"] == "pass"


def test_verify_plain_summary():
    code, text = run("verify", "--suite", "liyau", "--basis", "32", "--alpha", "1",
                     "--format", "plain")
    assert code == EXIT_OK
    assert text.startswith("liyau: pass")


def test_verify_unknown_suite():
    assert run("verify", "--suite", "bogus")[0] == EXIT_USAGE


@pytest.mark.parametrize("suite", ["weyl", "all"])
def test_verify_rejects_basis_too_small_for_weyl_window(suite, capsys):
    code, text = run("verify", "--suite", suite, "--basis", "16")
    assert code == EXIT_USAGE and text == ""
    assert "N/4 >= 8" in capsys.readouterr().err


def test_verify_small_basis_allowed_for_other_suites():
    code, _ = run("verify", "--suite", "liyau", "--basis", "16", "--alpha", "1")
    assert code == EXIT_OK


def test_verify_kkms_needs_length_two():
    assert run("verify", "--suite", "kkms", "--length", "3")[0] == EXIT_USAGE


def test_verify_failure_exit_code(monkeypatch):
    from FracPolya.core import verdicts

    def failing(tol):
        report = verdicts.VerdictReport("thresholds", {"tol": tol})
        report.records.append(verdicts.PropertyOutcome("forced", False, 1.0, 0.0))
        return report

    monkeypatch.setattr(verdicts, "threshold_check", failing)
    code, text = run("verify", "--suite", "thresholds")
    assert code == EXIT_FAILURE
    assert json.loads(text)["overall"] == "fail"


def test_numeric_failure_exit_code(monkeypatch, capsys):
    from FracPolya import cli
    from FracPolya.core.errors import NumericError

    def broken(config):
        raise NumericError("eigenvalue solver did not converge")

    monkeypatch.setattr(cli, "interval_rows", broken)
    code, _ = run("interval", "--alpha", "1", "--basis", "8")
    assert code == EXIT_FAILURE
    assert "NumericError" in capsys.readouterr().err


# ============================================================
# CONFIG, CACHE, REPORT
# ============================================================

def test_config_file_sets_defaults(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("basis = 32\nformat = csv\n")
    code, text = run("--config", str(conf), "interval", "--alpha", "1")
    assert code == EXIT_OK
    (rows,) = csv_blocks(text)
    assert len(rows) == 9


def test_config_file_unknown_key(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("colour = red\n")
    assert run("--config", str(conf), "disk")[0] == EXIT_USAGE


def test_cache_round_trip(tmp_path):
    cache_dir = str(tmp_path / "cache")
    argv = ("interval", "--alpha", "1", "--basis", "32", "--format", "csv",
            "--cache-dir", cache_dir)
    first = run(*argv)
    second = run(*argv)
    assert first == second and first[0] == EXIT_OK

    code, listing = run("cache", "inspect", "--cache-dir", cache_dir)
    assert code == EXIT_OK
    lines = listing.splitlines()
    assert len(lines) == 1
    assert lines[0].startswith("alpha=1.0 L=2.0 N=32 ")
    assert "sha256=" in lines[0]

    code, cleared = run("cache", "clear", "--cache-dir", cache_dir)
    assert code == EXIT_OK and cleared.startswith("removed 1 file(s)")
    assert run("cache", "inspect", "--cache-dir", cache_dir)[1] == ""


def test_no_cache_flag(tmp_path, monkeypatch):
    cache_dir = tmp_path / "env"
    monkeypatch.setenv("FRACPOLYA_CACHE_DIR", str(cache_dir))
    run("interval", "--alpha", "1", "--basis", "16", "--no-cache")
    assert not cache_dir.exists()
    run("interval", "--alpha", "1", "--basis", "16")
    assert len(list(cache_dir.glob("*.fps"))) == 1


def test_report_files(tmp_path):
    out = tmp_path / "report"
    code, text = run("report", "--basis", "32", "--output-dir", str(out))
    assert code == EXIT_OK
    names = sorted(p.name for p in out.iterdir())
    assert names == sorted(["report.md", "disk_curves.csv", "square_curves.csv",
                            "thresholds.csv", "interval_alpha0.5.csv", "interval_alpha1.csv",
                            "interval_alpha1.5.csv"])
    assert len(text.splitlines()) == 7
    markdown = (out / "report.md").read_text()
    assert "## Thresholds" in markdown and "| bk | 2^alpha |" in markdown
    with open(out / "thresholds.csv", newline="") as f:
        assert len(list(csv.reader(f))) == 7


def test_report_json(tmp_path):
    out = tmp_path / "report"
    code, _ = run("report", "--basis", "32", "--output-dir", str(out), "--format", "json")
    assert code == EXIT_OK
    assert [p.name for p in out.iterdir()] == ["report.json"]
    doc = json.loads((out / "report.json").read_text())
    assert set(doc["interval"]) == {"0.5", "1", "1.5"}
    assert len(doc["interval"]["1"]) == 8


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert "fracpolya" in capsys.readouterr().out
