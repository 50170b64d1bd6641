import csv
import subprocess
import sys

import pytest

from uskyline.cli import main
from uskyline.data import path as data_path
from uskyline.harness import CSV_HEADER


def test_stats(capsys):
    assert main(["stats", "--graph", str(data_path("toy_grid.txt"))]) == 0
    out = capsys.readouterr().out
    assert "n           39" in out
    assert "m           63" in out


def test_run_writes_csv(tmp_path, capsys):
    out = tmp_path / "r.csv"
    code = main([
        "run", "--graph", str(data_path("toy_grid.txt")), "--distance", "majority,expected",
        "--strategy", "rand", "--query-size", "2,3", "--samples", "50", "--seed", "3",
        "--repeats", "2", "--out", str(out),
    ])
    assert code == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 1 + 2 * 2 * 2
    assert "|CS|=" in capsys.readouterr().out


def test_sweep_with_out_override(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--plan", str(data_path("toy.plan")), "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert len(rows) == 3 * 3 * 2 * 2
    assert {r["dataset"] for r in rows} == {"toy_grid"}


def test_usage_errors_exit_1(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["run"])
    assert err.value.code == 1
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 1
    assert main(["run", "--graph", str(data_path("toy_grid.txt")), "--strategy", "hdeg"]) == 1
    assert main(["run", "--graph", str(data_path("toy_grid.txt")), "--query-size", "0"]) == 1


def test_data_errors_exit_2(tmp_path):
    assert main(["stats", "--graph", str(tmp_path / "missing.txt")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1 5 0.5\n3 3 1 1\n")
    assert main(["run", "--graph", str(bad)]) == 2
    bad.write_text("0 1 5 1.5\n")
    assert main(["run", "--graph", str(bad)]) == 2


def test_all_skipped_exit_3(tmp_path):
    code = main([
        "run", "--graph", str(data_path("toy_grid.txt")), "--distance", "expected",
        "--query-size", "30", "--out", str(tmp_path / "x.csv"),
    ])
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "uskyline", "stats", "--graph", str(data_path("divergence.txt"))],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "m           9" in proc.stdout
