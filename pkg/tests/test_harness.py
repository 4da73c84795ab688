import csv
import io
import json

import pytest
from click.testing import CliRunner

from resint.cli import main
from resint.harness import (
    CellResult,
    RunConfig,
    RunState,
    VerificationReport,
    emit_report,
    parse_report,
    report_digest,
    run_verification,
    verify_depth_table,
)


@pytest.fixture(scope="module")
def report4():
    return run_verification(RunConfig(n=4))


def test_report_has_no_fatal_cells(report4):
    s = report4.summary
    assert s["fatal"] == 0 and s["timeout"] == 0
    assert report4.exit_code() == 0
    for c in report4.cells:
        if c.status == "ok" and c.predicted is not None and not c.match:
            assert c.provenance != "theorem"


def test_json_round_trip(report4):
    text = emit_report(report4, "json")
    again = parse_report(text)
    assert again == report4
    cell = json.loads(text)["cells"][0]
    assert set(cell["predicted"]) == {"value", "provenance"}


def test_cell_round_trip():
    c = CellResult(4, 3, -1, "depth", 2, "theorem", 2, True, "sparse", 1.5, "ok", "")
    assert CellResult.from_json(c.to_json()) == c
    bad = CellResult(4, 3, -1, "depth", 2, "theorem", 5, False, "sparse", 1.5, "ok", "")
    assert bad.fatal
    assert VerificationReport({}, [bad]).exit_code() == 1


def test_csv_depth_grid(report4):
    rows = list(csv.reader(io.StringIO(emit_report(report4, "csv"))))
    assert rows[0] == ["i\\j", "-1", "0", "1", "2", "3"]
    assert [r[0] for r in rows[1:]] == ["0", "1", "2", "3", "4"]
    assert rows[4][1:] == ["2", "5", "5", "4", "4"]
    assert rows[5][1:] == ["1", "1", "4", "4", "4"]


def test_named_suite_matches_depth_values():
    cells = [c for c in verify_depth_table(RunState(RunConfig(n=4))) if c.quantity == "depth"]
    assert len(cells) == 25
    assert all(c.match for c in cells)


def test_reproducible_digest(report4):
    again = run_verification(RunConfig(n=4))
    assert report_digest(again) == report_digest(report4)
    assert any(c.timing != d.timing for c, d in zip(again.cells, report4.cells))


def test_workers_give_identical_results():
    one = run_verification(RunConfig(n=4, suites=("foundations", "betti")))
    two = run_verification(RunConfig(n=4, suites=("foundations", "betti"), workers=2))
    assert report_digest(one) == report_digest(two)


def test_cache_resume(tmp_path, monkeypatch):
    monkeypatch.setenv("RESINT_CACHE_DIR", str(tmp_path))
    cfg = RunConfig(n=4, suites=("foundations",), use_cache=True)
    first = run_verification(cfg)
    assert any((tmp_path / "cells").rglob("*.json"))
    lines = []
    second = run_verification(cfg, progress=lines.append)
    assert report_digest(first) == report_digest(second)
    assert any("cached" in line for line in lines)


def test_cli_exit_codes(tmp_path):
    runner = CliRunner()
    out = tmp_path / "r.json"
    res = runner.invoke(main, ["verify", "--suite", "depth", "-q", "-o", str(out)])
    assert res.exit_code == 0
    assert parse_report(out.read_text()).summary["fatal"] == 0
    res = runner.invoke(main, ["verify", "--n", "5"])
    assert res.exit_code == 2 and "--heavy" in res.output
    res = runner.invoke(main, ["verify", "--suite", "betti", "--format", "text", "-q"])
    assert res.exit_code == 0 and "summary:" in res.output
