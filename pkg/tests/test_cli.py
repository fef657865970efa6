"""CLI thin client: output, files, exit codes."""

import json

import pytest

from viscowave.cli import main
from viscowave.render import parse_csv


def test_dispersion_stdout_csv(capsys):
    code = main(["dispersion", "--a", "100", "--b", "100", "--gamma", "0.1",
                 "--mass", "both"])
    assert code == 0
    out = capsys.readouterr().out
    header, rows = parse_csv(out)
    assert len(rows) == 2
    assert rows[0]["mass"] == "consistent"
    assert rows[0]["vel_err_pct"] == "0.0164505"


def test_dispersion_json_format(capsys):
    code = main(["dispersion", "--a", "50", "--b", "50", "--gamma", "0",
                 "--mass", "consistent", "--format", "json"])
    assert code == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["damp_err_pct"] is None


def test_below_nyquist_exit_code(capsys):
    code = main(["dispersion", "--a", "1", "--b", "1"])
    assert code == 2
    assert "Nyquist" in capsys.readouterr().err


def test_reflect_uniform_and_lumped(capsys):
    code = main(["reflect", "--a", "40", "--alpha", "1", "--mass", "consistent",
                 "--format", "json"])
    assert code == 0
    rows = json.loads(capsys.readouterr().out)
    assert abs(rows[0]["reflection_pct"]) < 1e-10

    code = main(["reflect", "--a", "10", "--alpha", "2", "--gamma", "0.01",
                 "--mass", "lumped", "--format", "json"])
    assert code == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["reflection_pct"] == pytest.approx(10.879936846582, rel=1e-9)


def test_table_to_file_deterministic(tmp_path):
    out1 = tmp_path / "t1.csv"
    out2 = tmp_path / "t2.csv"
    assert main(["table", "1", "--out", str(out1)]) == 0
    assert main(["table", "1", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    header, rows = parse_csv(out1.read_text())
    assert len(rows) == 30


def test_simulate_summary_and_series(tmp_path, capsys):
    series = tmp_path / "series.csv"
    code = main(["simulate", "--a", "10", "--b", "10", "--gamma", "0.05",
                 "--cycles", "8", "--series-out", str(series)])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert "series_csv" not in payload
    assert abs(payload["velocity_deviation_pct"]) < 0.5
    assert series.read_text().splitlines()[1] == "time,probe_0,probe_1"


def test_simulate_overlap_exit_code(capsys):
    code = main(["simulate", "--a", "20", "--b", "20", "--cycles", "200",
                 "--total-steps", "100"])
    assert code == 3
    assert "burst" in capsys.readouterr().err


def test_unknown_argument_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["dispersion", "--a", "10"])  # missing --b
    assert err.value.code == 2
