import csv
import io
import json

import numpy as np
import pytest

from gadcsim import __version__
from gadcsim.cli import main
from gadcsim.errors import ValidationError
from gadcsim.protocols import run_protocol
from gadcsim.search import DEFAULT_ALPHA_GRID, find_improvement
from gadcsim.states import family_state
from gadcsim.sweep import (
    CSV_COLUMNS,
    SweepConfig,
    dilation_verify,
    format_csv,
    parse_grid,
    rows_per_point,
    run_sweep,
    sweep_rows,
)

SMALL = dict(alpha_grid=[0.2, 0.6], nu_grid=[0.5, 1.0], eta_grid=[0.3, 1.0])


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_parse_grid_forms():
    assert parse_grid([0.1, 0.2]) == [0.1, 0.2]
    assert parse_grid(0.5) == [0.5]
    assert parse_grid("0.1,0.3") == [0.1, 0.3]
    np.testing.assert_allclose(parse_grid("0:1:5"), [0, 0.25, 0.5, 0.75, 1])
    np.testing.assert_allclose(parse_grid({"start": 0.1, "stop": 0.9, "count": 3}), [0.1, 0.5, 0.9])
    for bad in ([], "1:2", {"start": 0, "stop": 1}, {"start": 0, "stop": 1, "count": 0}):
        with pytest.raises(ValidationError):
            parse_grid(bad)


def test_config_validation():
    with pytest.raises(ValidationError):
        SweepConfig(**{**SMALL, "alpha_grid": [1.5]})
    with pytest.raises(ValidationError):
        SweepConfig(**SMALL, w_grid=[1.0])
    with pytest.raises(ValidationError):
        SweepConfig(**SMALL, protocol="magic")
    with pytest.raises(ValidationError):
        SweepConfig(**SMALL, sign=0)
    with pytest.raises(ValidationError):
        SweepConfig.from_mapping({**SMALL, "colour": "red"})


@pytest.mark.parametrize("protocol", ["baseline", "weak", "povm1-case1", "povm2-case2"])
def test_row_count(protocol):
    cfg = SweepConfig(**SMALL, protocol=protocol, w_grid=[0.0, 0.3], r_grid=[0.2])
    assert len(sweep_rows(cfg)) == cfg.grid_size() * rows_per_point(protocol)


def test_csv_header_and_baseline_values(tmp_path):
    cfg = SweepConfig(**SMALL, output_path=str(tmp_path / "out.csv"))
    rows = read_csv(run_sweep(cfg))
    assert tuple(rows[0]) == CSV_COLUMNS
    for row in rows:
        if row["nu"] == "1" and row["eta"] == "1":
            a = float(row["alpha"])
            assert float(row["concurrence_prot"]) == pytest.approx(2 * a * np.sqrt(1 - a * a), abs=1e-10)
        assert row["improved_concurrence"] == "0" and row["improved_steering"] == "0"


def test_weak_rows_match_protocol_and_flags(tmp_path):
    cfg = SweepConfig(**SMALL, protocol="weak", w_grid=[0.0, 0.5], r_grid=[0.0, 0.6],
                      state_family="parallel", output_path=str(tmp_path / "w.csv"))
    for row in read_csv(run_sweep(cfg)):
        w, r = float(row["w"]), float(row["r"])
        state = family_state("parallel", float(row["alpha"]), 1)
        res = run_protocol("weak", state, float(row["nu"]), float(row["eta"]), w, r)[0]
        assert float(row["concurrence_prot"]) == pytest.approx(res.concurrence, abs=1e-10)
        assert float(row["success_prob"]) == pytest.approx(res.success_probability, abs=1e-10)
        if w == 0 and r == 0:
            assert row["improved_concurrence"] == "0"
            assert float(row["success_prob"]) == pytest.approx(1.0, abs=1e-12)


def test_povm_rows_one_per_branch():
    cfg = SweepConfig(**SMALL, protocol="povm1-case2")
    text = format_csv(sweep_rows(cfg))
    branches = [row["branch"] for row in csv.DictReader(io.StringIO(text))]
    assert branches == ["0", "1", "2", "3"] * (len(branches) // 4)
    assert len(branches) == SweepConfig(**SMALL).grid_size() * 4


def test_sweep_is_byte_identical_and_parallel_safe(tmp_path):
    base = dict(SMALL, protocol="povm2-case1", w_grid=[0.0], r_grid=[0.0])
    a = run_sweep(SweepConfig(**base, output_path=str(tmp_path / "a.csv"))).read_bytes()
    b = run_sweep(SweepConfig(**base, output_path=str(tmp_path / "b.csv"))).read_bytes()
    c = run_sweep(SweepConfig(**base, output_path=str(tmp_path / "c.csv"), workers=2)).read_bytes()
    assert a == b == c


def test_unwritable_output():
    with pytest.raises(ValidationError):
        run_sweep(SweepConfig(**SMALL, output_path="/nonexistent-dir/x.csv"))


def test_dilation_verify_reports():
    for which in ("u1", "u2", "built"):
        report = dilation_verify(which, 0.4, 0.7)
        assert report["passed"], report
        assert report["worst_residual"] < 1e-10
    report = dilation_verify("u1", 1.0, 1.0)
    assert report["identity_channel_residual"] < 1e-12
    with pytest.raises(ValidationError):
        dilation_verify("u9", 0.5, 0.5)


def test_cli_sweep_with_config_and_overrides(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    out = tmp_path / "o.csv"
    cfg.write_text(json.dumps({**SMALL, "protocol": "weak", "w_grid": [0.2], "output_path": str(out)}))
    assert main(["sweep", "--config", str(cfg), "--alpha-grid", "0.5", "--sign", "-"]) == 0
    rows = read_csv(out)
    assert len(rows) == 4 and all(r["alpha"] == "0.5" for r in rows)
    assert "wrote 4 grid points" in capsys.readouterr().out


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["version"]) == 0
    assert capsys.readouterr().out.strip() == __version__
    assert main(["state-report", "--alpha", "2"]) == 1
    assert main(["sweep", "--alpha-grid", "0.5", "--nu-grid", "0.5", "--eta-grid", "0.5",
                 "--protocol", "nope"]) == 1
    assert main(["sweep", "--config", str(tmp_path / "missing.json")]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["dilation-verify", "--nu", "abc", "--eta", "0.5"])
    assert exc.value.code == 1
    # the closed form U1 is singular at nu = eta = 0
    assert main(["dilation-verify", "--which", "u1", "--nu", "0", "--eta", "0"]) == 1
    # U2 loses accuracy to cancellation at tiny nu and fails verification
    assert main(["dilation-verify", "--which", "u2", "--nu", "1e-13", "--eta", "0.3"]) == 2


def test_cli_dilation_verify_json(capsys):
    assert main(["dilation-verify", "--which", "u2", "--nu", "1", "--eta", "1"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] and report["unitarity_residual"] < 1e-12


def test_cli_state_report(capsys):
    assert main(["state-report", "--family", "parallel", "--alpha", str(1 / np.sqrt(2)),
                 "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["concurrence"] == pytest.approx(1.0, abs=1e-12)
    assert report["steering_value"] == pytest.approx(2 * np.sqrt(2), abs=1e-9)
    assert report["steering_violates"] is True
    assert main(["state-report", "--family", "antiparallel", "--alpha", "1", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["concurrence"] == 0.0
    assert report["steering_value"] == pytest.approx(2.0, abs=1e-12)
    assert main(["state-report", "--alpha", "0.6", "--sign", "-", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["concurrence"] == pytest.approx(0.96, abs=1e-12)
    assert main(["state-report", "--alpha", "0.3"]) == 0
    assert "concurrence" in capsys.readouterr().out


def test_weak_sweep_improves_on_one_alpha_run(tmp_path):
    wit = find_improvement("weak", "antiparallel", "concurrence")
    cfg = SweepConfig(alpha_grid=list(DEFAULT_ALPHA_GRID), nu_grid=[wit.nu], eta_grid=[wit.eta],
                      w_grid=[wit.w], r_grid=[wit.r], protocol="weak",
                      output_path=str(tmp_path / "fig.csv"))
    rows = read_csv(run_sweep(cfg))
    text = "".join(row["improved_concurrence"] for row in rows).strip("0")
    assert text and set(text) == {"1"}  # one contiguous improving run
    improved = [float(row["alpha"]) for row in rows if row["improved_concurrence"] == "1"]
    assert wit.alpha_interval[0] >= improved[0] and wit.alpha_interval[1] <= improved[-1]
