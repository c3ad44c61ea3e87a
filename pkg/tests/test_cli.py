import csv
import json

import pytest

from translator_lab.cli import EXIT_DOMAIN, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, _workers, run


def _header(path):
    with open(path) as fh:
        return next(csv.reader(fh))


def _manifest(path):
    return json.loads(path.with_name(path.stem + ".manifest.json").read_text())


def test_spaces(capsys):
    assert run(["spaces", "--kind", "cp", "--n", "2"]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    sp = out["space"]
    assert sp["alpha_numeric"] == pytest.approx(5.441398092702653, rel=1e-12)
    assert sp["residue_origin"] == pytest.approx(3, rel=1e-6)
    assert "s_star" in sp


def test_solve_writes_trace_and_manifest(tmp_path, capsys):
    out = tmp_path / "trace.csv"
    code = run(["solve", "--kind", "cp", "--n", "2", "--s0", "1.6", "--v0", "0", "--dv0", "0", "--out", str(out)])
    assert code == EXIT_OK
    assert _header(out) == ["s", "V", "dV"]
    man = _manifest(out)
    assert man["classification"] == "I"
    assert man["config"]["s0"] == 1.6 and man["config"]["dv0"] == 0.0
    assert "version" in man and "timestamp" in man
    assert any(d["code"] == "root_length_normalisation" for d in man["diagnostics"])


def test_domain_error_exit():
    assert run(["solve", "--s0", "-1"]) == EXIT_DOMAIN


def test_numerical_failure_exit():
    assert run(["solve", "--s0", "1.6", "--max-steps", "3"]) == EXIT_NUMERICAL


@pytest.mark.parametrize("argv", [["solve", "--bogus"], ["frobnicate"], ["solve", "--s0", "abc"], []])
def test_usage_exit(argv):
    assert run(argv) == EXIT_USAGE


def test_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert run(["shoot", "--kind", "sphere", "--n", "3", "--end", "focal", "--out", str(p)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_config_merge_flags_win(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nkind = sphere\nn = 3\ns0 = 1.0\ndv0 = 0.5\n")
    out = tmp_path / "c.csv"
    assert run(["classify", "--config", str(cfg), "--n", "2", "--out", str(out)]) == EXIT_OK
    man = _manifest(out)
    assert man["config"]["kind"] == "sphere"
    assert man["config"]["n"] == 2
    assert man["config"]["s0"] == 1.0


def test_bad_config_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert run(["solve", "--config", str(cfg), "--s0", "1.0"]) == EXIT_DOMAIN


def test_rerun_from_manifest(tmp_path):
    out = tmp_path / "t.csv"
    assert run(["solve", "--s0", "2.0", "--dv0", "0.3", "--rtol", "1e-8", "--out", str(out)]) == EXIT_OK
    first = out.read_bytes()
    man = out.with_name("t.manifest.json")
    out.unlink()
    assert run(["solve", "--config", str(man)]) == EXIT_OK
    assert out.read_bytes() == first


def test_sweep_small(tmp_path):
    out = tmp_path / "sweep.csv"
    assert run(["sweep", "--n-s", "5", "--n-slope", "5", "--out", str(out)]) == EXIT_OK
    assert _header(out) == ["s0", "dV0", "type", "left", "right", "left_location", "right_location"]
    man = _manifest(out)
    assert sum(man["counts"].values()) == 27
    assert man["type_mapping"]["I"] == ["VTminus", "VTplus"]


def test_phase_outputs(tmp_path):
    grid = tmp_path / "grid.csv"
    assert run(["phase", "--nx", "5", "--npsi", "4", "--out", str(grid)]) == EXIT_OK
    assert _header(grid) == ["x", "psi", "psi_rhs", "eta", "region_sign"]
    traj = tmp_path / "traj.csv"
    assert run(["phase", "--x0", "1.0", "--psi0", "3.0", "--out", str(traj)]) == EXIT_OK
    assert _header(traj) == ["x", "psi", "h1_bound"]


def test_flowcheck(tmp_path):
    out = tmp_path / "flow.csv"
    assert run(["flowcheck", "--points", "41", "--T", "0.2", "--refine", "1", "--out", str(out)]) == EXIT_OK
    assert _header(out) == ["s", "u_final", "u_expected", "abs_err"]
    man = _manifest(out)
    assert man["profile_type"] == "IV"
    assert man["deviation"] < 1e-3


def test_hermann_manifest_records_variant(tmp_path):
    out = tmp_path / "curve.csv"
    assert run(["hermann", "curve", "--layout", "B2", "--out", str(out)]) == EXIT_OK
    assert _header(out) == ["t", "x1", "x2", "Fhat", "V"]
    man = _manifest(out)
    assert man["variant"] == "cubic" and man["exponent"] == 3
    assert man["variant_selection"]["selected"] == "cubic"
    assert man["convexity_check"]["status"] == "violated"


def test_hermann_fan(tmp_path):
    out = tmp_path / "fan.csv"
    assert run(["hermann", "fan", "--n-curves", "3", "--t-end", "-0.2", "--out", str(out)]) == EXIT_OK
    assert len(list(tmp_path.glob("fan_*.csv"))) == 3


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("TRANSLATOR_LAB_THREADS", "2")
    assert _workers(8) == 2
    monkeypatch.setenv("TRANSLATOR_LAB_THREADS", "x")
    with pytest.raises(Exception):
        _workers(4)
    monkeypatch.delenv("TRANSLATOR_LAB_THREADS")
    assert _workers(3) == 3
