import json
import os
import subprocess
import sys

import numpy as np
import pytest

from rs_maxwell import cli
from rs_maxwell.config import ConfigError, parse_config_text
from rs_maxwell.report import VerificationReport, emit_report, parse_report

SMALL = {
    "algebra": "",
    "covariance": "rotations = 5\nboosts = 5\n",
    "constitutive": "triples = 5\n",
    "esposito": "u_samples = 5\n",
    "curved": 'metric = "schwarzschild"\npoints = 1\nfields = 2\n',
    "evolve": "grid_n = 128\n",
}


@pytest.fixture
def cfgfile(tmp_path):
    def make(text, name="run.toml"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return make


@pytest.fixture(autouse=True)
def _no_seed_env(monkeypatch):
    monkeypatch.delenv("RS_MAXWELL_SEED", raising=False)


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("suite", sorted(SMALL))
def test_every_suite_passes(suite, cfgfile, capsys):
    code, out, err = run([suite, "--config", cfgfile(SMALL[suite])], capsys)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["suite"] == suite and doc["summary"]["failed"] == 0
    assert doc["summary"]["total"] == len(doc["checks"]) > 0
    assert all(set(c) >= {"check_id", "paper_anchor", "residual", "tolerance", "pass"} for c in doc["checks"])


def test_corruption_exits_one(cfgfile, capsys):
    code, out, err = run(["covariance", "--config", cfgfile(SMALL["covariance"]), "--corrupt", "alpha1"], capsys)
    assert code == 1
    doc = json.loads(out)
    assert doc["config"]["corrupt"] == "alpha1"
    failed = [c["check_id"] for c in doc["checks"] if not c["pass"]]
    assert "covariance.rotation.alpha" in failed
    assert "FAIL covariance.rotation.alpha" in err


def test_corruption_in_algebra_names_relation(cfgfile, capsys):
    code, out, _ = run(["algebra", "--config", cfgfile(""), "--corrupt", "beta2"], capsys)
    assert code == 1
    failed = [c["paper_anchor"] for c in json.loads(out)["checks"] if not c["pass"]]
    assert failed and all("beta" in a or "2" in a for a in failed)


@pytest.mark.parametrize("text", ["bogus = 1\n", "rotations = -3\n", "rotations = [1\n", "bmax = 50.0\n",
                                  'suite = "esposito"\n', "[table]\nx = 1\n", 'metric = "kerr"\n',
                                  "eps = [[1, 2], [3, 4]]\n", "seed = 1.5\n"])
def test_config_errors_exit_two(text, cfgfile, capsys):
    code, out, err = run(["covariance", "--config", cfgfile(text)], capsys)
    assert code == 2 and out == ""
    assert "config error" in err


def test_horizon_config(cfgfile, capsys):
    code, _, _ = run(["curved", "--config", cfgfile("r_min = 1.5\n")], capsys)
    assert code == 2
    # explicit point inside the horizon is a domain error raised during the run
    code, _, err = run(["curved", "--config", cfgfile('metric = "schwarzschild"\npoints = [[0, 1.0, 1.0, 0]]\n')], capsys)
    assert code == 2 and "horizon" in err.lower() or "2M" in err


def test_usage_errors_exit_two(cfgfile):
    with pytest.raises(SystemExit) as e:
        cli.main(["nonsense", "--config", cfgfile("")])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["algebra"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["algebra", "--config", cfgfile(""), "--corrupt", "nope"])
    assert e.value.code == 2


def test_io_errors_exit_three(tmp_path, cfgfile, capsys):
    code, _, _ = run(["algebra", "--config", str(tmp_path / "missing.toml")], capsys)
    assert code == 3
    bad_out = str(tmp_path / "no" / "such" / "dir" / "r.json")
    code, _, _ = run(["algebra", "--config", cfgfile(""), "--out", bad_out], capsys)
    assert code == 3
    code, _, _ = run(["evolve", "--config", cfgfile(f'grid_n = 16\ntrajectory = "{tmp_path}/x/y.jsonl"\n')], capsys)
    assert code == 3


def test_out_file_and_text_format(tmp_path, cfgfile, capsys):
    out = tmp_path / "r.txt"
    code, stdout, _ = run(["esposito", "--config", cfgfile(SMALL["esposito"]), "--format", "text", "--out", str(out)],
                          capsys)
    assert code == 0 and stdout == ""
    text = out.read_text()
    assert "esposito.round_trip" in text and "F -> (e, b) -> F" in text
    assert "PASS" in text and "FAIL" not in text.replace("0 failed", "")


def test_out_from_config(tmp_path, cfgfile, capsys):
    out = tmp_path / "fromcfg.json"
    code, stdout, _ = run(["algebra", "--config", cfgfile(f'out = "{out}"\n')], capsys)
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["summary"]["failed"] == 0


@pytest.mark.parametrize("suite", ["covariance", "curved", "evolve"])
def test_byte_identical_rerun(suite, cfgfile, capsys):
    path = cfgfile(SMALL[suite])
    _, a, _ = run([suite, "--config", path], capsys)
    _, b, _ = run([suite, "--config", path], capsys)
    assert a == b
    assert "time" not in a.lower()


def test_seed_changes_samples_and_env_overrides(cfgfile, capsys, monkeypatch):
    path = cfgfile(SMALL["covariance"] + "seed = 3\n")
    _, a, _ = run(["covariance", "--config", path], capsys)
    monkeypatch.setenv("RS_MAXWELL_SEED", "11")
    _, b, _ = run(["covariance", "--config", path], capsys)
    assert json.loads(a)["config"]["seed"] == 3
    assert json.loads(b)["config"]["seed"] == 11
    assert a != b
    monkeypatch.setenv("RS_MAXWELL_SEED", "x")
    code, _, _ = run(["covariance", "--config", path], capsys)
    assert code == 2


def test_only_seed_is_overridable():
    cfg = parse_config_text("rotations = 4\n", "covariance", env={"RS_MAXWELL_ROTATIONS": "9", "RS_MAXWELL_SEED": "2"})
    assert cfg.rotations == 4 and cfg.seed == 2


def test_round_trip_and_empty_report():
    r = VerificationReport("algebra", "0", {"seed": 0}, [])
    assert parse_report(emit_report(r, "json")).to_dict() == r.to_dict()
    assert json.loads(emit_report(r, "json"))["summary"] == {"total": 0, "passed": 0, "failed": 0}
    r.add("x.a", "a relation", 1e-14, 1e-12)
    r.add("x.a", "a relation", 3e-13, 1e-12)
    r.add("x.b", "another", np.float64(2.0), 1.0)
    back = parse_report(emit_report(r, "json"))
    assert back.to_dict() == r.to_dict()
    assert back.summary == {"total": 2, "passed": 1, "failed": 1}
    assert [c.residual for c in back.checks] == [3e-13, 2.0]
    with pytest.raises(ValueError):
        emit_report(r, "yaml")


def test_config_rejects_non_utf8(tmp_path):
    p = tmp_path / "bin.toml"
    p.write_bytes(b"\xff\xfe seed = 1")
    from rs_maxwell.config import load_config
    with pytest.raises(ConfigError):
        load_config(str(p), "algebra")


def test_console_script_entry(cfgfile):
    proc = subprocess.run([sys.executable, "-m", "rs_maxwell.cli", "algebra", "--config", cfgfile("")],
                          capture_output=True, text=True, env={**os.environ, "RS_MAXWELL_NUMBA": "0"})
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["failed"] == 0
