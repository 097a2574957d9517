import csv
import json
import subprocess
import sys

import pytest

from cylinder_landau import cli


def run(capsys, *argv):
    code, payload = cli.run(list(argv))
    out = capsys.readouterr()
    return code, payload, out


def test_spectrum_json(capsys):
    code, payload, out = run(capsys, "spectrum", "--window", "-3,3", "--points", "1001")
    assert code == 0
    assert json.loads(out.out)["pass"] is True
    assert payload["results"]["degeneracy"] == {"0": 7, "1": 7, "2": 7, "3": 7}
    for check in payload["checks"].values():
        assert "tolerance" in check


def test_spectrum_csv(capsys, tmp_path):
    path = tmp_path / "levels.csv"
    code, _, _ = run(capsys, "spectrum", "--window=0,1", "--levels", "2", "--out", str(path))
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["n", "N", "E"] and len(rows) == 5


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"B": 2.0, "q": 0.25, "rho": 0.3}))
    code, payload, _ = run(capsys, "groundstate", "--config", str(cfg), "--n", "1")
    assert code == 0
    assert payload["config"]["mu"] == 2.0
    assert payload["results"]["expected_peak"] == pytest.approx(0.3 - 1.25 / 2)


def test_groundstate_csv(capsys, tmp_path):
    path = tmp_path / "gs.csv"
    code, _, _ = run(capsys, "groundstate", "--out", str(path), "--points", "401")
    assert code == 0
    header = next(csv.reader(path.open()))
    assert header == ["y", "analytic", "numeric_re", "numeric_im"]


def test_holonomy_inline(capsys):
    code, payload, _ = run(capsys, "holonomy", "--potential", '{"zeta": 0.25}',
                           "--loop", '{"vertices": [[0, 0], [3.141592653589793, 0], [6.283185307179586, 0]]}')
    assert code == 0
    re, im = payload["results"]["loops"][0]["phase"]
    assert re == pytest.approx(0.0, abs=1e-9) and im == pytest.approx(1.0)


def test_holonomy_open_loop(capsys):
    code, _, out = run(capsys, "holonomy", "--loop", '{"vertices": [[0, 0], [1, 0]]}')
    assert code == 2
    assert "OpenLoop" in out.err


def test_classify_translation(capsys):
    code, payload, _ = run(capsys, "classify", "--translate", "0.5")
    assert code == 0
    t = payload["results"]["translation"]
    assert t["admissible"] is False and t["class_preserved"] is False
    assert t["nearest_admissible"] == [0.0, 1.0]


def test_classify_compare(capsys):
    code, payload, _ = run(capsys, "classify", "--potential", '{"zeta": 0.2}', "--compare", '{"zeta": 1.2}')
    assert code == 0 and payload["results"]["compare"]["same_class"] is True


def test_symmetry_check(capsys):
    code, payload, _ = run(capsys, "symmetry-check", "--phi", "1.0", "--k", "2", "--shift", "0.5")
    assert code == 0
    adm = payload["results"]["admissibility"]
    assert adm["verdict"] == "NonAdmissible"
    assert adm["nearest_admissible"] == [0.0, 1.0]


def test_rep_check_integer(capsys):
    code, payload, _ = run(capsys, "rep-check", "--nu", "2")
    assert code == 0 and payload["checks"]["rep_S1_commutator"]["pass"]


def test_rep_check_fractional_flux(capsys):
    code, payload, _ = run(capsys, "rep-check", "--nu", "0.5")
    assert code == 1
    assert payload["checks"]["flux_quantization"]["pass"] is False
    assert "skipped" in payload["results"]["representations"]


def test_step_size(capsys):
    code, payload, _ = run(capsys, "step-size", "--B-gauss", "10", "--R-cm", "2")
    assert payload["results"]["step_cm"] == pytest.approx(6.58e-8 / 20, rel=1e-3)
    # the 6.6e-8 / (B R) rule of thumb still holds
    assert code == 0


def test_tolerance_override_can_fail_a_run(capsys):
    code, payload, _ = run(capsys, "step-size", "--tolerance-overrides", "step_size=1e-6")
    assert code == 1
    assert payload["checks"]["step_size"]["tolerance"] == 1e-6
    code, _, _ = run(capsys, "step-size", "--tolerance-overrides", '{"step_size": 0.1}')
    assert code == 0


def test_unknown_tolerance(capsys):
    code, _, out = run(capsys, "step-size", "--tolerance-overrides", "nonsense=1")
    assert code == 2 and "nonsense" in out.err


def test_bad_config(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"B": -1}))
    code, _, out = run(capsys, "spectrum", "--config", str(bad))
    assert code == 2 and "NonPositiveParameter" in out.err


def test_unwritable_output(capsys, tmp_path):
    code, _, out = run(capsys, "step-size", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 3 and "cannot write" in out.err


def test_csv_for_non_tabular_command(capsys, tmp_path):
    code, _, _ = run(capsys, "classify", "--out", str(tmp_path / "c.csv"))
    assert code == 2


def test_json_out(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, payload, _ = run(capsys, "rep-check", "--out", str(path), "--seed", "4")
    assert code == 0
    assert json.loads(path.read_text())["seed"] == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cylinder_landau", "step-size"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "step-size"
