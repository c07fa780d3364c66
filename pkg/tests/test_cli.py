"""CLI: config grammar, dispatch, exit codes, report determinism."""

import json
import subprocess
import sys

import numpy as np
import pytest

from hartogs.cli import main
from hartogs.config import ConfigError, build_profile, load_config, parse_config_text


def write_config(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestConfigParsing:
    def test_nested_keys_and_types(self):
        tree = parse_config_text(
            "command = classify\n"
            "n = 3\n"
            "profile.kind = exp   # with a comment\n"
            "grid.a_margin = 0.1\n"
            "flag = true\n")
        assert tree["n"] == 3
        assert tree["profile"] == {"kind": "exp"}
        assert tree["grid"]["a_margin"] == 0.1
        assert tree["flag"] is True

    def test_malformed_line(self):
        with pytest.raises(ConfigError):
            parse_config_text("command classify\n")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError):
            parse_config_text("n = 2\nn = 3\n")

    def test_validation(self, tmp_path):
        bad = [
            "command = classify\nprofile.kind = linear\nprofile.c1 = 1\nprofile.c2 = 1\nn = 1\n",
            "command = classify\nprofile.kind = linear\nprofile.c1 = 1\nprofile.c2 = 1\ngrid.points = 0\n",
            "command = classify\nprofile.kind = linear\nprofile.c1 = 1\nprofile.c2 = 1\ngrid.a_margin = 1.5\n",
            "command = classify\nprofile.kind = linear\nprofile.c1 = 1\nprofile.c2 = 1\ntolerances.oracle = -1\n",
            "command = wat\nprofile.kind = exp\n",
            "command = classify\n",
        ]
        for i, text in enumerate(bad):
            with pytest.raises(ConfigError):
                load_config(write_config(tmp_path, f"bad{i}.txt", text))

    def test_unknown_profile_kind(self):
        with pytest.raises(ConfigError):
            build_profile({"kind": "spline"})
        with pytest.raises(ConfigError):
            build_profile({"kind": "linear", "c1": 1.0})   # missing c2

    def test_table_profile_from_csv(self, tmp_path):
        xs = np.linspace(0.0, 3.0, 120)
        rows = np.column_stack([xs, np.exp(-xs)])
        csv = tmp_path / "F.csv"
        np.savetxt(csv, rows, delimiter=",")
        prof = build_profile({"kind": "table", "path": "F.csv"}, base_dir=tmp_path)
        assert prof.kind == "table"
        assert prof.deriv(0, 1.0) == pytest.approx(np.exp(-1.0), abs=1e-10)


class TestCommands:
    def test_classify_linear(self, tmp_path, capsys):
        out = tmp_path / "rep.json"
        cfg = write_config(tmp_path, "c.txt",
                           "command = classify\n"
                           "profile.kind = linear\nprofile.c1 = 1.0\nprofile.c2 = 1.0\n"
                           "grid.points = 80\ngrid.seed = 1\n"
                           f"output = {out}\n")
        assert main(["--config", cfg]) == 0
        doc = json.loads(out.read_text())
        assert doc["schema"] == 1
        assert doc["verdict"] == "HYPERBOLIC"
        assert doc["config"]["profile"]["c1"] == 1.0
        assert doc["config"]["grid"]["points"] == 80
        assert "HYPERBOLIC" in capsys.readouterr().out

    def test_expectation_matching(self, tmp_path):
        base = ("command = extremal-test\n"
                "profile.kind = exp\n"
                "grid.points = 100\ngrid.seed = 4\n")
        ok = write_config(tmp_path, "ok.txt", base + "expect = NOT_EXTREMAL\n")
        bad = write_config(tmp_path, "bad.txt", base + "expect = EXTREMAL\n")
        none = write_config(tmp_path, "none.txt", base)
        assert main(["--config", ok, "--quiet"]) == 0
        assert main(["--config", bad, "--quiet"]) == 1
        # without an expectation, NOT_EXTREMAL counts as a verdict failure
        assert main(["--config", none, "--quiet"]) == 1

    def test_config_error_exit_code(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "bad.txt", "command = classify\nn = 1\n")
        assert main(["--config", cfg]) == 2
        assert "config error" in capsys.readouterr().err
        assert main(["--config", str(tmp_path / "missing.txt")]) == 2

    def test_byte_identical_reports(self, tmp_path):
        out = tmp_path / "rep.json"
        cfg = write_config(tmp_path, "c.txt",
                           "command = pseudoconvexity-test\n"
                           "profile.kind = exp\n"
                           "grid.points = 120\ngrid.seed = 3\n"
                           f"output = {out}\n")
        assert main(["--config", cfg, "--quiet"]) == 0
        first = out.read_bytes()
        assert main(["--config", cfg, "--quiet"]) == 0
        assert out.read_bytes() == first

    def test_output_override_and_quiet(self, tmp_path, capsys):
        out = tmp_path / "a.json"
        override = tmp_path / "b.json"
        cfg = write_config(tmp_path, "c.txt",
                           "command = check-kahler\n"
                           "profile.kind = linear\nprofile.c1 = 2.0\nprofile.c2 = 0.5\n"
                           "grid.points = 50\n"
                           f"output = {out}\n")
        assert main(["--config", cfg, "--output", str(override), "--quiet"]) == 0
        assert override.exists() and not out.exists()
        assert capsys.readouterr().out == ""
        doc = json.loads(override.read_text())
        assert doc["verdict"] == "KAHLER"
        assert doc["report"]["positivity_agrees"] is True

    def test_curvature_report_with_csv(self, tmp_path):
        out = tmp_path / "rep.json"
        dump = tmp_path / "grid.csv"
        cfg = write_config(tmp_path, "c.txt",
                           "command = curvature-report\n"
                           "profile.kind = power\nprofile.p = 2.0\n"
                           "n = 2\ngrid.points = 40\ngrid.seed = 2\n"
                           f"output = {out}\ncsv_dump = {dump}\n")
        assert main(["--config", cfg, "--quiet"]) == 0
        doc = json.loads(out.read_text())
        assert doc["verdict"] == "PASS"
        assert len(doc["report"]["records"]) == 40
        header = dump.read_text().splitlines()[0]
        assert header == "z0_re,z0_im,z1_re,z1_im,A,B,C,L,G,det,min_eig"
        data = np.loadtxt(dump, delimiter=",", skiprows=1)
        assert data.shape == (40, 11)

    def test_oracle_tolerance_is_live(self, tmp_path):
        # an absurdly tight oracle tolerance must flip the verdict to FAIL
        base = ("command = curvature-report\n"
                "profile.kind = exp\n"
                "grid.points = 30\ngrid.seed = 2\n")
        loose = write_config(tmp_path, "loose.txt", base)
        tight = write_config(tmp_path, "tight.txt", base + "tolerances.oracle = 1e-16\n")
        assert main(["--config", loose, "--quiet"]) == 0
        assert main(["--config", tight, "--quiet"]) == 1

    def test_curve_dump(self, tmp_path):
        prefix = tmp_path / "curves"
        cfg = write_config(tmp_path, "c.txt",
                           "command = check-kahler\n"
                           "profile.kind = exp\n"
                           "grid.points = 50\n"
                           f"curve_dump = {prefix}\n")
        assert main(["--config", cfg, "--quiet"]) == 0
        scal = np.loadtxt(f"{prefix}.scal.csv", delimiter=",", skiprows=1)
        ell = np.loadtxt(f"{prefix}.L.csv", delimiter=",", skiprows=1)
        assert scal.shape[1] == 2 and ell.shape[1] == 2
        # along the fiber axis A = F, so scal = -6 + G F = -4 for this profile
        np.testing.assert_allclose(scal[:, 1], -4.0, atol=1e-10)
        np.testing.assert_allclose(ell[:, 1], -2.0, atol=1e-10)

    def test_full_suite_pattern(self, tmp_path):
        out = tmp_path / "suite.json"
        cfg = write_config(tmp_path, "c.txt",
                           "command = full-suite\n"
                           "grid.points = 120\ngrid.seed = 2\n"
                           f"output = {out}\n")
        assert main(["--config", cfg, "--quiet"]) == 0
        doc = json.loads(out.read_text())
        assert doc["verdict"] == "SUITE_PASS"
        rows = {r["profile"]: r for r in doc["report"]["profiles"]}
        assert rows["linear(1,1)"]["classify"] == "HYPERBOLIC"
        assert rows["linear(2,0.5)"]["extremal"] == "EXTREMAL"
        assert rows["exp"]["classify"] == "NON_CONSTANT_CURVATURE"
        assert rows["power(2)"]["extremal"] == "NOT_EXTREMAL"
        assert all(r["pseudoconvexity"] == "CONSISTENT" for r in rows.values())


def test_console_entry_point(tmp_path):
    cfg = tmp_path / "c.txt"
    cfg.write_text("command = classify\n"
                   "profile.kind = linear\nprofile.c1 = 1.0\nprofile.c2 = 1.0\n"
                   "grid.points = 40\n")
    proc = subprocess.run([sys.executable, "-m", "hartogs", "--config", str(cfg)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "HYPERBOLIC" in proc.stdout
