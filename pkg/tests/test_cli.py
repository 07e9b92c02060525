import csv
import io
import json
import subprocess
import sys

import pytest

from dicke2p.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def meta(text):
    return dict(line[2:].split("=", 1) for line in text.splitlines() if line.startswith("# ") and "=" in line)


class TestSolve:
    def test_superradiant(self, capsys):
        code, out, _ = run(capsys, "solve", "--omega", "1", "--epsilon", "0.0008", "--n", "1000", "--g", "0.49")
        assert code == 0
        rows = table(out)
        assert [r["branch"] for r in rows] == ["+", "-"]
        assert float(rows[0]["beta0"]) == pytest.approx(18.88, abs=0.01)
        assert float(rows[1]["beta0"]) == pytest.approx(-18.88, abs=0.01)
        assert rows[0]["phase"] == "superradiant"

    def test_normal(self, capsys):
        code, out, _ = run(capsys, "solve", "--g", "0.40")
        assert code == 0
        assert float(table(out)[0]["beta0"]) == 0.0

    def test_unbounded_exit_3(self, capsys):
        code, _, err = run(capsys, "solve", "--g", "0.50")
        assert code == 3
        assert "UnboundedRegion" in err

    def test_bad_frequency_exit_2(self, capsys):
        code, _, err = run(capsys, "solve", "--omega", "0")
        assert code == 2
        assert "omega" in err

    def test_unparsable_exit_2(self, capsys):
        assert run(capsys, "solve", "--g", "abc")[0] == 2

    def test_embeds_config(self, capsys):
        _, out, _ = run(capsys, "solve")
        m = meta(out)
        assert m["epsilon"] == "0.0008" and m["n"] == "1000" and m["g"] == "0.49"
        assert out.startswith("# dicke2p 0.1.0 solve")

    def test_json(self, capsys):
        _, out, _ = run(capsys, "solve", "--format", "json")
        doc = json.loads(out)
        assert doc["config"]["g"] == 0.49
        assert doc["rows"][0]["phase"] == "superradiant"


class TestSeries:
    def test_columns_and_precision(self, capsys):
        code, out, _ = run(capsys, "series", "--t-max", "10")
        assert code == 0
        header = [line for line in out.splitlines() if not line.startswith("#")][0]
        assert header == "t,a_q,b_q,c_q,zeta_x,zeta_p,zeta_min,phi_min"
        row = table(out)[7]
        digits = row["zeta_min"].lstrip("-0.").replace(".", "").split("e")[0]
        assert len(digits) >= 12

    def test_fig2_both_branches(self, tmp_path, capsys):
        out = tmp_path / "fig2.csv"
        assert run(capsys, "series", "--branch", "both", "--t-max", "30", "--out", str(out))[0] == 0
        plus = table((tmp_path / "fig2+.csv").read_text())
        minus = table((tmp_path / "fig2-.csv").read_text())
        assert len(plus) == len(minus) > 100
        for a, b in zip(plus, minus):
            assert float(a["zeta_x"]) == pytest.approx(float(b["zeta_p"]), rel=1e-12)
        assert meta((tmp_path / "fig2-.csv").read_text())["branch"] == "-"

    @pytest.mark.parametrize("rule", ["near-gt", "near-half-omega"])
    def test_fig3_rules(self, rule, capsys):
        code, out, _ = run(capsys, "series", "--g-rule", rule, "--t-max", "20")
        assert code == 0
        g = float(meta(out)["g_resolved"])
        assert g == pytest.approx(0.4476 if rule == "near-gt" else 0.499, abs=1e-4)

    def test_empty_window(self, capsys):
        assert run(capsys, "series", "--t-max", "0")[0] == 2

    def test_deterministic(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "series", "--t-max", "20", "--out", str(a))
        run(capsys, "series", "--t-max", "20", "--out", str(b))
        assert a.read_bytes().replace(b"a.csv", b"b.csv") == b.read_bytes()
        assert b"\r\n" not in a.read_bytes()


class TestSweep:
    def test_fig4(self, capsys):
        code, out, _ = run(capsys, "sweep", "--ne-min", "0.2", "--ne-max", "0.9", "--ne-points", "8", "--t", "100")
        assert code == 0
        rows = table(out)
        assert list(rows[0]) == ["axis_name", "axis_value", "t", "zeta_min"]
        assert len(rows) == 8 and rows[0]["axis_name"] == "n_epsilon"

    def test_fig5_surface(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--g-rule", "near-gt", "--ne-min", "0.9", "--ne-max", "0.99",
            "--ne-points", "4", "--t-min", "40", "--t-max", "200", "--t-points", "5",
        )
        assert code == 0
        rows = table(out)
        assert len(rows) == 20
        assert {float(r["t"]) for r in rows} == {40.0, 80.0, 120.0, 160.0, 200.0}

    def test_invalid_range(self, capsys):
        assert run(capsys, "sweep", "--ne-min", "0.9", "--ne-max", "0.2", "--ne-points", "5")[0] == 2

    def test_bad_rule(self, capsys):
        assert run(capsys, "sweep", "--g-rule", "sideways")[0] == 2


def test_phase_diagram(capsys):
    code, out, _ = run(capsys, "phase-diagram", "--g-min", "0.44", "--g-points", "3", "--ne-points", "2", "--ne-min", "0.8", "--ne-max", "1.2")
    assert code == 0
    rows = table(out)
    assert [r["phase"] for r in rows[:3]] == ["normal", "superradiant", "unbounded"]
    assert list(rows[0]) == ["n_epsilon", "g", "phase", "g_t"]


class TestScaling:
    def test_default_fit(self, capsys):
        code, out, _ = run(capsys, "scaling")
        assert code == 0
        m = meta(out)
        assert float(m["summary.r_squared"]) >= 0.999
        rows = table(out)
        assert list(rows[0]) == ["delta", "zeta_min_sq", "t_measured", "omega_a_exact", "omega_a_leading"]
        assert len(rows) == 20

    def test_self_test(self, capsys):
        code, out, _ = run(capsys, "scaling", "--self-test")
        assert code == 0 and "ok" in out

    def test_range_crossing_gt(self, capsys):
        code, _, err = run(capsys, "scaling", "--delta-max", "0.1")
        assert code == 3
        assert "NotSuperradiant" in err


class TestOracleCheck:
    def test_clean(self, tmp_path, capsys):
        out = tmp_path / "pinned.csv"
        assert run(capsys, "oracle-check", "--out", str(out))[0] == 0
        rows = table(out.read_text())
        assert all(r["status"] in ("pass", "pinned") for r in rows)
        pinned = {(r["quantity"], r["g"]): float(r["closed_form"]) for r in rows if r["status"] == "pinned"}
        assert pinned[("zeta_min_sq_global", "0.49")] == pytest.approx(0.0316, abs=1e-4)

    def test_perturbed(self, capsys):
        code, _, err = run(capsys, "oracle-check", "--perturb-g-beta", "1e-6", "--g-list", "0.49")
        assert code == 4
        assert "coefficients" in err or "zeta_min_sq_global" in err

    def test_normal_phase(self, capsys):
        assert run(capsys, "oracle-check", "--g-list", "0.3")[0] == 0


def test_config_file_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# Fig. 3 style run\ng = 0.40\nt-max = 12\n")
    _, out, _ = run(capsys, "series", "--config", str(cfg), "--g", "0.47")
    m = meta(out)
    assert m["g"] == "0.47" and m["t_max"] == "12"


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = blue\n")
    assert run(capsys, "solve", "--config", str(cfg))[0] == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "dicke2p", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "0.1.0" in out.stdout
