import json
import math

import numpy as np
import pytest

from thermalweak.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMhGrid:
    def test_negative_minimum_small_occupation(self, tmp_path, capsys):
        out = tmp_path / "fig1.csv"
        code, _, _ = run(
            capsys, "mh-grid", "--mean-n", "0.01", "--count", "81", "--out", str(out)
        )
        assert code == 0
        text = out.read_text()
        meta = dict(
            line[2:].split(": ", 1)
            for line in text.splitlines()
            if line.startswith("# ") and ": " in line
        )
        assert float(meta["min_value"]) < 0.0

    def test_vacuum_origin_value(self, tmp_path, capsys):
        out = tmp_path / "vac.csv"
        code, _, _ = run(
            capsys,
            *("mh-grid --mean-n 0 --qmin -1 --qmax 1 --pmin -1 --pmax 1".split()),
            "--count",
            "3",
            "--out",
            str(out),
            "--no-header",
        )
        assert code == 0
        rows = [r.split(",") for r in out.read_text().splitlines()[1:]]
        origin = [r for r in rows if r[0] == "0" and r[1] == "0"]
        assert float(origin[0][2]) == pytest.approx(1.0 / (math.pi * math.sqrt(2.0)))

    def test_deterministic_output(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["mh-grid", "--mean-n", "0.5", "--count", "31"]
        assert run(capsys, *args, "--out", str(a))[0] == 0
        assert run(capsys, *args, "--out", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_json_format(self, tmp_path, capsys):
        out = tmp_path / "grid.json"
        code, _, _ = run(
            capsys,
            "mh-grid", "--mean-n", "1", "--count", "21",
            "--format", "json", "--out", str(out),
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert set(doc) == {"meta", "data"}
        assert len(doc["data"]["values"]) == 21

    def test_invalid_grid(self, capsys):
        code, _, err = run(
            capsys, "mh-grid", "--mean-n", "0.1", "--qmin", "2", "--qmax", "-2"
        )
        assert code == 2
        assert err.startswith("error: ")
        assert len(err.strip().splitlines()) == 1


class TestWeakValueCurve:
    def test_vacuum_parabola_and_method_agreement(self, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        code, _, _ = run(
            capsys,
            "weakvalue-curve", "--mean-n", "0",
            "--qmin", "-2", "--qmax", "2", "--count", "41",
            "--method", "both", "--out", str(out), "--no-header",
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "q,closed-form,conditional-moment-integral,outside_threshold"
        for row in lines[1:]:
            q, closed, integral, marker = row.split(",")
            q, closed, integral = float(q), float(closed), float(integral)
            assert closed == pytest.approx(1.0 - q * q, abs=1e-10)
            assert abs(closed - integral) < 1e-8
            assert marker == ("1" if abs(q) >= 1.0 else "0")


class TestNegativityProb:
    def test_endpoints_and_monotonicity(self, tmp_path, capsys):
        out = tmp_path / "prob.csv"
        code, _, _ = run(
            capsys,
            "negativity-prob", "--mean-n-min", "0", "--mean-n-max", "1",
            "--steps", "11", "--out", str(out), "--no-header",
        )
        assert code == 0
        rows = [r.split(",") for r in out.read_text().splitlines()[1:]]
        probs = [float(r[1]) for r in rows]
        assert probs[0] == pytest.approx(0.157299207050285, abs=1e-10)
        assert probs[-1] == pytest.approx(1.56540225800255e-3, rel=1e-6)
        assert all(b < a for a, b in zip(probs, probs[1:]))

    def test_invalid_range(self, capsys):
        code, _, err = run(
            capsys, "negativity-prob", "--mean-n-min", "2", "--mean-n-max", "1"
        )
        assert code == 2 and err.startswith("error: ")


class TestOccupation:
    def test_wien_wavelength(self, capsys):
        code, out, _ = run(capsys, "occupation", "--wien", "wavelength")
        assert code == 0
        nbar = float(out.splitlines()[1].split("=")[1])
        assert nbar == pytest.approx(7.0262e-3, rel=1e-3)

    def test_microkelvin(self, capsys):
        code, out, _ = run(
            capsys, "occupation", "--frequency", "1e5", "--temperature", "1e-6"
        )
        assert code == 0
        nbar = float(out.splitlines()[0].split("=")[1])
        assert 1e-3 < nbar < 1e-1

    def test_ln2_point(self, capsys):
        from thermalweak import HBAR, K_BOLTZMANN

        omega = K_BOLTZMANN * math.log(2.0) / HBAR
        code, out, _ = run(
            capsys, "occupation", "--omega", str(omega), "--temperature", "1"
        )
        assert code == 0
        nbar = float(out.splitlines()[0].split("=")[1])
        assert nbar == pytest.approx(1.0, rel=1e-9)

    def test_missing_inputs(self, capsys):
        code, _, err = run(capsys, "occupation")
        assert code == 2 and err.startswith("error: ")


class TestSimulate:
    def test_vacuum_q2(self, tmp_path, capsys):
        out = tmp_path / "sim.json"
        code, _, _ = run(
            capsys,
            "simulate", "--mean-n", "0", "--q", "2", "--g", "0.05", "--out", str(out),
        )
        assert code == 0
        doc = json.loads(out.read_text())
        rep = doc["data"][0]
        assert rep["estimated_weak_value"] == pytest.approx(-3.0, rel=0.05)
        assert rep["analytic_weak_value"] == -3.0

    def test_g_sweep_residuals_decrease(self, tmp_path, capsys):
        out = tmp_path / "sweep.json"
        code, _, _ = run(
            capsys,
            "simulate", "--mean-n", "0", "--q", "2",
            "--g-sweep", "0.2", "0.1", "0.05", "--out", str(out),
        )
        assert code == 0
        residuals = [r["residual"] for r in json.loads(out.read_text())["data"]]
        assert all(b <= a + 1e-6 for a, b in zip(residuals, residuals[1:]))


class TestVerify:
    def test_all_pass(self, capsys):
        code, out, _ = run(capsys, "verify")
        assert code == 0
        assert "all checks passed" in out
        assert "FAIL" not in out

    def test_injected_fault_named(self, capsys):
        code, out, _ = run(capsys, "verify", "--inject-fault", "hamiltonian_identity")
        assert code == 1
        assert "FAIL hamiltonian_identity" in out
