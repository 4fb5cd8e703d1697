import math

import numpy as np
import pytest

import unigrav


def test_point_mass_tensors():
    t = unigrav.tensors({"kind": "point_mass", "M": 1e-3}, (2.0, 0.0, 0.0, 0.0))
    assert t["U"][3] == pytest.approx(1.0005)
    phi = t["Phi"]
    assert phi.shape == (4, 4)
    assert np.max(np.abs(phi + phi.T)) == 0.0
    assert np.max(np.abs(t["P"] @ t["P"].T - np.eye(4))) < 1e-12


def test_lambda_si():
    assert unigrav.lambda_("si") == pytest.approx(8.617e-11, rel=1e-3)
    assert unigrav.lambda_() == pytest.approx(1.0)


def test_integrate_free_particle():
    rows = unigrav.integrate(
        {"field": "constant", "initial": {"position": [0, 0, 0], "velocity": [0.6, 0, 0]}, "dtau": 0.5, "steps": 4}
    )
    assert rows.shape == (5, 9)
    assert rows[-1, 1] == pytest.approx(1.25 * 0.6 * 2.0)
    assert np.allclose(rows[:, 5], 0.6)


def test_reports():
    rows = unigrav.cyclotron_check(1.0, 1.0, -0.5, 0.01)
    assert all(r["pass"] for r in rows)
    suite = unigrav.invariant_suite(samples=3, seed=1)
    assert {r["name"] for r in suite} >= {"antisymmetry.Phi", "gauge.S", "linearization.scaling"}
    assert all(r["pass"] for r in suite)
    peri = unigrav.perihelion_precession(1e-3, 0.2, 3, steps_per_orbit=2000)
    assert peri[0]["reference"] == pytest.approx(6 * math.pi * 1e-3 / 0.96, rel=1e-15)


def test_errors():
    with pytest.raises(unigrav.UnigravError, match="initial.velocity"):
        unigrav.integrate({"field": "point_mass", "initial": {"velocity": [1.5, 0, 0]}})
    with pytest.raises(ValueError):
        unigrav.tensors({"kind": "point_mass", "M": 1}, (0, 0, 0, 0))


def test_cli_in_process():
    code, out, err = unigrav.run_cli(["check", "--samples", "2", "--seed", "5"])
    assert code == 0 and "PASS" in out and err == ""
    assert unigrav.run_cli(["bogus"])[0] == 1
