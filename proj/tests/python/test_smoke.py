import json
import math
import os
import subprocess

import pytest

import casimir

AU_PLASMA = {"permittivity": {"model": "plasma", "plasma_frequency_eV": 9.0}}
AU_DRUDE = {"permittivity": {"model": "drude", "plasma_frequency_eV": 9.0, "relaxation_eV": 0.035}}
CO = {
    "permittivity": {"model": "drude", "plasma_frequency_eV": 3.97, "relaxation_eV": 0.036},
    "magnetic": {"mu0": 70, "curie_temperature_K": 1388},
}


def test_eval_eps_drude():
    xi = 0.5
    assert casimir.eval_eps(AU_DRUDE, xi) == pytest.approx(1 + 81 / (xi * (xi + 0.035)))


def test_fresnel_zero_frequency():
    tm, te = casimir.fresnel(CO, 0.0, 0.01, 0)
    assert tm == 1.0
    assert te == pytest.approx(69 / 71)


def test_ideal_metal_pressure():
    p = casimir.pressure(
        {"permittivity": {"model": "plasma", "plasma_frequency_eV": 1e4}},
        {"permittivity": {"model": "plasma", "plasma_frequency_eV": 1e4}},
        1000.0,
        temperature=1.0,
    )
    assert p["value"] == pytest.approx(casimir.ideal_metal_pressure(1000.0), rel=5e-3)
    assert p["terms_used"] > 0


def test_pressure_is_energy_derivative():
    a, h = 800.0, 0.5
    f = lambda x: casimir.free_energy(AU_DRUDE, CO, x, tail_tol=1e-12, quad_rel_tol=1e-12)["value"]
    dfda = (f(a + h) - f(a - h)) / (2 * h) * 1e9
    p = casimir.pressure(AU_DRUDE, CO, a, tail_tol=1e-12, quad_rel_tol=1e-12)["value"]
    assert p == pytest.approx(-dfda, rel=1e-5)


def test_lateral_force_is_odd():
    args = dict(a_nm=124.7, radius_um=97.0, amplitude_plate=85.4, amplitude_sphere=13.7, period=574.7)
    f = casimir.lateral_force(AU_DRUDE, phase=1.0, **args)["value"]
    g = casimir.lateral_force(AU_DRUDE, phase=-1.0, **args)["value"]
    assert f == pytest.approx(-g, rel=1e-12)
    assert casimir.lateral_force(AU_DRUDE, phase=0.0, **args)["value"] == 0.0


def test_kramers_kronig_drude():
    omega = [1e-2 * (1e5 ** (i / 299)) for i in range(300)]
    im = [81 * 0.035 / (w * (w * w + 0.035**2)) for w in omega]
    eps = casimir.kramers_kronig(omega, im, [0.1, 1.0], drude_plasma=9.0, drude_relaxation=0.035)
    for x, e in zip([0.1, 1.0], eps):
        assert e == pytest.approx(1 + 81 / (x * (x + 0.035)), rel=5e-3)


def test_casimir_polder_classical_limit():
    alpha = 47.3e-3  # nm^3
    r = casimir.casimir_polder({"permittivity": {"model": "plasma", "plasma_frequency_eV": 1e4}}, alpha, 20000.0)
    kt = 1.380649e-23 * 300
    expected = -kt * alpha * 1e-27 / (4 * (2e-5) ** 3)
    assert r["free_energy"]["value"] == pytest.approx(expected, rel=1e-3)


def test_errors_map_to_python_exceptions():
    with pytest.raises(casimir.ConfigError):
        casimir.eval_eps({"permittivity": {"model": "drude", "relaxation_eV": 0.03}}, 1.0)
    with pytest.raises(casimir.NumericalError):
        casimir.lateral_force(AU_DRUDE, 100.0, 97.0, 85.4, 85.4, 500.0, 2.0)


def test_repulsion_check():
    const = lambda e: {"permittivity": {"model": "dielectric", "oscillators": [
        {"strength_eV2": (e - 1) * 1e8, "frequency_eV": 1e4, "damping_eV": 0}]}}
    holds, bad = casimir.repulsion_check(const(2), const(1), const(3), [0.1, 1.0])
    assert holds and bad == []


@pytest.mark.skipif("CASIMIR_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["CASIMIR_CLI"]
    good = tmp_path / "p.json"
    good.write_text(json.dumps({
        "version": 1,
        "materials": {"co": CO},
        "plates": ["co", "co"],
        "temperature_K": 300,
        "sweep": {"axis": "a", "start": 0.5, "stop": 6, "count": 5, "spacing": "log"},
    }))
    out = tmp_path / "p.csv"
    r = subprocess.run([cli, "pressure", "--config", str(good), "--out", str(out)], capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
    assert out.read_text().splitlines()[0] == "a_um,P_Pa,P_over_P0,eta_percent"
    meta = json.loads((tmp_path / "p.meta.json").read_text())
    assert meta["scenario"] == "pressure"

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"version": 1, "materials": {"co": {"permittivity": {"model": "drude"}}},
                               "plates": ["co", "co"], "temperature_K": 300,
                               "sweep": {"axis": "a", "start": 1, "stop": 2, "count": 2}}))
    r = subprocess.run([cli, "pressure", "--config", str(bad)], capture_output=True, text=True, cwd=tmp_path)
    assert r.returncode == 2
    assert "plasma_frequency_eV" in r.stderr

    stiff = tmp_path / "stiff.json"
    stiff.write_text(json.dumps({"version": 1, "materials": {"au": AU_PLASMA}, "plates": ["au", "au"],
                                 "temperature_K": 300, "numerics": {"tail_tol": 1e-12, "max_terms": 3},
                                 "sweep": {"axis": "a", "start": 0.1, "stop": 0.1, "count": 1}}))
    r = subprocess.run([cli, "pressure", "--config", str(stiff)], capture_output=True, text=True, cwd=tmp_path)
    assert r.returncode == 3
    assert "l=3" in r.stderr

    r = subprocess.run([cli, "warp-drive", "--config", str(good)], capture_output=True, text=True)
    assert r.returncode == 2
