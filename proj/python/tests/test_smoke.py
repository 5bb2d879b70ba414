import math

import numpy as np
import pytest

import susy_damp as sd


def fig1_params():
    return sd.DampingParams.from_omega0_sq(0.1, 1.01)


def test_regimes():
    assert fig1_params().regime() == "underdamped"
    assert sd.DampingParams.from_omega0(1.0, 1.0).regime() == "critical"
    assert sd.DampingParams.from_omega0_sq(1.0, 24 / 25).regime() == "overdamped"
    with pytest.raises(sd.ParameterError):
        sd.DampingParams.from_omega0(0.0, 1.0)


def test_riccati_and_blow_up():
    assert sd.h(0.5, 0.0) == 0.5
    assert abs(sd.riccati_residual(2.0, 3.0)) < 1e-15
    assert sd.blow_up_time(-0.25) == 4.0
    with pytest.raises(sd.SingularTime):
        sd.h(0.5, -2.0)
    with pytest.raises(sd.Error):
        sd.RiccatiParam(0.0)


def test_coefficient_round_trip():
    p = sd.DampingParams.from_omega0_sq(1.0, 24 / 25)
    amp, phase = sd.ab_to_amplitude_phase(p, 4.0, 1.0)
    assert amp == 4.0
    assert phase == pytest.approx(math.acosh(5 / 4), rel=1e-15)
    A, B = sd.amplitude_phase_to_ab(p, amp, phase)
    assert (A, B) == pytest.approx((4.0, 1.0), rel=1e-14)


def test_partner_mode_matches_oracle_value():
    # Reference value from the mpmath oracle in tests/oracles.
    spec = sd.ModeSpec.tilde_amp_phase(fig1_params(), 1.0, 0.0, 1.0)
    y, _, _ = spec(1.25)
    assert y == pytest.approx(-0.9611519907948291831731714, rel=1e-13)
    assert spec.family == "tilde" and spec.gamma == 1.0
    assert spec.with_gamma(None)(0.0)[0] == 1.0


def test_vectorized_evaluation_marks_singular_points():
    spec = sd.ModeSpec.tilde_amp_phase(fig1_params(), 1.0, 0.0, 0.5)
    out = spec.evaluate(np.array([-3.0, -2.0, -1.0]))
    assert out["singular"].tolist() == [False, True, False]
    assert math.isnan(out["y"][1])
    assert out["y"][0] == spec(-3.0)[0]


def test_integrator_agrees_with_closed_form():
    p = sd.DampingParams.from_omega0(1.0, 1.0)
    spec = sd.ModeSpec.critical_tilde(p, 1.0, 1.0, 1.0)
    y0, dy0, _ = spec(0.0)
    grid = np.linspace(0.0, 10.0, 101)
    ts, ys, _ = sd.integrate(p.beta, p.omega0_sq, 1.0, t0=0.0, y0=y0, dy0=dy0, grid=grid.tolist())
    exact = np.array([spec(t)[0] for t in ts])
    assert np.max(np.abs(ys - exact)) < 1e-7
    with pytest.raises(sd.SingularInterval):
        sd.integrate(p.beta, p.omega0_sq, -0.5, t0=0.0, y0=1.0, dy0=0.0, grid=[1.0, 3.0])


def test_verify_suite_passes():
    reports = sd.verify("riccati", 3)
    assert reports and all(r["passed"] for r in reports)
    assert [r["check_name"] for r in reports] == sorted(r["check_name"] for r in reports)
    assert "all" in sd.scopes()
    with pytest.raises(sd.UsageError):
        sd.verify("nope", 0)


def test_csv_outputs():
    lines = sd.figure_csv(1).splitlines()
    assert "0,1,-1,-0.5,-0.1" in lines
    assert sd.figure_csv(1) == sd.figure_csv(1)
    sweep = sd.sweep_csv([1.0, 0.5, -0.25], "blowup_time")
    assert sweep.endswith("1,-1,0\n0.5,-2,0\n-0.25,4,0\n")
