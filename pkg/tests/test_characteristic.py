import math

import numpy as np
import pytest

from dpakit import ModelParams, Variant, ince_residual, mu_pair, wronskian, wronskian_closed_form
from dpakit.characteristic import characteristic_ode_coeffs, mu_initial_conditions
from dpakit.oracle import rk4_integrate

PARAM_SETS = [(1.0, 0.0), (1.0, 0.1), (1.0, 0.25), (2.0, 0.5)]


@pytest.mark.parametrize("variant", list(Variant))
def test_mu_at_zero(variant):
    p = ModelParams(1.0, 0.25, variant)
    pair = mu_pair(0.0, p)
    assert pair.mu0 == 0.0
    assert pair.mu1 == 1.0


def test_mu1_at_pi_phi0():
    # RK4-derived frozen value; equals -cosh(pi/4) analytically
    p = ModelParams(1.0, 0.25, Variant.PHI_ZERO)
    assert mu_pair(math.pi, p).mu1 == pytest.approx(-1.3246090892520057, abs=1e-7)
    pc, qc = characteristic_ode_coeffs(p)
    _, ic1 = mu_initial_conditions(p)
    y1, _ = rk4_integrate(pc, qc, *ic1, 0.0, math.pi, 40_000)
    assert mu_pair(math.pi, p).mu1 == pytest.approx(y1, abs=1e-8)


def test_mu0_at_half_pi_phi90():
    # RK4-derived frozen value; equals exp(-pi/8) analytically
    p = ModelParams(1.0, 0.25, Variant.PHI_HALF_PI)
    assert mu_pair(math.pi / 2, p).mu0 == pytest.approx(0.6752319066557773, abs=1e-7)
    pc, qc = characteristic_ode_coeffs(p)
    ic0, _ = mu_initial_conditions(p)
    y0, _ = rk4_integrate(pc, qc, *ic0, 0.0, math.pi / 2, 40_000)
    assert mu_pair(math.pi / 2, p).mu0 == pytest.approx(y0, abs=1e-8)


def test_mu_derivatives_match_differencing():
    h = 1e-6
    for variant in Variant:
        p = ModelParams(1.3, 0.3, variant)
        for t in (0.4, 1.7):
            pair = mu_pair(t, p)
            num0 = (mu_pair(t + h, p).mu0 - mu_pair(t - h, p).mu0) / (2 * h)
            num1 = (mu_pair(t + h, p).mu1 - mu_pair(t - h, p).mu1) / (2 * h)
            assert pair.dmu0 == pytest.approx(num0, abs=1e-8)
            assert pair.dmu1 == pytest.approx(num1, abs=1e-8)


def test_wronskian_values():
    p0 = ModelParams(1.0, 0.25, Variant.PHI_ZERO)
    assert wronskian(0.0, p0) == pytest.approx(-1.25, abs=1e-14)
    p90 = ModelParams(1.0, 0.25, Variant.PHI_HALF_PI)
    assert wronskian(math.pi / 4, p90) == pytest.approx(0.75, abs=1e-13)
    ph = ModelParams(1.0, 0.0, Variant.PHI_ZERO)
    for t in (0.3, 1.9, 4.4):
        assert wronskian(t, ph) == pytest.approx(-1.0, abs=1e-13)


@pytest.mark.parametrize("omega,lam", PARAM_SETS)
@pytest.mark.parametrize("variant", list(Variant))
def test_wronskian_closed_form_sweep(omega, lam, variant):
    p = ModelParams(omega, lam, variant)
    for t in np.linspace(0.0, 2 * math.pi, 200):
        w = wronskian(float(t), p)
        ref = wronskian_closed_form(float(t), p)
        assert abs(w - ref) / abs(ref) < 1e-12


@pytest.mark.parametrize("omega,lam", PARAM_SETS)
@pytest.mark.parametrize("variant", list(Variant))
def test_ince_residual_sweep(omega, lam, variant):
    p = ModelParams(omega, lam, variant)
    for t in np.linspace(0.0, 4 * math.pi, 1000):
        r0, r1 = ince_residual(float(t), p)
        pair = mu_pair(float(t), p)
        bound = 1e-9 * (1 + max(abs(pair.mu0), abs(pair.mu1)) * omega**3)
        assert abs(r0) < bound and abs(r1) < bound


def test_ince_residual_examples():
    r0, r1 = ince_residual(0.7, ModelParams(1.0, 0.25, Variant.PHI_ZERO))
    assert abs(r0) < 1e-9 and abs(r1) < 1e-9
    r0, r1 = ince_residual(1.3, ModelParams(2.0, 0.5, Variant.PHI_HALF_PI))
    assert abs(r0) < 1e-9 and abs(r1) < 1e-9
    # harmonic limit: residual of sin/cos in mu'' + om^2 mu = 0 is exactly zero-ish
    r0, r1 = ince_residual(0.9, ModelParams(1.0, 0.0, Variant.PHI_ZERO))
    assert abs(r0) < 1e-15 and abs(r1) < 1e-15


@pytest.mark.parametrize("variant", list(Variant))
def test_rk4_oracle_agreement(variant):
    p = ModelParams(1.0, 0.25, variant)
    pc, qc = characteristic_ode_coeffs(p)
    ic0, ic1 = mu_initial_conditions(p)
    t_end = 2 * math.pi
    y0, _ = rk4_integrate(pc, qc, *ic0, 0.0, t_end, 100_000)
    y1, _ = rk4_integrate(pc, qc, *ic1, 0.0, t_end, 100_000)
    ref = mu_pair(t_end, p)
    assert y0 == pytest.approx(ref.mu0, abs=1e-6)
    assert y1 == pytest.approx(ref.mu1, abs=1e-6)
