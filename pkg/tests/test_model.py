import math

import numpy as np
import pytest

from dpakit import HamiltonianCoeffs, InitialData, ModelParams, PhysicsDomainError, Variant, hamiltonian_coeffs


def test_coeffs_phi0_at_zero():
    p = ModelParams(1.0, 0.25, Variant.PHI_ZERO)
    c = hamiltonian_coeffs(0.0, p)
    assert c == HamiltonianCoeffs(a=0.625, b=0.375, d=0.0)


def test_coeffs_phi90_at_zero():
    p = ModelParams(1.0, 0.25, Variant.PHI_HALF_PI)
    c = hamiltonian_coeffs(0.0, p)
    assert c.a == pytest.approx(0.5)
    assert c.b == pytest.approx(0.5)
    assert c.d == pytest.approx(0.125)


def test_harmonic_limit():
    for variant in Variant:
        p = ModelParams(2.0, 0.0, variant)
        for t in (0.0, 0.7, 3.1):
            c = hamiltonian_coeffs(t, p)
            assert c.a == pytest.approx(0.5)
            assert c.b == pytest.approx(2.0)
            assert c.d == pytest.approx(0.0)


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("omega,lam", [(1.0, 0.25), (2.0, 0.5)])
def test_pointwise_product_identities(variant, omega, lam):
    p = ModelParams(omega, lam, variant)
    for t in np.linspace(0.0, 7.0, 40):
        c = hamiltonian_coeffs(float(t), p)
        trig = math.cos(2 * omega * t) if variant is Variant.PHI_ZERO else math.sin(2 * omega * t)
        cotrig = math.sin(2 * omega * t) if variant is Variant.PHI_ZERO else math.cos(2 * omega * t)
        assert c.a * c.b == pytest.approx((omega**2 - lam**2 * trig**2) / 4, abs=1e-13)
        assert c.d**2 == pytest.approx(lam**2 * cotrig**2 / 4, abs=1e-13)


@pytest.mark.parametrize("variant", list(Variant))
def test_periodicity(variant):
    p = ModelParams(1.3, 0.4, variant)
    period = math.pi / p.omega
    for t in (0.1, 0.9, 2.2):
        c1 = hamiltonian_coeffs(t, p)
        c2 = hamiltonian_coeffs(t + period, p)
        assert c1.a == pytest.approx(c2.a, abs=1e-12)
        assert c1.b == pytest.approx(c2.b, abs=1e-12)
        assert c1.d == pytest.approx(c2.d, abs=1e-12)


def test_kinetic_coefficient_positive():
    p = ModelParams(1.0, 0.999, Variant.PHI_ZERO)
    assert min(hamiltonian_coeffs(float(t), p).a for t in np.linspace(0, 10, 500)) > 0


def test_validation_errors():
    with pytest.raises(PhysicsDomainError):
        ModelParams(1.0, 1.0, Variant.PHI_ZERO)  # lambda == omega rejected
    with pytest.raises(PhysicsDomainError):
        ModelParams(1.0, 1.5, Variant.PHI_HALF_PI)  # same guard for symmetry
    with pytest.raises(PhysicsDomainError):
        ModelParams(-1.0, 0.1, Variant.PHI_ZERO)
    with pytest.raises(PhysicsDomainError):
        ModelParams(1.0, -0.1, Variant.PHI_ZERO)
    with pytest.raises(PhysicsDomainError):
        InitialData(beta0=0.0)
    with pytest.raises(PhysicsDomainError):
        InitialData(beta0=1.0, n=-1)
    with pytest.raises(ValueError):
        hamiltonian_coeffs(math.inf, ModelParams(1.0, 0.25, Variant.PHI_ZERO))
