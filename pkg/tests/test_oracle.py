import math

import numpy as np
import pytest

from dpakit import GridSpec, InitialData, ModelParams, Variant, complex_gaussian_integral, overlap, rk4_integrate, tdse_residual, wigner_transform
from dpakit.fock import hermite_functions, stationary_wavefunction


def test_rk4_sine():
    y, dy = rk4_integrate(lambda t: 0.0, lambda t: 1.0, 0.0, 1.0, 0.0, math.pi / 2, 10_000)
    assert y == pytest.approx(1.0, abs=1e-10)
    assert dy == pytest.approx(0.0, abs=1e-10)


def test_rk4_order_four():
    # halving h shrinks the error ~16x
    def err(steps):
        y, _ = rk4_integrate(lambda t: 0.0, lambda t: 1.0, 0.0, 1.0, 0.0, 1.0, steps)
        return abs(y - math.sin(1.0))

    e1, e2 = err(50), err(100)
    assert 12 < e1 / e2 < 20


def test_rk4_validation():
    with pytest.raises(ValueError):
        rk4_integrate(lambda t: 0.0, lambda t: 1.0, 0.0, 1.0, 0.0, 1.0, 0)


def test_gridspec_validation():
    with pytest.raises(ValueError):
        GridSpec(-1.0, 1.0, 100)  # even
    with pytest.raises(ValueError):
        GridSpec(1.0, -1.0, 101)


def test_overlap_orthonormality():
    grid = GridSpec(-12.0, 12.0, 4097)
    x = grid.points()
    fam = hermite_functions(20, x)
    for m in range(0, 21, 5):
        for k in range(0, 21, 5):
            val = overlap(fam[m] + 0j, fam[k] + 0j, grid)
            assert val == pytest.approx(1.0 if m == k else 0.0, abs=1e-10)


def test_overlap_decay_warning():
    grid = GridSpec(-1.0, 1.0, 101)
    ones = np.ones(101, dtype=complex)
    with pytest.warns(RuntimeWarning):
        overlap(ones, ones, grid)


def test_complex_gaussian_examples():
    # int exp(-z^2) dz = sqrt(pi) via a = i
    assert complex_gaussian_integral(1j) == pytest.approx(math.sqrt(math.pi), abs=1e-14)
    # Fresnel: a = 1 -> sqrt(pi) e^{i pi/4}
    val = complex_gaussian_integral(1.0)
    assert val == pytest.approx(math.sqrt(math.pi) * np.exp(1j * math.pi / 4), abs=1e-14)
    with pytest.raises(ValueError):
        complex_gaussian_integral(0.0)
    with pytest.raises(ValueError):
        complex_gaussian_integral(1.0 - 1j)


def test_complex_gaussian_against_quadrature():
    # absolutely convergent case checked by direct summation
    a, b, c = 0.5 + 1.0j, 0.3 - 0.2j, 0.1
    x = np.linspace(-40, 40, 400_001)
    f = np.exp(1j * (a * x**2 + b * x + c))
    num = np.trapz(f, x)
    assert complex_gaussian_integral(a, b, c) == pytest.approx(num, abs=1e-7)


def test_wigner_transform_ground_state():
    grid = GridSpec(-10.0, 10.0, 2049)
    x = grid.points()
    psi = stationary_wavefunction(0, x, 1.0) + 0j
    for xx, pp in [(0.0, 0.0), (0.5, -0.3), (-1.0, 0.8)]:
        ref = math.exp(-(xx**2) - pp**2) / math.pi
        assert wigner_transform(psi, grid, xx, pp) == pytest.approx(ref, abs=1e-8)


def test_tdse_residual_stationary():
    p = ModelParams(1.0, 0.0, Variant.PHI_ZERO)
    init = InitialData(alpha0=0.0, beta0=1.0, n=0)
    assert tdse_residual(init, 0.7, p) < 1e-8


def test_tdse_residual_detects_broken_phase():
    # corrupting gamma by skipping the unwrap must blow the residual up:
    # evaluate at a time where the principal branch has already jumped
    import dpakit.ermakov as erk

    p = ModelParams(1.0, 0.25, Variant.PHI_HALF_PI)
    init = InitialData(alpha0=0.3, beta0=1.2, delta0=0.5, eps0=-0.4, n=1)
    good = tdse_residual(init, 2.2, p)
    original = erk.continuous_gamma

    def principal_branch_gamma(t, params, init_data):
        val = original(t, params, init_data)
        # fold back into (-pi/4, pi/4]: simulates an unwrap-free arctan/2
        while val <= -math.pi / 4:
            val += math.pi / 2
        return val

    erk.continuous_gamma = principal_branch_gamma
    try:
        bad = tdse_residual(init, 2.2, p)
    finally:
        erk.continuous_gamma = original
    assert good < 1e-5
    assert bad > 1e-2
