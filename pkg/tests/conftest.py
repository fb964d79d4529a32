import pytest

from dpakit import InitialData, ModelParams, Variant


@pytest.fixture
def params_phi0():
    return ModelParams(1.0, 0.25, Variant.PHI_ZERO)


@pytest.fixture
def params_phi90():
    return ModelParams(1.0, 0.25, Variant.PHI_HALF_PI)


@pytest.fixture
def both_params(params_phi0, params_phi90):
    return [params_phi0, params_phi90]


@pytest.fixture
def generic_init():
    return InitialData(alpha0=0.3, beta0=1.2, delta0=0.5, eps0=-0.4)
