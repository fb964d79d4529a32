"""Physical parameters and Hamiltonian coefficient functions.

Both integrable degenerate-parametric-amplifier models are quadratic
Hamiltonians

    H(t) = a(t) p^2 + b(t) q^2 + d(t) (pq + qp)

driven by a classical pump at twice the signal frequency (hbar = 1).
The two variants differ by the pump phase: 0 or pi/2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import PhysicsDomainError


class Variant(enum.Enum):
    """Pump-phase selection for the two integrable models."""

    PHI_ZERO = "phi0"
    PHI_HALF_PI = "phi90"


@dataclass(frozen=True)
class ModelParams:
    """Carrier frequency, coupling strength and pump-phase variant.

    omega > 0 and 0 <= lam < omega are enforced at construction; the upper
    bound keeps the kinetic coefficient a(t) positive at all times.
    """

    omega: float
    lam: float
    variant: Variant

    def __post_init__(self) -> None:
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise PhysicsDomainError(f"omega must be positive and finite, got {self.omega}")
        if not math.isfinite(self.lam) or self.lam < 0:
            raise PhysicsDomainError(f"lambda must be finite and >= 0, got {self.lam}")
        if self.lam >= self.omega:
            raise PhysicsDomainError(
                f"lambda={self.lam} must be smaller than omega={self.omega}; "
                "otherwise the p^2 coefficient changes sign"
            )


@dataclass(frozen=True)
class InitialData:
    """Initial values of the six-parameter state and the Fock index n.

    beta0 must be nonzero (it sets the initial Gaussian width); the
    remaining parameters are arbitrary reals describing multi-parameter
    squeezing and displacement at t = 0.
    """

    alpha0: float = 0.0
    beta0: float = 1.0
    gamma0: float = 0.0
    delta0: float = 0.0
    eps0: float = 0.0
    kappa0: float = 0.0
    n: int = 0

    def __post_init__(self) -> None:
        if self.beta0 == 0 or not math.isfinite(self.beta0):
            raise PhysicsDomainError("beta0 must be nonzero and finite")
        if self.n < 0 or self.n != int(self.n):
            raise PhysicsDomainError(f"Fock index n must be a non-negative integer, got {self.n}")
        for name in ("alpha0", "gamma0", "delta0", "eps0", "kappa0"):
            if not math.isfinite(getattr(self, name)):
                raise PhysicsDomainError(f"{name} must be finite")


def vacuum_init(params: ModelParams, n: int = 0) -> InitialData:
    """Initial data of the dynamical vacuum: alpha=0, beta^2=omega, no displacement."""
    return InitialData(alpha0=0.0, beta0=math.sqrt(params.omega), n=n)


@dataclass(frozen=True)
class HamiltonianCoeffs:
    """Coefficients (a, b, d) of H = a p^2 + b q^2 + d (pq + qp) at one time."""

    a: float
    b: float
    d: float


def hamiltonian_coeffs(t: float, params: ModelParams) -> HamiltonianCoeffs:
    """Evaluate the quadratic-Hamiltonian coefficients at time t.

    Pump phase 0:    a = (1 + (lam/om) cos 2wt)/2, b = om^2 (1 - (lam/om) cos 2wt)/2,
                     d = (lam/2) sin 2wt.
    Pump phase pi/2: cos -> -sin in a and b, d = (lam/2) cos 2wt.
    """
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    om, lam = params.omega, params.lam
    if params.variant is Variant.PHI_ZERO:
        c = math.cos(2 * om * t)
        return HamiltonianCoeffs(
            a=(1 + (lam / om) * c) / 2,
            b=om**2 * (1 - (lam / om) * c) / 2,
            d=lam * math.sin(2 * om * t) / 2,
        )
    s = math.sin(2 * om * t)
    return HamiltonianCoeffs(
        a=(1 - (lam / om) * s) / 2,
        b=om**2 * (1 + (lam / om) * s) / 2,
        d=lam * math.cos(2 * om * t) / 2,
    )
