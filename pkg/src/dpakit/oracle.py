"""Independent numerical machinery used to verify the closed forms.

Everything here is deliberately implementation-independent of the modules it
checks: plain RK4 for ODEs, composite Simpson quadrature for integrals, finite
differences only in time for the Schroedinger residual, and the analytic
complex Gaussian integral for oscillatory kernel compositions.  None of these
routines is used to produce primary outputs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .model import InitialData, ModelParams, hamiltonian_coeffs


@dataclass(frozen=True)
class GridSpec:
    """Uniform quadrature grid; num_points must be odd for composite Simpson."""

    lower: float
    upper: float
    num_points: int

    def __post_init__(self) -> None:
        if self.num_points < 3 or self.num_points % 2 == 0:
            raise ValueError("num_points must be odd and >= 3")
        if not self.upper > self.lower:
            raise ValueError("need upper > lower")

    @property
    def step(self) -> float:
        return (self.upper - self.lower) / (self.num_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.lower, self.upper, self.num_points)

    def weights(self) -> np.ndarray:
        w = np.ones(self.num_points)
        w[1:-1:2] = 4.0
        w[2:-2:2] = 2.0
        return w * (self.step / 3.0)


def rk4_integrate(
    p_coeff: Callable[[float], float],
    q_coeff: Callable[[float], float],
    y0: float,
    dy0: float,
    t0: float,
    t1: float,
    steps: int,
) -> tuple[float, float]:
    """Classical RK4 for y'' + p(t) y' + q(t) y = 0, returning (y, y') at t1.

    Global error is O(h^4); `steps` >= 1 required.  Raises on divergence.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    h = (t1 - t0) / steps
    y, v = float(y0), float(dy0)
    t = t0

    def f(tt: float, yy: float, vv: float) -> tuple[float, float]:
        return vv, -p_coeff(tt) * vv - q_coeff(tt) * yy

    for _ in range(steps):
        k1y, k1v = f(t, y, v)
        k2y, k2v = f(t + h / 2, y + h / 2 * k1y, v + h / 2 * k1v)
        k3y, k3v = f(t + h / 2, y + h / 2 * k2y, v + h / 2 * k2v)
        k4y, k4v = f(t + h, y + h * k3y, v + h * k3v)
        y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
        v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        t += h
        if not (math.isfinite(y) and math.isfinite(v)):
            raise RuntimeError(f"RK4 state diverged at t={t}")
    return y, v


def rk4_system(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    t0: float,
    t1: float,
    steps: int,
) -> np.ndarray:
    """RK4 for a general first-order system y' = rhs(t, y)."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    y = np.array(y0, dtype=float)
    h = (t1 - t0) / steps
    t = t0
    for _ in range(steps):
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + h / 2 * k1)
        k3 = rhs(t + h / 2, y + h / 2 * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
        if not np.all(np.isfinite(y)):
            raise RuntimeError(f"RK4 state diverged at t={t}")
    return y


_DECAY_TOL = 1e-12


def _check_decay(values: np.ndarray, label: str) -> None:
    edge = max(abs(values[0]), abs(values[-1]))
    peak = np.abs(values).max()
    if peak > 0 and edge > _DECAY_TOL * peak:
        warnings.warn(
            f"{label}: integrand does not decay below {_DECAY_TOL:g} at the grid edges "
            f"(edge/peak = {edge/peak:.2e}); result may be truncated",
            RuntimeWarning,
            stacklevel=3,
        )


def overlap(f: np.ndarray, g: np.ndarray, grid: GridSpec) -> complex:
    """Composite-Simpson inner product  int conj(f(x)) g(x) dx  on `grid`."""
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape != (grid.num_points,) or g.shape != (grid.num_points,):
        raise ValueError("sampled functions must match the grid")
    _check_decay(f, "overlap")
    _check_decay(g, "overlap")
    return complex(np.sum(grid.weights() * np.conj(f) * g))


def wigner_transform(psi: np.ndarray, grid: GridSpec, x: float, p: float) -> float:
    """Wigner value (1/pi) int conj(psi(x+y)) psi(x-y) e^{2ipy} dy by Simpson.

    The y-quadrature reuses the grid step of psi, so when x coincides with a
    grid node the samples psi(x +/- y) are exact grid values (no
    interpolation); otherwise the real and imaginary parts are linearly
    interpolated.  psi is taken as zero outside the grid (decay assumed).
    """
    psi = np.asarray(psi, dtype=complex)
    _check_decay(psi, "wigner_transform")
    xs = grid.points()
    h = grid.step
    k_half = (grid.num_points - 1) // 2
    offsets = np.arange(-k_half, k_half + 1)
    y = offsets * h
    w = np.ones(y.size)
    w[1:-1:2] = 4.0
    w[2:-2:2] = 2.0
    w *= h / 3.0

    j = round((x - grid.lower) / h)
    if 0 <= j < grid.num_points and abs(grid.lower + j * h - x) <= 1e-12 * (1.0 + abs(x)):

        def sample(sign: int) -> np.ndarray:
            idx = j + sign * offsets
            vals = np.zeros(y.size, dtype=complex)
            ok = (idx >= 0) & (idx < grid.num_points)
            vals[ok] = psi[idx[ok]]
            return vals

        plus, minus = sample(+1), sample(-1)
    else:

        def interp(pts: np.ndarray) -> np.ndarray:
            re = np.interp(pts, xs, psi.real, left=0.0, right=0.0)
            im = np.interp(pts, xs, psi.imag, left=0.0, right=0.0)
            return re + 1j * im

        plus, minus = interp(x + y), interp(x - y)

    integrand = np.conj(plus) * minus * np.exp(2j * p * y)
    return float(np.real(np.sum(w * integrand))) / math.pi


def complex_gaussian_integral(a: complex, b: complex = 0.0, c: complex = 0.0) -> complex:
    """Analytic  int exp(i(a z^2 + b z + c)) dz  = sqrt(pi i / a) exp(i(c - b^2/(4a))).

    The square root is the principal branch, continuous from Im a > 0; the
    integral is Fresnel-convergent for real nonzero a and absolutely
    convergent for Im a > 0.  Im a < 0 or a = 0 are rejected.
    """
    a = complex(a)
    if a == 0:
        raise ValueError("degenerate Gaussian: a must be nonzero")
    if a.imag < 0:
        raise ValueError("integral diverges for Im a < 0")
    return np.sqrt(1j * math.pi / a) * np.exp(1j * (c - b * b / (4 * a)))


def tdse_residual(
    init: InitialData,
    t: float,
    params: ModelParams,
    grid: GridSpec | None = None,
    n: int | None = None,
    dt: float = 1e-4,
) -> float:
    """Relative residual of the closed-form wavefunction in the Schroedinger equation.

    Computes max |i d_t psi - (-a d_xx + b x^2 - i d (2 x d_x + 1)) psi| / max|psi|
    over the grid interior.  Spatial derivatives come from the analytic
    wavefunction formulas; only d_t is approximated (central difference with
    step `dt`), so the test is independent of the time-derivative algebra of
    the six-parameter solution it checks.
    """
    from .ermakov import evolve_closed_form
    from .fock import wavefunction_with_derivatives

    n_idx = init.n if n is None else n
    if grid is None:
        om, lam = params.omega, params.lam
        halfwidth = 12.0 / math.sqrt(om) * max(1.0, 1.0 / abs(init.beta0), math.exp(lam * abs(t)))
        grid = GridSpec(-halfwidth, halfwidth, 4097)
    x = grid.points()

    psi, dpsi, ddpsi = wavefunction_with_derivatives(init, t, params, x, n=n_idx)
    psi_plus = wavefunction_with_derivatives(init, t + dt, params, x, n=n_idx)[0]
    psi_minus = wavefunction_with_derivatives(init, t - dt, params, x, n=n_idx)[0]
    dpsi_dt = (psi_plus - psi_minus) / (2 * dt)

    co = hamiltonian_coeffs(t, params)
    h_psi = -co.a * ddpsi + co.b * x**2 * psi - 1j * co.d * (2 * x * dpsi + psi)
    residual = np.abs(1j * dpsi_dt - h_psi)[1:-1]
    return float(residual.max() / np.abs(psi).max())
