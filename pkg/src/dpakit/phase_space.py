"""Wigner function of the dynamical vacuum and its phase-space geometry.

The Wigner function evolves by the classical flow of the quadratic
Hamiltonian: a rotation at the carrier frequency composed with a squeeze at
the coupling rate.  Contours of the quadratic exponent Q are ellipses whose
area is conserved (the full map has unit Jacobian in rotated coordinates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ermakov import evolve_closed_form
from .model import InitialData, ModelParams, Variant
from .statistics import quadrature_variances


def rotate(x, p, t: float, omega: float):
    """Rotating-frame coordinates X = om x cos wt - p sin wt, P = om x sin wt + p cos wt.

    A proper rotation of (om x, p): X^2 + P^2 = om^2 x^2 + p^2 for all t.
    """
    c, s = math.cos(omega * t), math.sin(omega * t)
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    return omega * x * c - p * s, omega * x * s + p * c


def unrotate(x_rot, p_rot, t: float, omega: float):
    """Inverse of `rotate`."""
    c, s = math.cos(omega * t), math.sin(omega * t)
    x_rot = np.asarray(x_rot, dtype=float)
    p_rot = np.asarray(p_rot, dtype=float)
    return (x_rot * c + p_rot * s) / omega, -x_rot * s + p_rot * c


def squeeze_coords(x_rot, p_rot, t: float, params: ModelParams):
    """Squeezing coordinates (U, V) from the rotated pair; unit Jacobian.

    Pump phase 0:    U = [(X-P) e^{lt} + (X+P) e^{-lt}]/2,
                     V = [(P-X) e^{lt} + (X+P) e^{-lt}]/2;
    pump phase pi/2: U = X e^{-lt}, V = P e^{lt}.
    """
    lam = params.lam
    x_rot = np.asarray(x_rot, dtype=float)
    p_rot = np.asarray(p_rot, dtype=float)
    ep, em = math.exp(lam * t), math.exp(-lam * t)
    if params.variant is Variant.PHI_ZERO:
        u = ((x_rot - p_rot) * ep + (x_rot + p_rot) * em) / 2
        v = ((p_rot - x_rot) * ep + (x_rot + p_rot) * em) / 2
    else:
        u = x_rot * em
        v = p_rot * ep
    return u, v


def unsqueeze_coords(u, v, t: float, params: ModelParams):
    """Inverse of `squeeze_coords`."""
    lam = params.lam
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    ep, em = math.exp(lam * t), math.exp(-lam * t)
    if params.variant is Variant.PHI_ZERO:
        x_rot = ((u + v) * ep + (u - v) * em) / 2
        p_rot = ((u + v) * ep - (u - v) * em) / 2
    else:
        x_rot = u * ep
        p_rot = v * em
    return x_rot, p_rot


def quadratic_exponent(u, v, init: InitialData, omega: float):
    """Q(U, V) of the dynamical vacuum (positive quadratic form)."""
    a0, b0 = init.alpha0, init.beta0
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return (
        b0**2 * (b0 * u + omega * init.eps0) ** 2
        + (2 * a0 * u - omega * (v - init.delta0)) ** 2
    ) / (b0**2 * omega**2)


def wigner_vacuum(init: InitialData, t: float, params: ModelParams, x, p):
    """W(x, p, t) = exp(-Q(U, V))/pi for the n = 0 dynamical vacuum state.

    The 1/pi prefactor normalizes the phase-space integral to one for every
    omega (validated pointwise against the Wigner transform of psi_0).
    """
    x_rot, p_rot = rotate(x, p, t, params.omega)
    u, v = squeeze_coords(x_rot, p_rot, t, params)
    return np.exp(-quadratic_exponent(u, v, init, params.omega)) / math.pi


@dataclass(frozen=True)
class WignerGrid:
    """Sampled Wigner values on a rectangular (x, p) grid."""

    x_min: float
    x_max: float
    p_min: float
    p_max: float
    num_x: int
    num_p: int
    values: np.ndarray
    t: float

    def x_points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.num_x)

    def p_points(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.num_p)

    def _weights(self, n: int, h: float) -> np.ndarray:
        w = np.ones(n)
        w[1:-1:2] = 4.0
        w[2:-2:2] = 2.0
        return w * h / 3

    def integral(self) -> float:
        wx = self._weights(self.num_x, (self.x_max - self.x_min) / (self.num_x - 1))
        wp = self._weights(self.num_p, (self.p_max - self.p_min) / (self.num_p - 1))
        return float(wx @ self.values @ wp)

    def marginal_x(self) -> np.ndarray:
        wp = self._weights(self.num_p, (self.p_max - self.p_min) / (self.num_p - 1))
        return self.values @ wp

    def marginal_p(self) -> np.ndarray:
        wx = self._weights(self.num_x, (self.x_max - self.x_min) / (self.num_x - 1))
        return wx @ self.values


def wigner_grid(
    init: InitialData,
    t: float,
    params: ModelParams,
    num_x: int = 513,
    num_p: int = 513,
    span: float = 8.0,
) -> WignerGrid:
    """Sample the closed-form Wigner function on [-span sigma, span sigma]^2.

    The half-widths follow the state's instantaneous variances, so the
    Gaussian tails are negligible at the boundary for the default span.
    """
    st = evolve_closed_form(init, t, params)
    sigma_p, sigma_q, _ = quadrature_variances(st, 0)
    mean_q = -st.eps / st.beta
    mean_p = st.delta - 2 * st.alpha * st.eps / st.beta
    half_x = span * math.sqrt(sigma_q)
    half_p = span * math.sqrt(sigma_p)
    x = np.linspace(mean_q - half_x, mean_q + half_x, num_x)
    p = np.linspace(mean_p - half_p, mean_p + half_p, num_p)
    values = wigner_vacuum(init, t, params, x[:, None], p[None, :])
    return WignerGrid(
        x_min=x[0], x_max=x[-1], p_min=p[0], p_max=p[-1],
        num_x=num_x, num_p=num_p, values=values, t=t,
    )


def contour_q(
    level: float,
    t: float,
    init: InitialData,
    params: ModelParams,
    num_points: int = 256,
) -> np.ndarray:
    """Polyline of the contour Q(U, V) = level mapped back to (x, p).

    Returns an array of shape (num_points, 2); the curve closes implicitly.
    The enclosed area is pi * level * beta0-independent / omega... constant in
    time (unit-Jacobian squeeze composed with the 1/omega-Jacobian inverse
    rotation), which the tests assert via the shoelace formula.
    """
    if level <= 0:
        raise ValueError("contour level must be positive")
    om = params.omega
    a0, b0 = init.alpha0, init.beta0
    theta = np.linspace(0.0, 2 * math.pi, num_points, endpoint=False)
    root = math.sqrt(level)
    u_center = -om * init.eps0 / b0
    v_center = init.delta0 - 2 * a0 * init.eps0 / b0
    # parametrize the ellipse from the two squared terms of Q
    du = om * root * np.cos(theta) / b0
    dv = 2 * a0 * root * np.cos(theta) / b0 - b0 * root * np.sin(theta)
    u = u_center + du
    v = v_center + dv
    x_rot, p_rot = unsqueeze_coords(u, v, t, params)
    x, p = unrotate(x_rot, p_rot, t, params.omega)
    return np.column_stack([x, p])


def polyline_area(points: np.ndarray) -> float:
    """Absolute shoelace area of a closed polyline given without repeated endpoint."""
    x, y = points[:, 0], points[:, 1]
    return 0.5 * abs(float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)))
