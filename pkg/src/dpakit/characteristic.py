"""Closed-form fundamental solutions of the characteristic (Ince-type) equations.

Each model's classical equation of motion is a second-order linear ODE with
trigonometric coefficients.  The pair (mu_0, mu_1) used throughout the kit is
normalized by mu_0(0) = 0, mu_1(0) = 1, with mu_0'(0) = 2 a(0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ModelParams, Variant, hamiltonian_coeffs


@dataclass(frozen=True)
class MuPair:
    """Fundamental solutions and their analytic first derivatives at time t."""

    mu0: float
    mu1: float
    dmu0: float
    dmu1: float
    t: float


def mu_pair(t: float, params: ModelParams) -> MuPair:
    """Closed forms of mu_0, mu_1 and their derivatives (no differencing)."""
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    om, lam = params.omega, params.lam
    ch, sh = math.cosh(lam * t), math.sinh(lam * t)
    c, s = math.cos(om * t), math.sin(om * t)
    if params.variant is Variant.PHI_ZERO:
        mu0 = (sh * c + ch * s) / om
        mu1 = ch * c + sh * s
        dmu0 = ((lam + om) * ch * c + (lam - om) * sh * s) / om
        dmu1 = (lam + om) * sh * c + (lam - om) * ch * s
    else:
        ep, em = math.exp(lam * t), math.exp(-lam * t)
        mu0 = em * s / om
        mu1 = ep * c - (lam / om) * em * s
        dmu0 = em * (om * c - lam * s) / om
        dmu1 = ep * (lam * c - om * s) - lam * em * (om * c - lam * s) / om
    return MuPair(mu0=mu0, mu1=mu1, dmu0=dmu0, dmu1=dmu1, t=t)


def mu_second_derivatives(t: float, params: ModelParams) -> tuple[float, float]:
    """Analytic second derivatives (mu_0'', mu_1'')."""
    om, lam = params.omega, params.lam
    ch, sh = math.cosh(lam * t), math.sinh(lam * t)
    c, s = math.cos(om * t), math.sin(om * t)
    if params.variant is Variant.PHI_ZERO:
        k_plus = lam**2 + 2 * lam * om - om**2
        k_minus = lam**2 - 2 * lam * om - om**2
        ddmu0 = (k_plus * sh * c + k_minus * ch * s) / om
        ddmu1 = k_plus * ch * c + k_minus * sh * s
    else:
        ep, em = math.exp(lam * t), math.exp(-lam * t)
        ddmu0 = em * ((lam**2 - om**2) * s - 2 * lam * om * c) / om
        ddmu1 = ep * ((lam**2 - om**2) * c - 2 * lam * om * s) - (lam / om) * em * (
            (lam**2 - om**2) * s - 2 * lam * om * c
        )
    return ddmu0, ddmu1


def wronskian(t: float, params: ModelParams) -> float:
    """Wronskian of (mu_0, mu_1), oriented to match the standard closed forms.

    Pump phase 0:    -1 - (lam/om) cos 2wt  (= mu0 mu1' - mu1 mu0')
    Pump phase pi/2:  1 - (lam/om) sin 2wt  (= mu1 mu0' - mu0 mu1')
    The per-variant orientation keeps the conventional signs of both values.
    """
    p = mu_pair(t, params)
    w = p.mu0 * p.dmu1 - p.mu1 * p.dmu0
    return w if params.variant is Variant.PHI_ZERO else -w


def wronskian_closed_form(t: float, params: ModelParams) -> float:
    """The closed-form target value of wronskian(t)."""
    om, lam = params.omega, params.lam
    if params.variant is Variant.PHI_ZERO:
        return -1.0 - (lam / om) * math.cos(2 * om * t)
    return 1.0 - (lam / om) * math.sin(2 * om * t)


def ince_residual(t: float, params: ModelParams) -> tuple[float, float]:
    """Residuals of mu_0, mu_1 in the characteristic equation (should vanish).

    The equation reads  A(t) mu'' + B(t) mu' + C(t) mu = 0 with

      phase 0:    A = om + lam cos 2wt, B = 2 lam om sin 2wt,
                  C = om(om^2 - 3 lam^2) - lam(om^2 + lam^2) cos 2wt
      phase pi/2: A = om - lam sin 2wt, B = 2 lam om cos 2wt,
                  C = om(om^2 - 3 lam^2) + lam(om^2 + lam^2) sin 2wt
    """
    om, lam = params.omega, params.lam
    p = mu_pair(t, params)
    dd0, dd1 = mu_second_derivatives(t, params)
    if params.variant is Variant.PHI_ZERO:
        big_a = om + lam * math.cos(2 * om * t)
        big_b = 2 * lam * om * math.sin(2 * om * t)
        big_c = om * (om**2 - 3 * lam**2) - lam * (om**2 + lam**2) * math.cos(2 * om * t)
    else:
        big_a = om - lam * math.sin(2 * om * t)
        big_b = 2 * lam * om * math.cos(2 * om * t)
        big_c = om * (om**2 - 3 * lam**2) + lam * (om**2 + lam**2) * math.sin(2 * om * t)
    r0 = big_a * dd0 + big_b * p.dmu0 + big_c * p.mu0
    r1 = big_a * dd1 + big_b * p.dmu1 + big_c * p.mu1
    return r0, r1


def characteristic_ode_coeffs(params: ModelParams):
    """Normalized ODE coefficients (p, q) with mu'' + p mu' + q mu = 0.

    Used by the independent integration oracle; shares nothing with the
    closed-form solutions above except the model parameters.
    """
    om, lam = params.omega, params.lam

    if params.variant is Variant.PHI_ZERO:

        def p_coeff(t: float) -> float:
            return 2 * lam * om * math.sin(2 * om * t) / (om + lam * math.cos(2 * om * t))

        def q_coeff(t: float) -> float:
            return (om * (om**2 - 3 * lam**2) - lam * (om**2 + lam**2) * math.cos(2 * om * t)) / (
                om + lam * math.cos(2 * om * t)
            )

    else:

        def p_coeff(t: float) -> float:
            return 2 * lam * om * math.cos(2 * om * t) / (om - lam * math.sin(2 * om * t))

        def q_coeff(t: float) -> float:
            return (om * (om**2 - 3 * lam**2) + lam * (om**2 + lam**2) * math.sin(2 * om * t)) / (
                om - lam * math.sin(2 * om * t)
            )

    return p_coeff, q_coeff


def mu_initial_conditions(params: ModelParams) -> tuple[tuple[float, float], tuple[float, float]]:
    """(mu, mu') at t = 0 for mu_0 and mu_1: ((0, 2a(0)), (1, 0))."""
    a0 = hamiltonian_coeffs(0.0, params).a
    return (0.0, 2 * a0), (1.0, 0.0)
