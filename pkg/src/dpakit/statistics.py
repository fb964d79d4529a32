"""Quadrature variances, photon statistics and phase-space means.

All quantities refer to the n-th generalized Fock state of the evolving
mode.  Photon-number statistics are expressed through the slow invariants
A(t), B(t), C; variances of q and p through the six-parameter state.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .ermakov import ErmakovState, SlowInvariants, evolve_closed_form, slow_invariants, slow_vectors
from .model import InitialData, ModelParams, Variant


@dataclass(frozen=True)
class StatisticsReport:
    """All single-time observables for one (init, t, params, n)."""

    sigma_p: float
    sigma_q: float
    sigma_pq: float
    mean_n: float
    var_n: float
    g2: float
    mean_q: float
    mean_p: float
    t: float


def quadrature_variances(state: ErmakovState, n: int) -> tuple[float, float, float]:
    """(sigma_p, sigma_q, sigma_pq); their determinant is (n + 1/2)^2 exactly."""
    f = n + 0.5
    be2 = state.beta**2
    sigma_p = f * (4 * state.alpha**2 + be2**2) / be2
    sigma_q = f / be2
    sigma_pq = f * 2 * state.alpha / be2
    return sigma_p, sigma_q, sigma_pq


def mean_photon_number(inv: SlowInvariants, n: int, omega: float) -> float:
    """<N> = (n + 1/2) A/(2 omega) + B/(2 omega) - 1/2."""
    return (n + 0.5) * inv.A / (2 * omega) + inv.B / (2 * omega) - 0.5


def photon_number_variance(inv: SlowInvariants, n: int, omega: float) -> float:
    """Var N = (A^2 - 4 om^2)/(8 om^2) [(n+1/2)^2 + 3/4] + (A B - om^2 C)/om^2 (n+1/2).

    The linear-term combination A*B - omega^2*C is the one consistent with
    the operator expansion of the free Hamiltonian and with direct Fock-space
    moments (the variants differ only at omega != 1); for the initial vacuum
    it reduces to Var N = sinh^2(2 lam t)/2.
    """
    om2 = omega**2
    quad = (inv.A**2 - 4 * om2) / (8 * om2) * ((n + 0.5) ** 2 + 0.75)
    lin = (inv.A * inv.B - om2 * inv.C) / om2 * (n + 0.5)
    return quad + lin


def g2(mean_n: float, var_n: float) -> float:
    """Second-order intensity correlation 1 + (Var N - <N>)/<N>^2."""
    if mean_n == 0:
        raise ValueError("g2 undefined at zero mean photon number")
    return 1.0 + (var_n - mean_n) / mean_n**2


def mean_qp(init: InitialData, t: float, params: ModelParams) -> tuple[float, float]:
    """Expectation values (<q>, <p>) from the slow vector xi.

    <p> = Re(e^{-i omega t} xi(t)) and <q> = -Im(e^{-i omega t} xi(t))/omega,
    equivalent to <q> = -eps/beta, <p> = delta - 2 alpha eps/beta of the
    evolved state; this form satisfies the classical equations of motion of
    the quadratic Hamiltonian identically.
    """
    om = params.omega
    xi = slow_vectors(init, t, params).xi
    rotated = cmath.exp(-1j * om * t) * xi
    return -rotated.imag / om, rotated.real


def qp_variances_closed(
    init: InitialData, t: float, params: ModelParams, n: int
) -> tuple[float, float]:
    """(sigma_q, sigma_p) from explicit slow/fast closed forms, scaled by 2n+1."""
    om, lam = params.omega, params.lam
    a0, b0 = init.alpha0, init.beta0
    scale = 2 * n + 1.0
    q_const = 4 * a0**2 + b0**4 + om**2
    p_const = 4 * a0**2 + b0**4 - om**2
    if params.variant is Variant.PHI_ZERO:
        c2, s2 = math.cosh(2 * lam * t), math.sinh(2 * lam * t)
        sin2, cos2 = math.sin(2 * om * t), math.cos(2 * om * t)
        sigma_q = (
            (q_const + 4 * a0 * om * sin2) * c2
            + (4 * a0 * om + q_const * sin2) * s2
            - p_const * cos2
        ) / (4 * b0**2 * om**2)
        sigma_p = (
            (q_const - 4 * a0 * om * sin2) * c2
            + (4 * a0 * om - q_const * sin2) * s2
            + p_const * cos2
        ) / (4 * b0**2)
    else:
        e2, em2 = math.exp(2 * lam * t), math.exp(-2 * lam * t)
        sin2, cos2 = math.sin(2 * om * t), math.cos(2 * om * t)
        g = 4 * a0**2 + b0**4
        sigma_q = (
            (g * em2 + om**2 * e2) / (4 * b0**2 * om**2)
            + a0 / (b0**2 * om) * sin2
            - (g * em2 - om**2 * e2) / (4 * b0**2 * om**2) * cos2
        )
        sigma_p = (
            (g * em2 + om**2 * e2) / (4 * b0**2)
            - a0 * om / b0**2 * sin2
            + (g * em2 - om**2 * e2) / (4 * b0**2) * cos2
        )
    return scale * sigma_q, scale * sigma_p


def statistics_report(init: InitialData, t: float, params: ModelParams) -> StatisticsReport:
    """Convenience bundle of every observable at one time."""
    st = evolve_closed_form(init, t, params)
    inv = slow_invariants(init, t, params)
    sigma_p, sigma_q, sigma_pq = quadrature_variances(st, init.n)
    mean_n = mean_photon_number(inv, init.n, params.omega)
    var_n = photon_number_variance(inv, init.n, params.omega)
    g2_val = g2(mean_n, var_n) if mean_n != 0 else math.nan
    mean_q, mean_p = mean_qp(init, t, params)
    return StatisticsReport(
        sigma_p=sigma_p,
        sigma_q=sigma_q,
        sigma_pq=sigma_pq,
        mean_n=mean_n,
        var_n=var_n,
        g2=g2_val,
        mean_q=mean_q,
        mean_p=mean_p,
        t=t,
    )


def mean_photon_number_from_state(state: ErmakovState, n: int, omega: float) -> float:
    """<N> evaluated directly from the evolved state (full, non-slow form)."""
    be = state.beta
    full = (n + 0.5) * (4 * state.alpha**2 + be**4 + omega**2) / (2 * omega * be**2) - 0.5
    shift = (state.delta - 2 * state.alpha * state.eps / be) ** 2 + (
        omega * state.eps / be
    ) ** 2
    return full + shift / (2 * omega)
