"""Free-Hamiltonian expansion coefficients and squeeze/displacement parameters.

`hamiltonian_expansion` rewrites H = (p^2 + omega^2 q^2)/2 in the variable
creation/annihilation operators attached to the evolving state; its diagonal
Fock expectation reproduces omega(<N> + 1/2) and its second moments rebuild
Var N.  `squeeze_parameters` extracts the rotation/squeeze/displacement
parameters (theta, tau, phi, xi) of the state's Gaussian unitary, with
quadrants resolved through the defining complex identities rather than bare
arctangents.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .ermakov import ErmakovState, evolve_closed_form
from .model import InitialData, ModelParams


@dataclass(frozen=True)
class ExpansionCoeffs:
    """Coefficients of H = c_aa a^2 + c_adad a+^2 + c_sym (a a+ + a+ a) + linear + const."""

    c_aa: complex
    c_adad: complex
    c_sym: float
    c_a: complex
    c_ad: complex
    c_const: float


def hamiltonian_expansion(state: ErmakovState, omega: float) -> ExpansionCoeffs:
    """Expansion of the single-mode Hamiltonian in the variable ladder operators.

    c_sym = (4 alpha^2 + beta^4 + omega^2)/(4 beta^2) = A(t)/4 and
    c_const = B(t)/2, so <n|H|n> = (2n+1) c_sym + c_const = omega(<N> + 1/2).
    """
    al, be = state.alpha, state.beta
    u = state.delta - 2 * al * state.eps / be
    c_aa = complex((4 * al**2 - be**4 + omega**2) / (4 * be**2), -al)
    c_sym = (4 * al**2 + be**4 + omega**2) / (4 * be**2)
    c_a = math.sqrt(2) * complex(
        (al / be) * u - state.eps * omega**2 / (2 * be**2), -be * u / 2
    )
    c_const = 0.5 * u**2 + state.eps**2 * omega**2 / (2 * be**2)
    return ExpansionCoeffs(
        c_aa=c_aa,
        c_adad=c_aa.conjugate(),
        c_sym=c_sym,
        c_a=c_a,
        c_ad=c_a.conjugate(),
        c_const=c_const,
    )


def diagonal_expectation(coeffs: ExpansionCoeffs, n: int) -> float:
    """<n|H|n> = (2n+1) c_sym + c_const."""
    return (2 * n + 1) * coeffs.c_sym + coeffs.c_const


def variance_from_expansion(coeffs: ExpansionCoeffs, n: int, omega: float) -> float:
    """Var N rebuilt from ladder-operator second moments on |n>.

    Var H = |c_aa|^2 [(n+1)(n+2) + n(n-1)] + |c_a|^2 (2n+1); Var N = Var H / omega^2.
    """
    pair = (n + 1) * (n + 2) + n * (n - 1)
    var_h = abs(coeffs.c_aa) ** 2 * pair + abs(coeffs.c_a) ** 2 * (2 * n + 1)
    return var_h / omega**2


@dataclass(frozen=True)
class SqueezeParams:
    """Rotation angle theta, squeeze magnitude tau >= 0, squeeze phase phi, displacement xi."""

    theta: float
    tau: float
    phi: float
    xi_d: complex


def squeeze_parameters(state: ErmakovState, omega: float) -> SqueezeParams:
    """Extract (theta, tau, phi, xi) from the defining complex identities.

    c1 = [(beta - 2 i alpha/beta)/sqrt(om) + sqrt(om)/beta]/2 = e^{-i theta} cosh tau,
    c2 = [(beta - 2 i alpha/beta)/sqrt(om) - sqrt(om)/beta]/2 = e^{i(theta - 2 phi)} sinh tau,
    xi sqrt(2) = eps - i delta/beta.

    |c1|^2 - |c2|^2 = 1 holds identically; tau = asinh|c2| >= 0; phi is set to
    0 when there is no squeeze (sinh tau below 1e-15).
    """
    be = state.beta
    root_om = math.sqrt(omega)
    core = complex(be, -2 * state.alpha / be) / root_om
    c1 = (core + root_om / be) / 2
    c2 = (core - root_om / be) / 2
    theta = -cmath.phase(c1)
    tau = math.asinh(abs(c2))
    if abs(c2) < 1e-15:
        phi = 0.0
    else:
        phi = (theta - cmath.phase(c2)) / 2
    xi_d = complex(state.eps, -state.delta / be) / math.sqrt(2)
    return SqueezeParams(theta=theta, tau=tau, phi=phi, xi_d=xi_d)


def tau_from_cosh(state: ErmakovState, omega: float) -> float:
    """tau from 4 cosh^2 tau = (beta/sqrt(om) + sqrt(om)/beta)^2 + 4 alpha^2/(om beta^2)."""
    be = state.beta
    val = (be / math.sqrt(omega) + math.sqrt(omega) / be) ** 2 + 4 * state.alpha**2 / (
        omega * be**2
    )
    return math.acosh(math.sqrt(max(val / 4, 1.0)))


def tau_from_sinh(state: ErmakovState, omega: float) -> float:
    """tau from 4 sinh^2 tau = (beta/sqrt(om) - sqrt(om)/beta)^2 + 4 alpha^2/(om beta^2)."""
    be = state.beta
    val = (be / math.sqrt(omega) - math.sqrt(omega) / be) ** 2 + 4 * state.alpha**2 / (
        omega * be**2
    )
    return math.asinh(math.sqrt(val / 4))


def squeeze_identity_residuals(state: ErmakovState, omega: float) -> tuple[float, float]:
    """Residuals of the two defining complex identities for the extracted parameters."""
    sp = squeeze_parameters(state, omega)
    be = state.beta
    root_om = math.sqrt(omega)
    core = complex(be, -2 * state.alpha / be) / root_om
    lhs1 = core + root_om / be
    lhs2 = core - root_om / be
    rhs1 = 2 * cmath.exp(-1j * sp.theta) * math.cosh(sp.tau)
    rhs2 = 2 * cmath.exp(1j * (sp.theta - 2 * sp.phi)) * math.sinh(sp.tau)
    return abs(lhs1 - rhs1), abs(lhs2 - rhs2)


def minimum_uncertainty_times(
    init: InitialData,
    params: ModelParams,
    t_range: tuple[float, float],
    grid_points: int = 10_000,
    tol: float = 1e-10,
) -> list[float]:
    """All roots of alpha(t) in t_range (minimum-uncertainty instants for n = 0).

    Sign-change bracketing on a uniform grid followed by bisection; grazing
    roots (|alpha| < 1e-12 without a sign change) are included once.
    """
    t_lo, t_hi = t_range
    ts = np.linspace(t_lo, t_hi, grid_points)
    vals = np.array([evolve_closed_form(init, float(t), params).alpha for t in ts])
    roots: list[float] = []

    def alpha_at(t: float) -> float:
        return evolve_closed_form(init, t, params).alpha

    for i in range(len(ts) - 1):
        a_val, b_val = vals[i], vals[i + 1]
        if a_val == 0.0:
            roots.append(float(ts[i]))
            continue
        if a_val * b_val < 0:
            lo, hi = float(ts[i]), float(ts[i + 1])
            f_lo = a_val
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                f_mid = alpha_at(mid)
                if f_mid == 0.0:
                    lo = hi = mid
                    break
                if f_lo * f_mid < 0:
                    hi = mid
                else:
                    lo, f_lo = mid, f_mid
            roots.append(0.5 * (lo + hi))
        elif abs(a_val) < 1e-12 and (i == 0 or abs(vals[i - 1]) >= 1e-12):
            roots.append(float(ts[i]))
    if vals[-1] == 0.0 or abs(vals[-1]) < 1e-12:
        if not roots or abs(roots[-1] - ts[-1]) > tol * 10:
            roots.append(float(ts[-1]))
    # merge near-duplicates from grazing/bracketing overlap
    merged: list[float] = []
    for r in sorted(roots):
        if not merged or r - merged[-1] > 1e-8:
            merged.append(r)
    return merged
