"""Built-in verification suite: every closed form against its independent oracle.

Each check returns a `CheckResult` with the measured worst-case deviation and
the tolerance it must stay under.  `run_suite` executes all of them and
assembles a JSON-friendly report; the CLI `verify` subcommand and the
acceptance tests both drive this module.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import canonical, statistics
from .characteristic import (
    characteristic_ode_coeffs,
    ince_residual,
    mu_initial_conditions,
    mu_pair,
    wronskian,
    wronskian_closed_form,
)
from .ermakov import (
    evolve_closed_form,
    evolve_composed,
    mu_w_polar_identity,
    slow_invariants,
    slow_vectors,
)
from .errors import SingularTimeError
from .fock import amplitudes, overlap_amplitude, squeezed_wavefunction, wavefunction_grid
from .model import InitialData, ModelParams, Variant, vacuum_init
from .oracle import GridSpec, complex_gaussian_integral, rk4_integrate, tdse_residual, wigner_transform
from .phase_space import contour_q, polyline_area, wigner_grid, wigner_vacuum
from .propagators import greens_full, greens_lambda, greens_oscillator, propagate


@dataclass
class CheckResult:
    name: str
    passed: bool
    measure: float
    tolerance: float
    seconds: float
    detail: str = ""


@dataclass
class Report:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"all_passed": self.all_passed, "checks": [asdict(c) for c in self.checks]}


_PARAM_SETS = [(1.0, 0.0), (1.0, 0.1), (1.0, 0.25), (2.0, 0.5)]
_GENERIC_INIT = InitialData(alpha0=0.3, beta0=1.2, delta0=0.5, eps0=-0.4)


def _both_variants(omega: float, lam: float) -> list[ModelParams]:
    return [ModelParams(omega, lam, v) for v in (Variant.PHI_ZERO, Variant.PHI_HALF_PI)]


def _timed(fn):
    start = time.perf_counter()
    measure, detail = fn()
    return measure, detail, time.perf_counter() - start


def check_ince_residuals(quick: bool = False) -> CheckResult:
    """1: characteristic-equation residuals of the closed-form mu's."""

    def body():
        worst = 0.0
        npts = 250 if quick else 1000
        for om, lam in _PARAM_SETS:
            for params in _both_variants(om, lam):
                for t in np.linspace(0.0, 4 * math.pi, npts):
                    r0, r1 = ince_residual(float(t), params)
                    worst = max(worst, abs(r0), abs(r1))
        return worst, f"{len(_PARAM_SETS)} parameter sets, both variants, {npts} points"

    measure, detail, secs = _timed(body)
    return CheckResult("ince_residuals", measure < 1e-9, measure, 1e-9, secs, detail)


def check_wronskians(quick: bool = False) -> CheckResult:
    """2: Wronskians equal the standard closed forms (relative)."""

    def body():
        # [0, 2*pi]: beyond that the product form loses digits to the
        # cosh^2(lam t) cancellation inherent in double precision
        worst = 0.0
        npts = 100 if quick else 400
        for om, lam in _PARAM_SETS:
            for params in _both_variants(om, lam):
                for t in np.linspace(0.0, 2 * math.pi, npts):
                    w = wronskian(float(t), params)
                    w_ref = wronskian_closed_form(float(t), params)
                    worst = max(worst, abs(w - w_ref) / abs(w_ref))
        return worst, "relative deviation over [0, 2*pi]"

    measure, detail, secs = _timed(body)
    return CheckResult("wronskians", measure < 1e-12, measure, 1e-12, secs, detail)


def check_rk4_agreement(quick: bool = False) -> CheckResult:
    """3: closed-form mu's vs RK4 integration of the characteristic equation."""

    def body():
        worst = 0.0
        steps = 20_000 if quick else 100_000
        sets = [(1.0, 0.25), (2.0, 0.5)] if quick else _PARAM_SETS
        t_end = 2 * math.pi
        for om, lam in sets:
            for params in _both_variants(om, lam):
                p_c, q_c = characteristic_ode_coeffs(params)
                (y00, dy00), (y10, dy10) = mu_initial_conditions(params)
                y0, _ = rk4_integrate(p_c, q_c, y00, dy00, 0.0, t_end, steps)
                y1, _ = rk4_integrate(p_c, q_c, y10, dy10, 0.0, t_end, steps)
                ref = mu_pair(t_end, params)
                worst = max(worst, abs(y0 - ref.mu0), abs(y1 - ref.mu1))
        return worst, f"RK4 with {steps} steps over [0, 2*pi]"

    measure, detail, secs = _timed(body)
    return CheckResult("rk4_oracle_agreement", measure < 1e-6, measure, 1e-6, secs, detail)


def check_tdse_residual(quick: bool = False) -> CheckResult:
    """4: Schroedinger residual of psi_n for n = 0, 1, 2, both variants."""

    def body():
        worst = 0.0
        times = (0.9,) if quick else (0.3, 0.9, 1.7)
        ns = (0, 1) if quick else (0, 1, 2)
        for params in _both_variants(1.0, 0.25):
            for n in ns:
                init = InitialData(alpha0=0.3, beta0=1.2, delta0=0.5, eps0=-0.4, n=n)
                for t in times:
                    worst = max(worst, tdse_residual(init, t, params))
        return worst, "generic init, relative residual"

    measure, detail, secs = _timed(body)
    return CheckResult("tdse_residual", measure < 1e-5, measure, 1e-5, secs, detail)


def check_ermakov_consistency(quick: bool = False) -> CheckResult:
    """5: closed form vs generic composition; C, D constant along trajectories."""

    def body():
        rng = np.random.default_rng(20240811)
        worst_rel = 0.0
        n_times = 50 if quick else 200
        for params in _both_variants(1.0, 0.25):
            count = 0
            t = 0.05
            while count < n_times:
                t += 0.031
                try:
                    s_closed = evolve_closed_form(_GENERIC_INIT, t, params)
                    s_comp = evolve_composed(_GENERIC_INIT, t, params)
                except SingularTimeError:
                    continue
                count += 1
                for f_name in ("alpha", "beta", "gamma", "delta", "eps", "kappa"):
                    a = getattr(s_closed, f_name)
                    b = getattr(s_comp, f_name)
                    worst_rel = max(worst_rel, abs(a - b) / max(1.0, abs(a)))
        worst_cd = 0.0
        n_inits = 2 if quick else 5
        for params in _both_variants(1.0, 0.25):
            for _ in range(n_inits):
                init = InitialData(
                    alpha0=float(rng.normal() * 0.5),
                    beta0=float(0.7 + rng.random()),
                    delta0=float(rng.normal() * 0.5),
                    eps0=float(rng.normal() * 0.5),
                )
                invs = [slow_invariants(init, float(t), params) for t in np.linspace(0, 2 * math.pi, 40)]
                worst_cd = max(
                    worst_cd,
                    max(abs(i.C - invs[0].C) for i in invs),
                    max(abs(i.D - invs[0].D) for i in invs),
                )
        # C/D tolerance is 1e-10, route tolerance 1e-9: scale drift accordingly
        return max(worst_rel, 10.0 * worst_cd), (
            f"route deviation {worst_rel:.2e}; C/D drift {worst_cd:.2e}"
        )

    measure, detail, secs = _timed(body)
    return CheckResult("ermakov_consistency", measure < 1e-9, measure, 1e-9, secs, detail)


def check_vacuum_anchors(quick: bool = False) -> CheckResult:
    """6: <N> = sinh^2, Var N = sinh^2(2.)/2 exactly and against Fock moments."""

    def body():
        lam = 0.25
        worst_closed = 0.0
        worst_moment = 0.0
        lam_ts = (0.5,) if quick else (0.25, 0.5, 1.0)
        for params in _both_variants(1.0, lam):
            vac = vacuum_init(params)
            for lt in lam_ts:
                t = lt / lam
                inv = slow_invariants(vac, t, params)
                mean_n = statistics.mean_photon_number(inv, 0, params.omega)
                var_n = statistics.photon_number_variance(inv, 0, params.omega)
                worst_closed = max(
                    worst_closed,
                    abs(mean_n - math.sinh(lt) ** 2),
                    abs(var_n - 0.5 * math.sinh(2 * lt) ** 2),
                )
                am = amplitudes(vac, t, params)
                m_arr = np.arange(am.nmax + 1)
                p = am.probabilities()
                mom1 = float(m_arr @ p)
                mom2 = float((m_arr**2) @ p)
                worst_moment = max(worst_moment, abs(mom1 - mean_n), abs(mom2 - mom1**2 - var_n))
        anchor = abs(
            statistics.mean_photon_number(
                slow_invariants(vacuum_init(_both_variants(1.0, lam)[0]), 2.0, _both_variants(1.0, lam)[0]), 0, 1.0
            )
            - 0.2715403
        )
        anchor_var = abs(
            statistics.photon_number_variance(
                slow_invariants(vacuum_init(_both_variants(1.0, lam)[0]), 2.0, _both_variants(1.0, lam)[0]), 0, 1.0
            )
            - 0.6905489
        )
        measure = max(worst_closed / 1e-12, worst_moment / 1e-6, anchor / 1e-7, anchor_var / 1e-7)
        return measure, (
            f"closed {worst_closed:.2e} (tol 1e-12); moments {worst_moment:.2e} (tol 1e-6); "
            f"numeric anchors {anchor:.2e}, {anchor_var:.2e} (tol 1e-7)"
        )

    measure, detail, secs = _timed(body)
    return CheckResult("vacuum_anchors", measure < 1.0, measure, 1.0, secs, detail)


def check_uncertainty_determinant(quick: bool = False) -> CheckResult:
    """7: sigma_p sigma_q - sigma_pq^2 = (n + 1/2)^2 along trajectories."""

    def body():
        worst = 0.0
        for params in _both_variants(1.0, 0.25):
            for t in np.linspace(0.0, 5.0, 20 if quick else 60):
                st = evolve_closed_form(_GENERIC_INIT, float(t), params)
                for n in range(6):
                    sp, sq, spq = statistics.quadrature_variances(st, n)
                    worst = max(worst, abs(sp * sq - spq**2 - (n + 0.5) ** 2))
        return worst, "n = 0..5"

    measure, detail, secs = _timed(body)
    return CheckResult("uncertainty_determinant", measure < 1e-10, measure, 1e-10, secs, detail)


def check_amplitudes(quick: bool = False) -> CheckResult:
    """8: unitarity, factorization-order agreement, overlap oracle, parity."""

    def body():
        worst_tail = 0.0
        worst_order = 0.0
        worst_overlap = 0.0
        worst_parity = 0.0
        times = (0.8,) if quick else (0.8, 2.0)
        ns = (0, 1) if quick else (0, 1, 2)
        for params in _both_variants(1.0, 0.25):
            for n in ns:
                init = InitialData(alpha0=0.3, beta0=1.2, delta0=0.5, eps0=-0.4, n=n)
                for t in times:
                    am = amplitudes(init, t, params)
                    worst_tail = max(worst_tail, am.tail_mass)
                    worst_order = max(worst_order, am.order_error)
                    m_hi = 6 if quick else 12
                    for m in range(m_hi):
                        worst_overlap = max(
                            worst_overlap, abs(am.entries[m] - overlap_amplitude(init, t, params, m))
                        )
            vac = vacuum_init(params, n=1)
            am = amplitudes(vac, 1.2, params)
            worst_parity = max(worst_parity, float(np.abs(am.entries[::2]).max()))
            # m + n odd vanishes when there is no displacement: n=1 kills even m
        measure = max(
            worst_tail / 1e-10, worst_order / 1e-8, worst_overlap / 1e-6, worst_parity / 1e-12
        )
        return measure, (
            f"tail {worst_tail:.2e} (1e-10); orders {worst_order:.2e} (1e-8); "
            f"overlap {worst_overlap:.2e} (1e-6); parity {worst_parity:.2e} (1e-12)"
        )

    measure, detail, secs = _timed(body)
    return CheckResult("amplitudes", measure < 1.0, measure, 1.0, secs, detail)


def check_g2_squeezed_vacuum(quick: bool = False) -> CheckResult:
    """9: g2 = 3 + 1/<N> on squeezed-vacuum trajectories."""

    def body():
        worst = 0.0
        for params in _both_variants(1.0, 0.25):
            vac = vacuum_init(params)
            for t in np.linspace(0.15, 4.0, 10 if quick else 40):
                inv = slow_invariants(vac, float(t), params)
                mean_n = statistics.mean_photon_number(inv, 0, params.omega)
                var_n = statistics.photon_number_variance(inv, 0, params.omega)
                worst = max(worst, abs(statistics.g2(mean_n, var_n) - 3.0 - 1.0 / mean_n))
        return worst, "both variants"

    measure, detail, secs = _timed(body)
    return CheckResult("g2_squeezed_vacuum", measure < 1e-10, measure, 1e-10, secs, detail)


def check_wigner(quick: bool = False) -> CheckResult:
    """10: closed-form Wigner vs transform, grid integral, marginals."""

    def body():
        init = InitialData(alpha0=0.3, beta0=1.2, delta0=0.4, eps0=-0.3)
        t = 0.9
        worst_point = 0.0
        worst_int = 0.0
        worst_marg = 0.0
        for params in _both_variants(1.0, 0.25):
            grid = wigner_grid(init, t, params, num_x=129 if quick else 513,
                               num_p=129 if quick else 513)
            worst_int = max(worst_int, abs(grid.integral() - 1.0))
            x = grid.x_points()
            psi = squeezed_wavefunction(init, t, params, x)
            worst_marg = max(worst_marg, float(np.abs(grid.marginal_x() - np.abs(psi) ** 2).max()))
            # momentum marginal against the Fourier transform of psi
            wf = wavefunction_grid(init, t, params, num_points=4097 if quick else 8193)
            xs = wf.points()
            w = GridSpec(wf.x_min, wf.x_max, wf.num_points).weights()
            p_pts = grid.p_points()
            phi = (w * wf.values) @ np.exp(-1j * np.outer(xs, p_pts)) / math.sqrt(2 * math.pi)
            worst_marg = max(worst_marg, float(np.abs(grid.marginal_p() - np.abs(phi) ** 2).max()))
            gs = GridSpec(wf.x_min, wf.x_max, wf.num_points)
            pts = [(-0.8, -1.0), (0.0, 0.3), (0.9, 0.8)] if quick else [
                (xx, pp) for xx in (-1.2, -0.4, 0.0, 0.7, 1.3) for pp in (-1.1, -0.2, 0.5, 1.2)
            ]
            xs_grid = wf.points()
            for xx, pp in pts:
                xx_snap = float(xs_grid[int(np.argmin(np.abs(xs_grid - xx)))])
                worst_point = max(
                    worst_point,
                    abs(
                        wigner_vacuum(init, t, params, xx_snap, pp)
                        - wigner_transform(wf.values, gs, xx_snap, pp)
                    ),
                )
        measure = max(worst_point / 1e-6, worst_int / 1e-4, worst_marg / 1e-5)
        return measure, (
            f"pointwise {worst_point:.2e} (1e-6); integral {worst_int:.2e} (1e-4); "
            f"marginals {worst_marg:.2e} (1e-5)"
        )

    measure, detail, secs = _timed(body)
    return CheckResult("wigner", measure < 1.0, measure, 1.0, secs, detail)


def check_figure_contours(quick: bool = False) -> CheckResult:
    """11: contour data at level 2 for omega=1, lam=0.25; alpha-roots; area constancy."""

    def body():
        params = ModelParams(1.0, 0.25, Variant.PHI_ZERO)
        vac = vacuum_init(params)
        roots = canonical.minimum_uncertainty_times(vac, params, (0.0, 3.0),
                                                    grid_points=2000 if quick else 10_000)
        targets = [0.0, math.pi / 4, 3 * math.pi / 4]
        worst_root = max(min(abs(r - tgt) for r in roots) for tgt in targets)
        area0 = polyline_area(contour_q(2.0, 0.0, vac, params, 256))
        worst_area = 0.0
        for t in np.linspace(0.2, 3.0, 6 if quick else 15):
            area = polyline_area(contour_q(2.0, float(t), vac, params, 256))
            worst_area = max(worst_area, abs(area / area0 - 1.0))
        # at each root the n=0 state saturates the uncertainty bound
        worst_sat = 0.0
        for r in roots:
            st = evolve_closed_form(vac, float(r), params)
            sp, sq, spq = statistics.quadrature_variances(st, 0)
            worst_sat = max(worst_sat, abs(sp * sq - 0.25), abs(spq))
        measure = max(worst_root / 1e-3, worst_area / 1e-6, worst_sat / 1e-9)
        return measure, (
            f"roots {worst_root:.2e} (1e-3); area drift {worst_area:.2e} (1e-6); "
            f"saturation {worst_sat:.2e} (1e-9)"
        )

    measure, detail, secs = _timed(body)
    return CheckResult("figure_contours", measure < 1.0, measure, 1.0, secs, detail)


def check_propagators(quick: bool = False) -> CheckResult:
    """12: factorization identities and propagation of closed-form states."""

    def body():
        rng = np.random.default_rng(7)
        worst_ii = 0.0
        worst_i = 0.0
        n_pts = 10 if quick else 50
        params_ii = ModelParams(1.0, 0.25, Variant.PHI_HALF_PI)
        params_i = ModelParams(1.0, 0.25, Variant.PHI_ZERO)
        for _ in range(n_pts):
            x, y = rng.normal(size=2) * 1.5
            t = float(0.3 + 2.0 * rng.random())
            if abs(math.sin(params_ii.omega * t)) < 1e-3:
                continue
            lhs = greens_full(x, y, t, params_ii)
            rhs = math.exp(params_ii.lam * t / 2) * greens_oscillator(
                x, y * math.exp(params_ii.lam * t), t, params_ii.omega
            )
            worst_ii = max(worst_ii, abs(complex(lhs) - complex(rhs)))
            om, lam = params_i.omega, params_i.lam
            s, c = math.sin(om * t), math.cos(om * t)
            sh, ch = math.sinh(lam * t), math.cosh(lam * t)
            a_g = om * c / (2 * s) + om * ch / (2 * sh)
            b_g = -om * x / s - om * y / sh
            c_g = om * x**2 * c / (2 * s) + om * y**2 * ch / (2 * sh)
            comp = om * _inv_sqrt_pair(s, sh, t, om) * complex_gaussian_integral(a_g, b_g, c_g)
            worst_i = max(worst_i, abs(complex(greens_full(x, y, t, params_i)) - comp))
        # propagate a generic state and compare with the closed form
        worst_prop = 0.0
        for params in (params_i, params_ii):
            init = InitialData(alpha0=0.3, beta0=1.2, delta0=0.5, eps0=-0.4)
            wf0 = wavefunction_grid(init, 0.0, params, num_points=2049 if quick else 4097)
            out = propagate(wf0, 0.9, params)
            ref = squeezed_wavefunction(init, 0.9, params, out.points())
            worst_prop = max(worst_prop, float(np.abs(out.values - ref).max()),
                             abs(out.norm() - 1.0))
        measure = max(worst_ii / 1e-12, worst_i / 1e-10, worst_prop / 1e-6)
        return measure, (
            f"scaling identity {worst_ii:.2e} (1e-12); composition {worst_i:.2e} (1e-10); "
            f"propagation {worst_prop:.2e} (1e-6)"
        )

    measure, detail, secs = _timed(body)
    return CheckResult("propagators", measure < 1.0, measure, 1.0, secs, detail)


def _inv_sqrt_pair(s: float, sh: float, t: float, om: float) -> complex:
    """Prefactor product sqrt(1/(2 pi i sin)) sqrt(1/(2 pi i sinh)), Maslov-corrected."""
    maslov = int(math.floor(om * t / math.pi + 1e-13))
    phase = -math.pi / 2 - math.pi * maslov / 2
    return complex(math.cos(phase), math.sin(phase)) / (
        2 * math.pi * math.sqrt(abs(s) * abs(sh))
    )


def check_canonical(quick: bool = False) -> CheckResult:
    """13: diagonal expectation of the expansion; tau formulas; complex identities."""

    def body():
        worst_diag = 0.0
        worst_tau = 0.0
        worst_ident = 0.0
        for params in _both_variants(1.0, 0.25):
            for t in np.linspace(0.0, 3.0, 6 if quick else 16):
                st = evolve_closed_form(_GENERIC_INIT, float(t), params)
                co = canonical.hamiltonian_expansion(st, params.omega)
                inv = slow_invariants(_GENERIC_INIT, float(t), params)
                for n in range(6):
                    lhs = canonical.diagonal_expectation(co, n)
                    rhs = params.omega * (statistics.mean_photon_number(inv, n, params.omega) + 0.5)
                    worst_diag = max(worst_diag, abs(lhs - rhs))
                tc = canonical.tau_from_cosh(st, params.omega)
                ts = canonical.tau_from_sinh(st, params.omega)
                worst_tau = max(
                    worst_tau, abs(math.cosh(tc) ** 2 - math.sinh(ts) ** 2 - 1.0)
                )
                worst_ident = max(worst_ident, *canonical.squeeze_identity_residuals(st, params.omega))
        measure = max(worst_diag / 1e-10, worst_tau / 1e-12, worst_ident / 1e-10)
        return measure, (
            f"diagonal {worst_diag:.2e} (1e-10); cosh^2-sinh^2 {worst_tau:.2e} (1e-12); "
            f"identities {worst_ident:.2e} (1e-10)"
        )

    measure, detail, secs = _timed(body)
    return CheckResult("canonical", measure < 1.0, measure, 1.0, secs, detail)


def check_internal_structure(quick: bool = False) -> CheckResult:
    """Extra coherence: mu_w polar identity and slow-vector normalization."""

    def body():
        worst = 0.0
        for params in _both_variants(1.0, 0.25):
            for t in (0.4, 1.1, 2.3):
                worst = max(worst, mu_w_polar_identity(_GENERIC_INIT, t, params))
                vec = slow_vectors(_GENERIC_INIT, t, params)
                inv = slow_invariants(_GENERIC_INIT, t, params)
                worst = max(worst, abs(abs(vec.xi) ** 2 - inv.B))
                worst = max(
                    worst,
                    abs(abs(vec.eta) ** 2 - abs(vec.zeta) ** 2 - 4 * params.omega * _GENERIC_INIT.beta0**2),
                )
        return worst, "mu_w polar form, |xi|^2 = B, |eta|^2 - |zeta|^2 = 4 om beta0^2"

    measure, detail, secs = _timed(body)
    return CheckResult("internal_structure", measure < 1e-9, measure, 1e-9, secs, detail)


_ALL_CHECKS = [
    check_ince_residuals,
    check_wronskians,
    check_rk4_agreement,
    check_tdse_residual,
    check_ermakov_consistency,
    check_vacuum_anchors,
    check_uncertainty_determinant,
    check_amplitudes,
    check_g2_squeezed_vacuum,
    check_wigner,
    check_figure_contours,
    check_propagators,
    check_canonical,
    check_internal_structure,
]


def run_suite(quick: bool = False) -> Report:
    """Run every verification check and collect the report."""
    report = Report()
    for check in _ALL_CHECKS:
        report.checks.append(check(quick=quick))
    return report
