"""Simulation kit for the two integrable degenerate-parametric-amplifier models.

Closed-form state evolution, photon statistics, transition amplitudes,
Wigner functions and propagators, each paired with independent numerical
oracles (RK4, Simpson quadrature, finite differences, Wigner transform).
"""

from .canonical import (
    ExpansionCoeffs,
    SqueezeParams,
    hamiltonian_expansion,
    minimum_uncertainty_times,
    squeeze_parameters,
)
from .characteristic import MuPair, ince_residual, mu_pair, wronskian, wronskian_closed_form
from .errors import CausticError, ConvergenceError, PhysicsDomainError, SingularTimeError
from .ermakov import (
    ErmakovState,
    FundamentalTriple,
    SlowInvariants,
    SlowVectors,
    evolve_closed_form,
    evolve_composed,
    fundamental,
    fundamental_generic,
    slow_invariants,
    slow_vectors,
)
from .fock import (
    AmplitudeMatrix,
    WavefunctionGrid,
    amplitudes,
    hermite,
    matrix_M,
    matrix_N,
    matrix_R,
    matrix_T,
    photon_distribution,
    squeezed_wavefunction,
    stationary_wavefunction,
    wavefunction_grid,
)
from .model import HamiltonianCoeffs, InitialData, ModelParams, Variant, hamiltonian_coeffs, vacuum_init
from .oracle import GridSpec, complex_gaussian_integral, overlap, rk4_integrate, tdse_residual, wigner_transform
from .phase_space import WignerGrid, contour_q, rotate, squeeze_coords, wigner_grid, wigner_vacuum
from .propagators import greens_full, greens_lambda, greens_oscillator, propagate
from .statistics import (
    StatisticsReport,
    g2,
    mean_photon_number,
    mean_qp,
    photon_number_variance,
    qp_variances_closed,
    quadrature_variances,
    statistics_report,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeMatrix",
    "CausticError",
    "ConvergenceError",
    "ErmakovState",
    "ExpansionCoeffs",
    "FundamentalTriple",
    "GridSpec",
    "HamiltonianCoeffs",
    "InitialData",
    "ModelParams",
    "MuPair",
    "PhysicsDomainError",
    "SingularTimeError",
    "SlowInvariants",
    "SlowVectors",
    "SqueezeParams",
    "StatisticsReport",
    "Variant",
    "WavefunctionGrid",
    "WignerGrid",
    "amplitudes",
    "complex_gaussian_integral",
    "contour_q",
    "evolve_closed_form",
    "evolve_composed",
    "fundamental",
    "fundamental_generic",
    "g2",
    "greens_full",
    "greens_lambda",
    "greens_oscillator",
    "hamiltonian_coeffs",
    "hamiltonian_expansion",
    "hermite",
    "ince_residual",
    "matrix_M",
    "matrix_N",
    "matrix_R",
    "matrix_T",
    "mean_photon_number",
    "mean_qp",
    "minimum_uncertainty_times",
    "mu_pair",
    "overlap",
    "photon_distribution",
    "photon_number_variance",
    "propagate",
    "qp_variances_closed",
    "quadrature_variances",
    "rk4_integrate",
    "rotate",
    "slow_invariants",
    "slow_vectors",
    "squeeze_coords",
    "squeeze_parameters",
    "squeezed_wavefunction",
    "statistics_report",
    "stationary_wavefunction",
    "tdse_residual",
    "vacuum_init",
    "wavefunction_grid",
    "wigner_grid",
    "wigner_transform",
    "wigner_vacuum",
    "wronskian",
    "wronskian_closed_form",
]
