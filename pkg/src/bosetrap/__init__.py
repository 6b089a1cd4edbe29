"""Effective multi-body interaction energies of trapped ultracold bosons.

Perturbation theory in the trap-renormalized scattering length for N bosons
in an isotropic harmonic trap: two-, three- and four-body effective
interactions through third order, the regulator/counterterm machinery that
makes them cutoff independent, and a Gaussian-potential scattering solver
for mapping the parameters to a concrete interatomic potential.
"""

from .coeffs import (
    DEFAULT_CUTOFF_GRID,
    CoefficientValue,
    RegulatorSpec,
    alpha2_1,
    alpha2_12,
    alpha3_2,
    alpha3_3,
    alpha3_3_partial,
    alpha41_3,
    alpha42_3,
    alpha43_3,
    alpha5_3,
    beta2_2,
    beta2_2_asymptote,
    beta2_3,
    beta3_3,
)
from .energies import (
    CoefficientSet,
    CoefficientTable,
    InteractionEnergies,
    TrapContext,
    UTerm,
    coefficient_table,
    counterterm,
    default_coefficients,
    exact_two_body_energy,
    interaction_energies,
    interaction_energy,
    omega_s,
    rescaled_u,
    scheme_independence_residual,
    total_energy,
    u2,
    u2_regulated,
    u3,
    u3_regulated,
    u4,
)
from .hobasis import Orbital, delta_eps_sp, k_mixed, k_rel, k_sp
from .scatter import (
    GaussianPotential,
    bound_state_count,
    critical_depth,
    fit_effective_range,
    phase_shift,
    tune_depth,
    zero_energy_a,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CUTOFF_GRID",
    "CoefficientValue",
    "RegulatorSpec",
    "alpha2_1",
    "alpha2_12",
    "alpha3_2",
    "alpha3_3",
    "alpha3_3_partial",
    "alpha41_3",
    "alpha42_3",
    "alpha43_3",
    "alpha5_3",
    "beta2_2",
    "beta2_2_asymptote",
    "beta2_3",
    "beta3_3",
    "CoefficientSet",
    "CoefficientTable",
    "InteractionEnergies",
    "TrapContext",
    "UTerm",
    "coefficient_table",
    "counterterm",
    "default_coefficients",
    "exact_two_body_energy",
    "interaction_energies",
    "interaction_energy",
    "omega_s",
    "rescaled_u",
    "scheme_independence_residual",
    "total_energy",
    "u2",
    "u2_regulated",
    "u3",
    "u3_regulated",
    "u4",
    "Orbital",
    "delta_eps_sp",
    "k_mixed",
    "k_rel",
    "k_sp",
    "GaussianPotential",
    "bound_state_count",
    "critical_depth",
    "fit_effective_range",
    "phase_shift",
    "tune_depth",
    "zero_energy_a",
    "__version__",
]
