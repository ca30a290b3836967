"""Buckingham pi-invariants over exact rationals, and the blackbody laws they lead to."""

from .constants_fit import FitInputs, fit_exponential_law, fit_planck, verify_table1
from .dimensions import (
    Dimension,
    DimensionBasis,
    Quantity,
    QuantitySet,
    dimension_of_product,
    dimensional_matrix,
    parse_dimension,
)
from .laws import (
    RadiationLaw,
    evaluate_criteria,
    energy_density,
    find_peak,
    preset_law,
    sample_spectrum,
    spectral_density,
    spectral_density_derivatives,
)
from .pi_solver import PinSpec, nullspace_basis, rank, solve_pinned, verify_scaling_freedom
from .special import detect_divergence, find_root, gamma, integrate_semiinfinite, zeta_even

__version__ = "0.1.0"
