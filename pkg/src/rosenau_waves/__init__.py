"""Solitary waves of generalized Rosenau-type equations.

    u_t + eps u_x + alpha u_xxt + eta u_xxx + beta u_xxxxt + gamma u_xxxxx + (g(u))_x = 0
"""
from .core import (
    CubicQuintic,
    DerivativeForm,
    EquationParams,
    Family,
    PowerSum,
    SinglePower,
    eval_nonlinearity,
    homogeneity_degree,
    parse_nonlinearity,
    validate_params,
)
from .classify import (
    Region,
    Wave,
    ab_coefficients,
    characteristic_roots,
    classify_region,
    coercivity_check,
    coercivity_thresholds,
    family_regime,
    mu_coordinates,
)
from .spectral import Grid, SpectralField, build_symbols, differentiate
from .solver import Gaussian, SechFourth, SechSquared, FromFile, SolveConfig, solve
from .validate import (
    conserved_quantities,
    decay_fit,
    exact_kawahara,
    exact_kdv,
    exact_rlw,
    speed_amplitude_sweep,
    symmetry_defect,
)
from .evolution import EvolveConfig, evolve, linear_propagator, nonlinear_rhs, shape_error

__version__ = "0.1.0"

__all__ = [
    "CubicQuintic",
    "DerivativeForm",
    "EquationParams",
    "Family",
    "PowerSum",
    "SinglePower",
    "eval_nonlinearity",
    "homogeneity_degree",
    "parse_nonlinearity",
    "validate_params",
    "Region",
    "Wave",
    "ab_coefficients",
    "characteristic_roots",
    "classify_region",
    "coercivity_check",
    "coercivity_thresholds",
    "family_regime",
    "mu_coordinates",
    "Grid",
    "SpectralField",
    "build_symbols",
    "differentiate",
    "Gaussian",
    "SechFourth",
    "SechSquared",
    "FromFile",
    "SolveConfig",
    "solve",
    "conserved_quantities",
    "decay_fit",
    "exact_kawahara",
    "exact_kdv",
    "exact_rlw",
    "speed_amplitude_sweep",
    "symmetry_defect",
    "EvolveConfig",
    "evolve",
    "linear_propagator",
    "nonlinear_rhs",
    "shape_error",
]
