"""Numerical toolkit for alpha-harmonic maps of the unit disc.

Series evaluation of the Gauss hypergeometric function, alpha-harmonic maps
built from a coefficient spectrum, coefficient extraction and bounds, the
Landau-type univalence radius and a sampled verification harness.
"""

from .alphamap import (
    AlphaHarmonicMap,
    BoundaryData,
    CoefficientSpectrum,
    WirtingerPair,
    dilations,
    evaluate,
    kernel,
    poisson_solve,
    sup_Lambda,
    t_alpha_residual,
    wirtinger,
)
from .coefficients import corollary22_bound, extract, g_factor, longwang_term_bound, theorem21_lhs
from .errors import AccuracyError, DomainError
from .landau import LandauInput, LandauResult, a_constant, classical_m_constant, phi, solve_rho0
from .specialfns import HypParams, hyp2f1, hyp2f1_at_one, hyp2f1_derivative
from .verify import VerificationReport, check_injectivity, check_schlicht, random_admissible_map

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "AlphaHarmonicMap", "BoundaryData", "CoefficientSpectrum", "DomainError",
    "HypParams", "LandauInput", "LandauResult", "VerificationReport", "WirtingerPair",
    "a_constant", "check_injectivity", "check_schlicht", "classical_m_constant", "corollary22_bound",
    "dilations", "evaluate", "extract", "g_factor", "hyp2f1", "hyp2f1_at_one", "hyp2f1_derivative",
    "kernel", "longwang_term_bound", "phi", "poisson_solve", "random_admissible_map", "solve_rho0",
    "sup_Lambda", "t_alpha_residual", "theorem21_lhs", "wirtinger",
]
