"""subbergman: finite-dimensional computations in sub-Bergman Hilbert spaces.

The package materializes the two sub-Bergman spaces attached to a
contractive analytic symbol b on the unit disk as concrete numerical
linear algebra: exact Toeplitz and defect-operator sections, PSD square
roots and range-space norms, the weighted polynomial space with measure
(1 - |b|^2) dA, the analysis map carrying it isometrically into the plain
Bergman space, and a constructive polynomial approximation scheme.  The
verify module packages one named check per claimed identity.
"""

from . import cli, moments, operators, spaces, symbols, verify
from .errors import (DimensionMismatch, IllConditioned, NegativeSpectrum, NotContractive,
                     NotHermitian, NotInRange, ParseError, RuleTooCoarse, SingularGram,
                     SubBergmanError, UnsupportedVariant, UsageError)
from .moments import (MomentMatrix, QuadratureRule, bergman_moment, bergman_norm, delta_min,
                      disk_monomial_integral, weighted_moments, weighted_moments_exact,
                      weighted_moments_quadrature)
from .operators import (OperatorSection, PsdFactorization, RangeNormResult, defect_b,
                        defect_bbar, min_eigenvalue, psd_sqrt, range_norm, toeplitz_analytic,
                        toeplitz_coanalytic)
from .spaces import (ApproximationReport, ApproximationStep, WeightedGram, apply_sb,
                     density_approximate, gram_Ab2, kernel_coeffs, kernel_eval, norm_Ab2,
                     pointwise_identity_check, project_onto_Mn_perp, sb_matrix, sb_preimage)
from .symbols import (BlaschkeSymbol, ConstantSymbol, PolynomialSymbol, PolynomialVector,
                      Symbol, evaluate, format_complex, format_symbol, modulus_squared_coeffs,
                      parse_complex, parse_symbol, sup_norm_bound, sup_norm_estimate,
                      symbol_degree)
from .verify import (CheckReport, ToleranceConfig, check_blaschke_hardy, check_constant_symbol,
                     check_distance_lower_bound, check_isometry, check_norm_equivalence,
                     check_norm_identity, check_operator_inequality, default_symbol_corpus,
                     random_polynomials, run_all)

__version__ = "0.1.0"
