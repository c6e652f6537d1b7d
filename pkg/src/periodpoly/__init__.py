"""Level-one Hecke eigenforms, critical L-values, and certified zero
localization for odd period polynomials.

The pipeline: exact q-expansions and Hecke operators over the integers
(`exact_series`, `hecke`), critical L-values through incomplete gamma
sums with proven truncation tails (`lfunction`), period polynomial
construction and structural identities (`period_poly`), zero
localization and certification (`zero_engine`), and report assembly
plus plot-grid emission (`report`, `cli`).
"""

from .exact_series import (QSeries, bernoulli_number, cusp_basis, cusp_dim,
                           delta_qexp, eisenstein_qexp, sigma_power)
from .hecke import (Eigenform, RepeatedEigenvalueError, default_n_coeffs,
                    default_prec_bits, eigenforms, hecke_apply, hecke_matrix)
from .lfunction import (LValueRecord, check_lemma4_bounds, choose_truncation,
                        completed_lvalue, dirichlet_lvalue_naive,
                        functional_equation_residual, lvalue, lvalue_records,
                        truncation_tail_bound, upper_incomplete_gamma_int)
from .period_poly import (CocycleResidues, Moebius, RealPoly,
                          TrivialZeroCertificate, bernoulli_period_polynomial,
                          check_cocycle_relations, normalized_p,
                          odd_period_polynomial, q_split, slash,
                          trivial_zero_certificate)
from .report import (ANNULUS_INNER, ANNULUS_OUTER, DEFAULT_GRID,
                     LARGE_WEIGHT_CUTOFF, SineCertificate, grid_rows,
                     lemma_s_certificate, verify_form, verify_weights,
                     write_grid_csv)
from .zero_engine import (CircleZeros, Contour, RoucheResult, ZeroReport,
                          boundary_min, build_zero_report,
                          circle_zeros_by_intervals, classify_roots,
                          real_circle_function, refine_all_roots,
                          rouche_compare, sin_approx_sup, sine_difference,
                          winding_count)

__version__ = "0.1.0"

__all__ = [
    "QSeries", "bernoulli_number", "cusp_basis", "cusp_dim", "delta_qexp",
    "eisenstein_qexp", "sigma_power",
    "Eigenform", "RepeatedEigenvalueError", "default_n_coeffs",
    "default_prec_bits", "eigenforms", "hecke_apply", "hecke_matrix",
    "LValueRecord", "check_lemma4_bounds", "choose_truncation",
    "completed_lvalue", "dirichlet_lvalue_naive",
    "functional_equation_residual", "lvalue", "lvalue_records",
    "truncation_tail_bound", "upper_incomplete_gamma_int",
    "CocycleResidues", "Moebius", "RealPoly", "TrivialZeroCertificate",
    "bernoulli_period_polynomial", "check_cocycle_relations", "normalized_p",
    "odd_period_polynomial", "q_split", "slash", "trivial_zero_certificate",
    "ANNULUS_INNER", "ANNULUS_OUTER", "DEFAULT_GRID", "LARGE_WEIGHT_CUTOFF",
    "SineCertificate", "grid_rows", "lemma_s_certificate", "verify_form",
    "verify_weights", "write_grid_csv",
    "CircleZeros", "Contour", "RoucheResult", "ZeroReport", "boundary_min",
    "build_zero_report", "circle_zeros_by_intervals", "classify_roots",
    "real_circle_function", "refine_all_roots", "rouche_compare",
    "sin_approx_sup", "sine_difference", "winding_count",
    "__version__",
]
