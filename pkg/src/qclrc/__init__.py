"""Quasi-cyclic locally recoverable codes.

Decompose a quasi-cyclic code into its constituents over the factors of
x^m - 1, bound its minimum distance and locality, classify it against
the Singleton-type bound, and build certified extension families.
"""

from .algebra import (CyclotomicCoset, Factorization, FactorInfo, Field,
                      Poly, cyclotomic_cosets, factor_unity, field_trace,
                      find_irreducible, is_irreducible, make_extension,
                      make_field, make_prime_field, minimal_polynomial)
from .bounds import (CERT_PREFIX, CERT_TELESCOPE, STATUS_ALMOST,
                     STATUS_CONFLICT, STATUS_NONE, STATUS_OPTIMAL,
                     BoundsReport, GoBound, RecoveryTrial, full_report,
                     go_bound, locality_upper, prefix_bound, r_term,
                     recover_symbol, recovery_check, singleton_bound,
                     status_label)
from .codes import (ENUM_BUDGET_DEFAULT, RANK_BUDGET_DEFAULT, CyclicCode,
                    LinearCode, cyclic_code, cyclic_dual, min_distance,
                    min_weight_codeword, rref, subcode_distance,
                    subcode_from_bz)
from .construct import (FamilySpec, ScanReport, ScanRow, build_cj,
                        chain_condition, ds_of_cj, exact_code,
                        extend_constituent, scan)
from .errors import (ConstructionError, InternalConsistencyError, ParseError,
                     ResourceLimitError)
from .qc import (AssociatedCodes, ConstituentDecomposition, QCCode,
                 associated_cyclic_codes, column_shift, dimension_of,
                 evaluate_constituents, flatten, generator_matrix,
                 qc_from_matrix_rows, rebuild_code, shift_invariance_check,
                 trace_codeword, unflatten)
from .reference import REFERENCE_IDS, reference_case
from .specfile import (CodeSpec, MatrixSpec, from_code, from_decomposition,
                       parse_database, parse_matrix, render_database,
                       render_matrix, to_code, to_decomposition)

__version__ = "0.1.0"

__all__ = [
    "AssociatedCodes",
    "BoundsReport",
    "CERT_PREFIX",
    "CERT_TELESCOPE",
    "CodeSpec",
    "ConstituentDecomposition",
    "ConstructionError",
    "CyclicCode",
    "CyclotomicCoset",
    "ENUM_BUDGET_DEFAULT",
    "FactorInfo",
    "Factorization",
    "FamilySpec",
    "Field",
    "GoBound",
    "InternalConsistencyError",
    "LinearCode",
    "MatrixSpec",
    "ParseError",
    "Poly",
    "QCCode",
    "RANK_BUDGET_DEFAULT",
    "REFERENCE_IDS",
    "RecoveryTrial",
    "ResourceLimitError",
    "STATUS_ALMOST",
    "STATUS_CONFLICT",
    "STATUS_NONE",
    "STATUS_OPTIMAL",
    "ScanReport",
    "ScanRow",
    "associated_cyclic_codes",
    "build_cj",
    "chain_condition",
    "column_shift",
    "cyclic_code",
    "cyclic_dual",
    "cyclotomic_cosets",
    "dimension_of",
    "ds_of_cj",
    "evaluate_constituents",
    "exact_code",
    "extend_constituent",
    "factor_unity",
    "field_trace",
    "find_irreducible",
    "flatten",
    "from_code",
    "from_decomposition",
    "full_report",
    "generator_matrix",
    "go_bound",
    "is_irreducible",
    "locality_upper",
    "make_extension",
    "make_field",
    "make_prime_field",
    "min_distance",
    "min_weight_codeword",
    "minimal_polynomial",
    "parse_database",
    "parse_matrix",
    "prefix_bound",
    "qc_from_matrix_rows",
    "r_term",
    "rebuild_code",
    "recover_symbol",
    "recovery_check",
    "reference_case",
    "render_database",
    "render_matrix",
    "rref",
    "scan",
    "shift_invariance_check",
    "singleton_bound",
    "status_label",
    "subcode_distance",
    "subcode_from_bz",
    "to_code",
    "to_decomposition",
    "trace_codeword",
    "unflatten",
]
