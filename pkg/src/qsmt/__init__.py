"""Exact dual standard-monomial and canonical bases for type A quantized
enveloping algebras.

Layered bottom-up: exact Laurent/rational arithmetic over the integers
(``qlaurent``), shapes, tableaux, and standard monomials (``tableaux``), the
module action with divided-power and crystal operator flavors (``repmod``),
weight-space transition matrices and certified canonical bases (``bases``),
rank-two closed forms (``sl3``), and a command-line front end (``cli``).
"""

from .qlaurent import (
    InexactDivisionError,
    LaurentPoly,
    RationalQ,
    format_laurent,
    format_rational,
    membership,
    parse_laurent,
    parse_rational,
    qbinom,
    qfactorial,
    qint,
    series_at_zero,
)
from .tableaux import (
    Comparison,
    RootLatticeWeight,
    Shape,
    StandardMonomial,
    Tableau,
    compare,
    compare_monomials,
    enumerate_standard,
    enumerate_standard_monomials,
    enumerate_tableaux,
    lambda_for,
    marked_step,
    monomial_of,
    tableau_of,
)
from .repmod import (
    FLAVOR_DIVIDED,
    FLAVOR_KASHIWARA,
    ModuleVector,
    act_E,
    act_F,
    act_K,
    act_Kinv,
    apply_monomial,
    closed_form_divided_F,
    divided_F,
    highest_weight_vector,
    kashiwara_E,
    kashiwara_F,
    string_decompose,
)
from .bases import (
    BasisMatrix,
    Check,
    DualSMTBasis,
    InsufficientShapeError,
    Report,
    TheoremViolationError,
    canonical_basis,
    canonical_basis_with_certificate,
    certify_canonical,
    crystal_congruence_check,
    dual_smt,
    dual_to_canonical_matrix,
    kashiwara_monomial_matrix,
    kashiwara_tableau_matrix,
    monomial_index,
    smt_matrix,
    stability_check,
)
from .sl3 import (
    SL3Monomial,
    alternating_qbinom_identity,
    cross_validate,
    expansion_coefficient_closed,
    expansion_matrix_closed,
    expansion_matrix_inverse_closed,
    qpower_subset_sum_identity,
    sl3_compare,
)

__version__ = "0.1.0"
