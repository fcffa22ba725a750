"""Double polycirculant codes over F_2, F_3, F_4, F_5 and F_7."""

from .distance import DEFAULT_BUDGET, BudgetExceeded, DistanceResult
from .dpsearch import (
    AsymptoticCheck,
    SearchReport,
    asymptotic_check,
    containment_count,
    count_dp_codes,
    distinct_row_space_count,
    entropy,
    entropy_inverse,
    search_best,
    search_trinomials,
)
from .gf import GF, FieldElement, FieldMismatchError, FiniteField, fe_add, fe_inv, fe_mul, fe_neg, fe_sub
from .linear_code import (
    CodeSummary,
    DPCode,
    LinearCode,
    WeightEnumerator,
    WitnessError,
    dp_code,
    dual_generator,
    is_even,
    is_fsd,
    is_self_dual,
    isodual_witness,
    macwilliams_transform,
    min_distance,
    summarize,
    weight_enumerator,
)
from .polyalg import (
    Polynomial,
    cyclotomic_trinomial,
    enumerate_irreducible_trinomials,
    enumerate_trinomials,
    format_poly,
    is_irreducible,
    parse_poly,
    poly_mulmod,
    trinomial,
)
from .polyshift import (
    MonomialMatrix,
    PolycirculantMatrix,
    PolyshiftSpec,
    companion_matrix,
    polycirculant,
    polyshift_apply,
    q_monomial,
    verify_transpose_relation,
)

__all__ = [
    "asymptotic_check",
    "AsymptoticCheck",
    "BudgetExceeded",
    "CodeSummary",
    "companion_matrix",
    "containment_count",
    "count_dp_codes",
    "cyclotomic_trinomial",
    "DEFAULT_BUDGET",
    "DistanceResult",
    "distinct_row_space_count",
    "dp_code",
    "DPCode",
    "dual_generator",
    "entropy",
    "entropy_inverse",
    "enumerate_irreducible_trinomials",
    "enumerate_trinomials",
    "fe_add",
    "fe_inv",
    "fe_mul",
    "fe_neg",
    "fe_sub",
    "FieldElement",
    "FieldMismatchError",
    "FiniteField",
    "format_poly",
    "GF",
    "is_even",
    "is_fsd",
    "is_irreducible",
    "is_self_dual",
    "isodual_witness",
    "LinearCode",
    "macwilliams_transform",
    "min_distance",
    "MonomialMatrix",
    "parse_poly",
    "poly_mulmod",
    "polycirculant",
    "PolycirculantMatrix",
    "Polynomial",
    "polyshift_apply",
    "PolyshiftSpec",
    "q_monomial",
    "search_best",
    "search_trinomials",
    "SearchReport",
    "summarize",
    "trinomial",
    "verify_transpose_relation",
    "weight_enumerator",
    "WeightEnumerator",
    "WitnessError",
]

__version__ = "0.1.0"
