"""Hamming medians and diverse near-median sets over finite alphabets."""

from .core import (
    Budget,
    CandidateSet,
    CapExceeded,
    Dataset,
    FrequencyTable,
    InfeasibleError,
    MedianContext,
    ValidationError,
    build_context,
    context_from_strings,
    hamming,
    is_approx_median,
    is_exact_median,
    median_cost,
    min_dispersion,
    sum_dispersion,
    word_str,
)
from .diameter import (
    DiameterResult,
    PartitionResult,
    approx_diameter_pair,
    exact_diameter_pair,
    min_diff_partition,
)
from .lpround import (
    FractionalAssignment,
    IlpModel,
    LpReport,
    build_ilp,
    dependent_round,
    lp_min_dispersion,
    solve_lp_relaxation,
)
from .mindisp import (
    BoundCertificate,
    SampleConfig,
    bound_certificate,
    greedy_dispersion,
    min_disp_dp_approx,
    min_disp_dp_exact,
    min_dispersion_dispatch_approx,
    min_dispersion_dispatch_exact,
    plotkin_bound,
    sample_approx_medians,
    sample_exact_medians,
    tstar_upper_bound,
)
from .oracle import (
    DEFAULT_LIMITS,
    EnumerationLimits,
    brute_diameter,
    brute_max_code_size,
    brute_mindp_k,
    brute_sumdp_k,
    enumerate_approx_medians,
    enumerate_exact_medians,
)
from .sumdisp import (
    ModOp,
    OpList,
    build_oplist,
    cost_greedy_assign,
    make_distinct,
    sum_dispersion_approx_k,
    sum_dispersion_dispatch,
    sum_dispersion_exact_k,
    sum_dispersion_small_dstar,
)

__all__ = [
    "BoundCertificate",
    "Budget",
    "CandidateSet",
    "CapExceeded",
    "DEFAULT_LIMITS",
    "Dataset",
    "DiameterResult",
    "EnumerationLimits",
    "FractionalAssignment",
    "FrequencyTable",
    "IlpModel",
    "InfeasibleError",
    "LpReport",
    "MedianContext",
    "ModOp",
    "OpList",
    "PartitionResult",
    "SampleConfig",
    "ValidationError",
    "approx_diameter_pair",
    "bound_certificate",
    "brute_diameter",
    "brute_max_code_size",
    "brute_mindp_k",
    "brute_sumdp_k",
    "build_context",
    "build_ilp",
    "build_oplist",
    "context_from_strings",
    "cost_greedy_assign",
    "dependent_round",
    "enumerate_approx_medians",
    "enumerate_exact_medians",
    "exact_diameter_pair",
    "greedy_dispersion",
    "hamming",
    "is_approx_median",
    "is_exact_median",
    "lp_min_dispersion",
    "make_distinct",
    "median_cost",
    "min_diff_partition",
    "min_disp_dp_approx",
    "min_disp_dp_exact",
    "min_dispersion",
    "min_dispersion_dispatch_approx",
    "min_dispersion_dispatch_exact",
    "plotkin_bound",
    "sample_approx_medians",
    "sample_exact_medians",
    "solve_lp_relaxation",
    "sum_dispersion",
    "sum_dispersion_approx_k",
    "sum_dispersion_dispatch",
    "sum_dispersion_exact_k",
    "sum_dispersion_small_dstar",
    "tstar_upper_bound",
    "word_str",
]

__version__ = "0.1.0"
