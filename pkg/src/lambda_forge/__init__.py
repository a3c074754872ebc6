"""lambda_forge: level raising of weight-2 newforms with prescribed
Iwasawa lambda-invariants.

Starting from a fixed p-ordinary newform g (backed by an elliptic curve or
a coefficient table) with certified lambda/mu data, the package classifies
primes by Frobenius conjugacy class, enumerates admissible raised levels,
predicts the lambda-invariant of the congruent newforms living there, and
verifies the exact Chebotarev densities of the admissible prime families
both by exhaustive GL2(F_p) enumeration and by empirical sampling.
"""

from .arith import PrimeRange, multiplicative_order, pow_mod, sieve_primes
from .curves import (
    CurveModel,
    ReductionType,
    count_points_bsgs,
    count_points_naive,
    is_ordinary,
    reduction_type,
    trace_of_frobenius,
)
from .density import (
    ClassCountReport,
    DensityReport,
    empirical_density,
    enumerate_gl2_classes,
    exact_densities,
)
from .forms import CoefficientTable, FormContext, a_ell, a_ell_mod_p, load_coefficients
from .iwasawa import (
    EulerFactor,
    FactorProvenance,
    RankBound,
    SigmaDatum,
    TransferResult,
    bk_rank_bounds,
    compute_d_ell,
    compute_s_ell,
    euler_factor_from_frobenius,
    lambda_transfer,
    ramified_euler_factor,
    sigma_ell,
    user_supplied_factor,
)
from .levels import (
    CarayolReport,
    LevelSet,
    build_level_set,
    carayol_check,
    enumerate_level_sets,
    plan_target_lambda,
)
from .residual import (
    FrobeniusClass,
    ScreenReport,
    Verdict,
    classify_prime,
    classify_range,
    screen_p,
)

__version__ = "0.1.0"

__all__ = [
    "CarayolReport",
    "ClassCountReport",
    "CoefficientTable",
    "CurveModel",
    "DensityReport",
    "EulerFactor",
    "FactorProvenance",
    "FormContext",
    "FrobeniusClass",
    "LevelSet",
    "PrimeRange",
    "RankBound",
    "ReductionType",
    "ScreenReport",
    "SigmaDatum",
    "TransferResult",
    "Verdict",
    "a_ell",
    "a_ell_mod_p",
    "bk_rank_bounds",
    "build_level_set",
    "carayol_check",
    "classify_prime",
    "classify_range",
    "compute_d_ell",
    "compute_s_ell",
    "count_points_bsgs",
    "count_points_naive",
    "empirical_density",
    "enumerate_gl2_classes",
    "enumerate_level_sets",
    "euler_factor_from_frobenius",
    "exact_densities",
    "is_ordinary",
    "lambda_transfer",
    "load_coefficients",
    "multiplicative_order",
    "plan_target_lambda",
    "pow_mod",
    "ramified_euler_factor",
    "reduction_type",
    "screen_p",
    "sieve_primes",
    "sigma_ell",
    "trace_of_frobenius",
    "user_supplied_factor",
]
