"""Saddle-point asymptotics for coefficients of infinite products.

The probabilistic saddle-point method attaches to ``f = prod f_k`` at radius
``t`` a sum of independent variables ``X_t``; when the standardized sum is
asymptotically normal, ``a_n ~ f(t_n) / (sqrt(2 pi) sigma(t_n) t_n^n)`` with
``m(t_n) = n``.  The package provides exact coefficients, the moment series,
saddle solvers, the characteristic function and its bounds, and the
estimates for partitions into distinct parts.
"""

from .asymptotics import (
    AsymptoticEstimate,
    EstimateMethod,
    closed_form_q,
    estimate,
    estimate_equivalents,
    estimate_general,
    euler_maclaurin_logf,
    log_f,
)
from .charfn import (
    CharFnSample,
    StandardizedCharFn,
    cramer_bound_check,
    cramer_grid_check,
    lemmaA_region_check,
    lemmaB_region_check,
    phi_Z,
    strong_gaussian_integral,
)
from .diagnostics import (
    CltReport,
    clt_report,
    product_limit_demo,
    taylor_remainder_check,
)
from .errors import BracketError, DomainError, QuadratureError, TruncationError
from .moments import (
    FactorLaw,
    MomentSummary,
    RadialParam,
    aggregate_moments,
    factor_law,
    gamma3_constant,
    m1,
    sigma1_sq,
)
from .quadrature import adaptive_simpson
from .saddle import SaddleMethod, SaddleSolution, hypothesis1_gap, solve_saddle, tau_n
from .series import (
    CoefficientTable,
    FactorFamily,
    FamilyKind,
    brute_force_distinct,
    distinct_partition_count,
    expand_product,
)

__version__ = "0.1.0"
