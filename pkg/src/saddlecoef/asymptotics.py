"""Coefficient estimates, all carried as natural logarithms.

Every estimate has the shape ``ln a_n ~ ln f(t) + n r - ln(sqrt(2 pi) sigma)``
evaluated at a saddle radius ``t = exp(-r)``; the three methods differ in
which radius and which ``sigma`` they use.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import TruncationError
from .moments import (
    DEFAULT_K_CAP,
    DEFAULT_TOL,
    RadialParam,
    aggregate_moments,
    sigma1_sq,
)
from .saddle import SaddleSolution, solve_saddle, tau_n
from .series import FactorFamily, FamilyKind

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_CHUNK = 1 << 18

ESTIMATE_CSV_COLUMNS = ("n", "method", "log_estimate", "estimate", "r", "t")


class EstimateMethod(str, enum.Enum):
    GENERAL = "general"
    EQUIVALENTS = "equivalents"
    CLOSED = "closed"


@dataclass(frozen=True)
class EstimateComponents:
    log_f: float
    n_r: float
    log_sigma: float
    # ln f(tau_n) from the Euler-Maclaurin expansion, next to the exact sum
    log_f_euler_maclaurin: float | None = None


@dataclass(frozen=True)
class AsymptoticEstimate:
    n: int
    log_estimate: float
    method: EstimateMethod
    saddle: SaddleSolution
    components: EstimateComponents

    @property
    def estimate(self) -> float:
        """``exp(log_estimate)``; ``inf`` once it exceeds the float range."""
        return math.exp(self.log_estimate) if self.log_estimate < 709.0 else math.inf

    def reconstructed(self) -> float:
        c = self.components
        return c.log_f + c.n_r - (LOG_SQRT_2PI + c.log_sigma)

    def csv_row(self) -> list[str]:
        est = "" if self.log_estimate > math.log(1e300) else format(self.estimate, ".17g")
        return [
            str(self.n), self.method.value, format(self.log_estimate, ".17g"), est,
            format(self.saddle.rp.r, ".17g"), format(self.saddle.rp.t, ".17g"),
        ]


def _log_factor_terms(family: FactorFamily, k: np.ndarray, r: float) -> np.ndarray:
    if family.kind is FamilyKind.DISTINCT:
        return np.log1p(np.exp(-r * k))
    return -np.log1p(-np.exp(-r * k))


def log_f(family: FactorFamily, rp: RadialParam, tol: float = DEFAULT_TOL,
          k_cap: int = DEFAULT_K_CAP) -> float:
    """``ln f(t) = sum_k ln f_k(t)``.

    The sum stops at the first ``K`` whose absolute tail bound is below
    ``tol``: ``sum_{k>K} ln(1 + x^k) <= x^{K+1}/(1-x)`` for distinct parts and
    ``sum_{k>K} -ln(1 - x^k) <= x^{K+1}/(1-x)^2`` for the geometric family.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    r = rp.r
    if family.kind is FamilyKind.CUSTOM:
        terms = []
        for coeffs in family.custom_factors:
            deg = np.array([j for j, c in enumerate(coeffs) if c != 0], dtype=float)
            w = np.array([float(c) for c in coeffs if c != 0])
            terms.append(math.log(math.fsum(w * np.exp(-r * deg))))
        return math.fsum(terms)

    om = -math.expm1(-r)
    power = 1 if family.kind is FamilyKind.DISTINCT else 2
    # smallest K with x^{K+1} / om^power <= tol
    K = max(1, math.ceil((math.log(1.0 / tol) - power * math.log(om)) / r))
    if K > k_cap:
        raise TruncationError(f"r={r} needs more than {k_cap} factors for tol={tol}")
    parts = []
    for lo in range(1, K + 1, _CHUNK):
        k = np.arange(lo, min(lo + _CHUNK - 1, K) + 1, dtype=float)
        parts.append(math.fsum(_log_factor_terms(family, k, r)))
    return math.fsum(parts)


def euler_maclaurin_logf(rho: float) -> float:
    """``pi^2 / (12 rho) - ln(2) / 2``, the small-``rho`` expansion of
    ``sum_k ln(1 + e^{-rho k})``.  The remainder is ``O(rho)``; outside
    ``rho <= 1`` the expansion is not meaningful and a warning is issued.
    """
    if rho <= 0:
        raise ValueError("rho must be positive")
    if rho > 1:
        warnings.warn(
            f"euler_maclaurin_logf is a rho -> 0 expansion; rho={rho} is outside rho <= 1",
            RuntimeWarning,
            stacklevel=2,
        )
    return math.pi**2 / (12.0 * rho) - 0.5 * math.log(2.0)


def estimate_general(family: FactorFamily, n: int, tol: float = DEFAULT_TOL,
                     solver_tol: float = 1e-9) -> AsymptoticEstimate:
    """``f(t_n) / (sqrt(2 pi) sigma(t_n) t_n^n)`` at the exact saddle ``m(t_n) = n``."""
    sol = solve_saddle(family, n, solver_tol, tol)
    summary = aggregate_moments(family, sol.rp, tol)
    comp = EstimateComponents(
        log_f(family, sol.rp, tol), n * sol.rp.r, 0.5 * math.log(summary.sigma2)
    )
    return AsymptoticEstimate(n, _assemble(comp), EstimateMethod.GENERAL, sol, comp)


def estimate_equivalents(n: int, tol: float = DEFAULT_TOL) -> AsymptoticEstimate:
    """Distinct parts at ``tau_n`` with ``sigma1^2(tau_n) = (4 sqrt(3)/pi) n^{3/2}``."""
    sol = tau_n(n)
    rho = sol.rp.r
    comp = EstimateComponents(
        log_f(FactorFamily.distinct(), sol.rp, tol),
        math.pi * math.sqrt(n) / (2.0 * math.sqrt(3.0)),
        0.5 * math.log(sigma1_sq(sol.rp)),
        log_f_euler_maclaurin=_quiet_em(rho),
    )
    return AsymptoticEstimate(n, _assemble(comp), EstimateMethod.EQUIVALENTS, sol, comp)


def closed_form_q(n: int) -> AsymptoticEstimate:
    """``q(n) ~ exp(pi sqrt(n/3)) / (4 * 3^{1/4} * n^{3/4})``.

    The components are the Euler-Maclaurin ``ln f(tau_n)``, ``n rho_n`` and
    ``sigma1(tau_n)``, which reassemble to the same logarithm.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    sol = tau_n(n)
    log_est = (
        math.pi * math.sqrt(n / 3.0) - math.log(4.0) - 0.25 * math.log(3.0)
        - 0.75 * math.log(n)
    )
    em = _quiet_em(sol.rp.r)
    comp = EstimateComponents(
        em,
        math.pi * math.sqrt(n) / (2.0 * math.sqrt(3.0)),
        0.5 * math.log(4.0 * math.sqrt(3.0) / math.pi) + 0.75 * math.log(n),
        log_f_euler_maclaurin=em,
    )
    return AsymptoticEstimate(n, log_est, EstimateMethod.CLOSED, sol, comp)


def estimate(family: FactorFamily, n: int, method: EstimateMethod | str,
             tol: float = DEFAULT_TOL) -> AsymptoticEstimate:
    method = EstimateMethod(method)
    if method is EstimateMethod.GENERAL:
        return estimate_general(family, n, tol)
    if family.kind is not FamilyKind.DISTINCT:
        raise ValueError(f"method {method.value!r} is only available for distinct parts")
    if method is EstimateMethod.EQUIVALENTS:
        return estimate_equivalents(n, tol)
    return closed_form_q(n)


def _assemble(c: EstimateComponents) -> float:
    return c.log_f + c.n_r - (LOG_SQRT_2PI + c.log_sigma)


def _quiet_em(rho: float) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return euler_maclaurin_logf(rho)
