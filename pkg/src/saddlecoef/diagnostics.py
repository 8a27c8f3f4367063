"""Numerical reports on the hypotheses of the Gaussian-limit argument.

``clt_report`` gathers the Liapounov-type ratios at one radius.  The two
checkers below it test the auxiliary inequalities in isolation: the cubic
Taylor remainder of a single centred factor and the convergence of
``prod (1 + u_n)`` to ``exp(sum u_n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .charfn import DEFAULT_QUAD_TOL, StandardizedCharFn, _strong_gaussian
from .moments import DEFAULT_TOL, FactorLaw, RadialParam, aggregate_moments, m1, sigma1_sq
from .series import FactorFamily, FamilyKind

TAYLOR_SLACK = 1e-12
STANDARD_R_GRID = (0.5, 0.2, 0.1, 0.05, 0.02)

CLT_CSV_COLUMNS = (
    "r", "t", "liapounov_ratio", "sup_var_ratio", "liapounov_scaled",
    "hypothesis1_gap", "strong_gaussian",
)


@dataclass(frozen=True)
class CltReport:
    rp: RadialParam
    liapounov_ratio: float
    sup_var_ratio: float
    liapounov_scaled: float
    hypothesis1_gap: float | None
    strong_gaussian: float

    def csv_row(self) -> list[str]:
        gap = "" if self.hypothesis1_gap is None else format(self.hypothesis1_gap, ".17g")
        return [
            format(self.rp.r, ".17g"), format(self.rp.t, ".17g"),
            format(self.liapounov_ratio, ".17g"), format(self.sup_var_ratio, ".17g"),
            format(self.liapounov_scaled, ".17g"), gap,
            format(self.strong_gaussian, ".17g"),
        ]


def clt_report(family: FactorFamily, rp: RadialParam, tol: float = DEFAULT_TOL,
               quad_tol: float = DEFAULT_QUAD_TOL) -> CltReport:
    """Liapounov ratio, variance dominance and the strong Gaussian integral at ``rp``.

    For distinct parts ``hypothesis1_gap`` is ``(m - m1) / sigma1`` at this
    radius (the saddle gap at ``n = m1(t)``); other families leave it unset.
    """
    summary = aggregate_moments(family, rp, tol)
    ratio = summary.gamma3 / summary.sigma2**1.5
    gap = None
    if family.kind is FamilyKind.DISTINCT:
        gap = (summary.m - m1(rp)) / math.sqrt(sigma1_sq(rp))
    sg = _strong_gaussian(StandardizedCharFn(family, rp, tol, summary), quad_tol).value
    return CltReport(rp, ratio, summary.sup_var_ratio, ratio / math.sqrt(rp.r), gap, sg)


def taylor_remainder(law: FactorLaw, sigma_total: float, theta: float) -> tuple[float, float]:
    """``(|L|, bound)`` for ``E e^{i theta Y/sigma} = 1 - theta^2/2 (s_k/sigma)^2 + L``."""
    vals = np.array([v for v, _ in law.support], dtype=float)
    probs = np.array([p for _, p in law.support])
    y = vals - law.mean
    expect = complex(np.dot(probs, np.exp(1j * theta * y / sigma_total)))
    L = expect - (1.0 - 0.5 * theta**2 * law.variance / sigma_total**2)
    bound = abs(theta) ** 3 / (6.0 * sigma_total**3) * law.abs_central_3
    return abs(L), bound


def taylor_remainder_check(law: FactorLaw, sigma_total: float, theta: float) -> bool:
    """Whether the cubic remainder bound holds for a finite-support law.

    The law's ``mean``, ``variance`` and ``abs_central_3`` must be those of
    its support; the check uses them as given.
    """
    err, bound = taylor_remainder(law, sigma_total, theta)
    return err <= bound + TAYLOR_SLACK


def law_from_atoms(values: Sequence[float], probs: Sequence[float], k: int = 0) -> FactorLaw:
    """Finite law with moments computed from its atoms."""
    v = np.asarray(values, dtype=float)
    p = np.asarray(probs, dtype=float)
    p = p / p.sum()
    mean = math.fsum(v * p)
    d = v - mean
    return FactorLaw(
        k, tuple(zip(v.tolist(), p.tolist())), mean,
        math.fsum(d * d * p), math.fsum(np.abs(d) ** 3 * p),
    )


@dataclass(frozen=True)
class ProductLimitRow:
    t: float
    n_terms: int
    product: complex
    sum_u: complex
    sup_abs: float
    sum_abs: float
    log_gap: float  # |ln prod - sum u|
    lemma_bound: float  # 2 M sup|u|, valid while sup|u| < 1/2
    distance_to_limit: float  # |prod - e^S|

    @property
    def within_bound(self) -> bool:
        return self.sup_abs < 0.5 and self.log_gap <= self.lemma_bound + 1e-12


@dataclass(frozen=True)
class ProductLimitReport:
    S: complex
    rows: tuple[ProductLimitRow, ...]

    @property
    def all_within_bound(self) -> bool:
        return all(row.within_bound for row in self.rows)

    @property
    def converging(self) -> bool:
        d = [row.distance_to_limit for row in self.rows]
        return all(b <= a + 1e-12 for a, b in zip(d, d[1:]))


def product_limit_demo(
    u: Callable[[np.ndarray, float], np.ndarray],
    S: complex,
    t_grid: Sequence[float],
    n_terms: Callable[[float], int] | int = 200,
) -> ProductLimitReport:
    """Evaluate ``prod_{n<=N} (1 + u(n, t))`` along ``t -> 1``.

    ``u`` maps an integer array ``n = 1..N`` and ``t`` to complex terms.  Each
    row compares the product with ``exp(sum u)`` through the bound
    ``|ln prod - sum u| <= 2 M sup|u|`` (``M = sum |u|``) and records the
    distance to the limit ``exp(S)``.
    """
    rows = []
    for t in t_grid:
        N = n_terms(t) if callable(n_terms) else n_terms
        n = np.arange(1, N + 1)
        terms = np.asarray(u(n, t), dtype=complex)
        prod = complex(np.prod(1.0 + terms))
        sum_u = complex(math.fsum(terms.real), math.fsum(terms.imag))
        mags = np.abs(terms)
        sup_abs = float(mags.max()) if mags.size else 0.0
        sum_abs = math.fsum(mags)
        log_gap = abs(complex(np.sum(np.log1p(terms))) - sum_u)
        rows.append(ProductLimitRow(
            float(t), N, prod, sum_u, sup_abs, sum_abs, log_gap,
            2.0 * sum_abs * sup_abs, abs(prod - complex(np.exp(S))),
        ))
    return ProductLimitReport(complex(S), tuple(rows))
