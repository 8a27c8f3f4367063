"""Saddle points: ``m(t_n) = n`` solved numerically, and the closed-form ``tau_n``."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import BracketError
from .moments import (
    DEFAULT_TOL,
    RadialParam,
    aggregate_moments,
    m1,
    sigma1_sq,
)
from .series import FactorFamily, FamilyKind

DEFAULT_SOLVER_TOL = 1e-9
_MIN_WIDTH = 1e-14
_MAX_EXPANSIONS = 6
_MONOTONE_GRID = 9

SADDLE_CSV_COLUMNS = ("n", "method", "r", "t", "m", "residual")


class SaddleMethod(str, enum.Enum):
    NUMERIC_EXACT = "NumericExact"
    CLOSED_FORM_EQUIVALENT = "ClosedFormEquivalent"


@dataclass(frozen=True)
class SaddleSolution:
    n: int
    rp: RadialParam
    m_at_solution: float
    method: SaddleMethod
    residual: float

    def csv_row(self) -> list[str]:
        return [
            str(self.n), self.method.value, format(self.rp.r, ".17g"),
            format(self.rp.t, ".17g"), format(self.m_at_solution, ".17g"),
            format(self.residual, ".17g"),
        ]


def closed_form_rho(n: int) -> float:
    """``rho_n = pi / (2 sqrt(3) sqrt(n))``, the root of ``m1(exp(-rho)) = n``."""
    return math.pi / (2.0 * math.sqrt(3.0) * math.sqrt(n))


def tau_n(n: int) -> SaddleSolution:
    if n < 1:
        raise ValueError("n must be at least 1")
    rp = RadialParam.from_r(closed_form_rho(n))
    mv = m1(rp)
    return SaddleSolution(n, rp, mv, SaddleMethod.CLOSED_FORM_EQUIVALENT, abs(mv - n))


def _mean(family: FactorFamily, r: float, tol: float) -> float:
    return aggregate_moments(family, RadialParam.from_r(r), tol).m


def solve_saddle(
    family: FactorFamily,
    n: int,
    tol: float = DEFAULT_SOLVER_TOL,
    moment_tol: float = DEFAULT_TOL,
) -> SaddleSolution:
    """Bisection in ``r`` for ``m(exp(-r)) = n``.

    The bracket starts at ``[rho/4, 4 rho]`` around the closed-form guess and
    is widened by factors of 4 (at most a few times) while ``n`` is outside
    it.  ``m`` must decrease in ``r`` across a sampled grid of the bracket.

    Raises:
        BracketError: ``n`` is not reachable or monotonicity fails.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    guess = closed_form_rho(n)
    r_lo, r_hi = guess / 4.0, guess * 4.0
    m_lo, m_hi = _mean(family, r_lo, moment_tol), _mean(family, r_hi, moment_tol)
    for _ in range(_MAX_EXPANSIONS):
        if m_lo > n > m_hi:
            break
        if m_lo <= n:
            r_lo /= 4.0
            m_lo = _mean(family, r_lo, moment_tol)
        if m_hi >= n:
            r_hi *= 4.0
            m_hi = _mean(family, r_hi, moment_tol)
    if not m_lo > n > m_hi:
        raise BracketError(
            f"n={n} not bracketed: m(r={r_lo:.6g})={m_lo:.6g}, m(r={r_hi:.6g})={m_hi:.6g}"
        )

    grid = np.geomspace(r_lo, r_hi, _MONOTONE_GRID)
    means = [_mean(family, float(r), moment_tol) for r in grid]
    if any(b >= a for a, b in zip(means, means[1:])):
        raise BracketError(f"m is not strictly monotone on [{r_lo:.6g}, {r_hi:.6g}]")

    target = tol * max(1.0, float(n))
    while True:
        r_mid = 0.5 * (r_lo + r_hi)
        m_mid = _mean(family, r_mid, moment_tol)
        if abs(m_mid - n) <= target or r_hi - r_lo < _MIN_WIDTH:
            break
        if m_mid > n:
            r_lo = r_mid
        else:
            r_hi = r_mid
    return SaddleSolution(
        n, RadialParam.from_r(r_mid), m_mid, SaddleMethod.NUMERIC_EXACT, abs(m_mid - n)
    )


def hypothesis1_gap(family: FactorFamily, n: int, tol: float = DEFAULT_TOL) -> float:
    """``(m(tau_n) - m1(tau_n)) / sigma1(tau_n)``.

    ``m1`` and ``sigma1`` are the distinct-parts equivalents, so the value is
    only meaningful for that family.
    """
    if family.kind is not FamilyKind.DISTINCT:
        raise ValueError("the closed-form equivalents exist for distinct parts only")
    rp = tau_n(n).rp
    summary = aggregate_moments(family, rp, tol)
    return (summary.m - m1(rp)) / math.sqrt(sigma1_sq(rp))
