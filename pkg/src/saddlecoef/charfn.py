"""Characteristic function of the standardized sum and the bounds on it.

``phi_Z(x) = exp(-i x m / sigma) * prod_k f_k(t e^{i x / sigma}) / f_k(t)``.
The product is accumulated as a sum of complex logarithms, one per factor,
each already centred by its own ``i x E X_k / sigma``; only the real part
(``ln |phi|``) is branch independent, and the value is recovered with a
single ``exp``, so per-factor branch choices cannot change it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .moments import (
    DEFAULT_TOL,
    MomentSummary,
    RadialParam,
    aggregate_moments,
    factor_law,
)
from .quadrature import QuadResult, integrate_split
from .series import FactorFamily, FamilyKind

DEFAULT_QUAD_TOL = 1e-8
INEQUALITY_SLACK = 1e-9
CRAMER_SLACK = 1e-12
_BLOCK = 1 << 22

CHARFN_CSV_COLUMNS = ("theta", "re", "im", "abs", "gauss", "abs_diff")


@dataclass(frozen=True)
class CharFnSample:
    rp: RadialParam
    theta: float
    value: complex
    log_abs: float


class StandardizedCharFn:
    """Evaluator of ``ln phi_Z`` for one family at one radius.

    Moments and the factor range are fixed at construction, so repeated
    evaluation (quadrature, grids) only pays for the per-factor logs.
    """

    def __init__(self, family: FactorFamily, rp: RadialParam, tol: float = DEFAULT_TOL,
                 moments: MomentSummary | None = None):
        self.family = family
        self.rp = rp
        self.moments = moments if moments is not None else aggregate_moments(family, rp, tol)
        if not self.moments.sigma2 > 0:
            raise ValueError("sigma(t) must be positive")
        self.sigma = self.moments.sigma
        r = rp.r
        if family.kind is FamilyKind.CUSTOM:
            self._custom = []
            for coeffs in family.custom_factors:
                deg = np.array([j for j, c in enumerate(coeffs) if c != 0], dtype=float)
                w = np.array([float(c) for c in coeffs if c != 0]) * np.exp(-r * deg)
                w /= w.sum()
                self._custom.append((deg, w, float(np.dot(deg, w))))
            return
        K = self.moments.truncation_k
        self.k = np.arange(1, K + 1, dtype=float)
        self.q = np.exp(-r * self.k)
        if family.kind is FamilyKind.DISTINCT:
            self.mean_k = self.k * self.q / (1.0 + self.q)
        else:
            self.mean_k = self.k * self.q / -np.expm1(-r * self.k)

    def log_phi(self, theta) -> np.ndarray:
        """``ln phi_Z(theta)`` (elementwise; imaginary part defined mod 2 pi)."""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        phase = theta / self.sigma
        if self.family.kind is FamilyKind.CUSTOM:
            out = np.zeros(theta.shape, dtype=complex)
            for deg, w, mean in self._custom:
                e = np.exp(1j * np.outer(phase, deg - mean))
                out += np.log(e @ w)
            return out
        out = np.empty(theta.shape, dtype=complex)
        step = max(1, _BLOCK // self.k.size)
        for lo in range(0, theta.size, step):
            ph = phase[lo:lo + step, None]
            w = self.q * np.exp(1j * ph * self.k)
            if self.family.kind is FamilyKind.DISTINCT:
                terms = np.log1p(w) - np.log1p(self.q)
            else:
                terms = np.log1p(-self.q) - np.log1p(-w)
            terms -= 1j * ph * self.mean_k
            out[lo:lo + step] = terms.sum(axis=1)
        return out

    def __call__(self, theta) -> np.ndarray:
        return np.exp(self.log_phi(theta))

    def abs_diff_gauss(self, x: float) -> float:
        """``|phi_Z(x) - exp(-x^2/2)|`` at a scalar point."""
        return abs(complex(np.exp(self.log_phi(x)[0])) - math.exp(-0.5 * x * x))

    @property
    def lemma_a_boundary(self) -> float:
        """``sigma**3 / (4 gamma3)``: inside it ``|phi_Z| <= exp(-theta^2/3)``."""
        return self.sigma**3 / (4.0 * self.moments.gamma3)


def phi_Z(family: FactorFamily, rp: RadialParam, theta: float,
          tol: float = DEFAULT_TOL) -> CharFnSample:
    if theta == 0:
        return CharFnSample(rp, 0.0, 1.0 + 0.0j, 0.0)
    lp = complex(StandardizedCharFn(family, rp, tol).log_phi(theta)[0])
    return CharFnSample(rp, float(theta), complex(np.exp(lp)), lp.real)


def _strong_gaussian(cf: StandardizedCharFn, quad_tol: float) -> QuadResult:
    edge = math.pi * cf.sigma
    breaks = [0.0, edge]
    if cf.lemma_a_boundary < edge:
        breaks.insert(1, cf.lemma_a_boundary)
    # |phi(-x) - g(-x)| = |conj(phi(x)) - g(x)|: integrate one side, double
    res = integrate_split(cf.abs_diff_gauss, breaks, 0.5 * quad_tol)
    return QuadResult(2.0 * res.value, 2.0 * res.error, res.evaluations)


def strong_gaussian_integral(family: FactorFamily, rp: RadialParam,
                             quad_tol: float = DEFAULT_QUAD_TOL,
                             tol: float = DEFAULT_TOL) -> float:
    """``int_{-pi sigma}^{pi sigma} |phi_Z(x) - exp(-x^2/2)| dx``.

    Raises:
        QuadratureError: refinement hit the depth cap (carries the partial value).
    """
    if quad_tol <= 0:
        raise ValueError("quad_tol must be positive")
    return _strong_gaussian(StandardizedCharFn(family, rp, tol), quad_tol).value


# -- inequalities ---------------------------------------------------------------

def cramer_bound_check(mean0_second: float, abs_third: float, phi_abs: float,
                       xi: float) -> bool:
    """``|phi(xi)|^2 <= exp(-xi^2 E Z^2 + (4/3)|xi|^3 E|Z|^3)`` for centred ``Z``.

    Inside ``|xi| <= E Z^2 / (2 E|Z|^3)`` the sharper ``exp(-xi^2 E Z^2 / 3)``
    is required as well.
    """
    if not mean0_second > 0:
        raise ValueError("second moment must be positive")
    lhs = phi_abs * phi_abs
    exponent = -xi * xi * mean0_second + 4.0 / 3.0 * abs(xi) ** 3 * abs_third
    ok = exponent >= 0 or lhs <= math.exp(exponent) + CRAMER_SLACK
    if abs(xi) * 2.0 * abs_third <= mean0_second:
        ok = ok and lhs <= math.exp(-xi * xi * mean0_second / 3.0) + CRAMER_SLACK
    return ok


@dataclass(frozen=True)
class CramerReport:
    checks: int
    violations: int
    xi_max: float


def cramer_grid_check(family: FactorFamily, rp: RadialParam, points: int = 64,
                      factors: int = 50, tol: float = DEFAULT_TOL) -> CramerReport:
    """Cramér's bound on a grid, for single factors and for ``Z_t`` itself.

    Single factors: each centred ``X_k - E X_k`` against its exact
    characteristic function, ``|xi|`` up to ``4 / sigma_k``.  For ``Z_t`` the
    product of the per-factor bounds is used, i.e. second moment 1 and third
    moment ``gamma3 / sigma^3``, with ``xi`` up to ``sigma^3 / (4 gamma3)``.
    """
    cf = StandardizedCharFn(family, rp, tol)
    checks = violations = 0
    n_fac = cf.moments.truncation_k if family.n_factors is None else family.n_factors
    for k in np.unique(np.geomspace(1, max(1, n_fac), factors).astype(int)):
        law = factor_law(family, int(k), rp)
        if law.variance <= 0:
            continue
        vals = np.array([v for v, _ in law.support], dtype=float)
        probs = np.array([p for _, p in law.support])
        for xi in np.linspace(-4.0, 4.0, points) / math.sqrt(law.variance):
            phi_abs = abs(np.dot(probs, np.exp(1j * xi * vals)))
            checks += 1
            violations += not cramer_bound_check(law.variance, law.abs_central_3, phi_abs, xi)
    third = cf.moments.gamma3 / cf.sigma**3
    xi_max = cf.lemma_a_boundary
    grid = np.linspace(-xi_max, xi_max, points)
    for xi, lp in zip(grid, cf.log_phi(grid)):
        checks += 1
        violations += not cramer_bound_check(1.0, third, math.exp(lp.real), float(xi))
    return CramerReport(checks, violations, xi_max)


@dataclass(frozen=True)
class LemmaAReport:
    boundary: float
    thetas: np.ndarray
    log_abs: np.ndarray
    max_violation: float

    @property
    def violations(self) -> int:
        return int(np.sum(self.log_abs > -self.thetas**2 / 3.0 + INEQUALITY_SLACK))


def lemmaA_region_check(family: FactorFamily, rp: RadialParam, points: int = 64,
                        tol: float = DEFAULT_TOL) -> LemmaAReport:
    """Check ``|phi_Z(theta)| <= exp(-theta^2/3)`` on ``|theta| <= sigma^3/(4 gamma3)``.

    The grid is ``theta = 0`` plus ``points - 1`` log-spaced values reaching
    the boundary.  ``max_violation`` is ``max(|phi| - exp(-theta^2/3))``.
    """
    cf = StandardizedCharFn(family, rp, tol)
    b = cf.lemma_a_boundary
    thetas = np.concatenate(([0.0], np.geomspace(b * 1e-4, b, points - 1)))
    log_abs = cf.log_phi(thetas).real
    log_abs[0] = 0.0
    excess = np.exp(log_abs) - np.exp(-thetas**2 / 3.0)
    return LemmaAReport(b, thetas, log_abs, float(excess.max()))


@dataclass(frozen=True)
class LemmaBReport:
    C: float
    theta_lo: float
    theta_hi: float
    thetas: np.ndarray
    log_abs: np.ndarray
    B_emp: float
    analytic_bound: np.ndarray | None
    edge_bound: float | None

    @property
    def violations(self) -> int:
        bad = int(self.B_emp <= 0) + int(np.sum(self.log_abs > INEQUALITY_SLACK))
        if self.analytic_bound is not None:
            bad += int(np.sum(self.log_abs > self.analytic_bound + INEQUALITY_SLACK))
            bad += int(self.log_abs[-1] > self.edge_bound + INEQUALITY_SLACK)
        return bad


def distinct_log_abs_majorant(t: float, phase) -> np.ndarray:
    """``(1/4)(Re(w/(1-w)) - t/(1-t))`` with ``w = t e^{i phase}``.

    Bounds ``ln |phi_Z(theta)|`` for distinct parts at ``phase = theta/sigma``;
    it decreases in ``phase`` on ``[0, pi]``.
    """
    c = np.cos(phase)
    return 0.25 * ((t * c - t * t) / (1.0 - 2.0 * t * c + t * t) - t / (1.0 - t))


def lemmaB_region_check(family: FactorFamily, rp: RadialParam, C: float = 1.0,
                        points: int = 256, tol: float = DEFAULT_TOL) -> LemmaBReport:
    """Empirical ``B = -r max ln|phi_Z|`` over ``C/sqrt(r) <= theta <= pi sigma``.

    For distinct parts the pointwise analytic majorant is evaluated too, and
    at the far edge ``theta = pi sigma`` the coarser form with ``cos(C r)``.
    """
    if C <= 0:
        raise ValueError("C must be positive")
    cf = StandardizedCharFn(family, rp, tol)
    lo, hi = C / math.sqrt(rp.r), math.pi * cf.sigma
    if lo >= hi:
        raise ValueError(f"empty region: C/sqrt(r)={lo:.6g} >= pi*sigma={hi:.6g}")
    thetas = np.geomspace(lo, hi, points)
    log_abs = cf.log_phi(thetas).real
    B_emp = -rp.r * float(log_abs.max())
    analytic = edge = None
    if family.kind is FamilyKind.DISTINCT:
        analytic = distinct_log_abs_majorant(rp.t, thetas / cf.sigma)
        edge = float(distinct_log_abs_majorant(rp.t, C * rp.r))
    return LemmaBReport(C, lo, hi, thetas, log_abs, B_emp, analytic, edge)
