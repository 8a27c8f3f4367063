"""Per-factor laws and truncated aggregate moment series.

At radius ``t = exp(-r)`` factor ``k`` induces the law with masses
``a_{j,k} t**j / f_k(t)`` on ``j``.  The independent variables ``X_k`` sum to
``X_t``; this module computes ``m = E X_t``, ``sigma2 = Var X_t`` and
``gamma3 = sum_k E|X_k - E X_k|**3`` with a provable truncation rule.

Tail rule.  For the infinite families each per-factor moment of order ``p``
is dominated by ``c_p k**p x**k`` (``x = t``).  Writing ``k = K + 1 + j``,
``k**p <= (K+1)**p (1+j)**p`` and ``(1+j)**p <= (j+1)...(j+p)``, so

    sum_{k>K} k**p x**k <= p! (K+1)**p x**(K+1) / (1-x)**(p+1).

``K`` grows until this bound is below ``tol`` times the partial sum for
``p = 1, 2, 3``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import TruncationError
from .quadrature import adaptive_simpson
from .series import FactorFamily, FamilyKind

DEFAULT_TOL = 1e-12
DEFAULT_K_CAP = 10**8
_CHUNK = 1 << 18
_ULP1 = 2.0**-52

MOMENT_CSV_COLUMNS = (
    "r", "t", "m", "sigma2", "gamma3", "sup_var_ratio", "truncation_k", "tail_bound",
)


@dataclass(frozen=True)
class RadialParam:
    """Radius ``t = exp(-r)``; ``r`` is authoritative and ``t`` is derived."""

    r: float
    t: float

    def __post_init__(self):
        if not (self.r > 0 and math.isfinite(self.r)):
            raise ValueError(f"r must be positive and finite, got {self.r}")
        if not 0 < self.t < 1:
            raise ValueError(f"t must lie in (0, 1), got {self.t}")
        # t near 1 carries one rounding of exp, hence the absolute ulp slack
        if abs(self.r + math.log(self.t)) > 1e-15 * self.r + _ULP1 / self.t:
            raise ValueError(f"inconsistent pair r={self.r}, t={self.t}")

    @classmethod
    def from_r(cls, r: float) -> RadialParam:
        r = float(r)
        return cls(r, math.exp(-r))

    @classmethod
    def from_t(cls, t: float) -> RadialParam:
        t = float(t)
        return cls(-math.log(t), t)


@dataclass(frozen=True)
class FactorLaw:
    k: int
    support: tuple[tuple[int, float], ...]
    mean: float
    variance: float
    abs_central_3: float


@dataclass(frozen=True)
class MomentSummary:
    rp: RadialParam
    m: float
    sigma2: float
    gamma3: float
    sup_var_ratio: float
    truncation_k: int
    tail_bound: float

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    def csv_row(self) -> list[str]:
        vals = (self.rp.r, self.rp.t, self.m, self.sigma2, self.gamma3, self.sup_var_ratio)
        return [format(v, ".17g") for v in vals] + [
            str(self.truncation_k), format(self.tail_bound, ".17g"),
        ]

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(MOMENT_CSV_COLUMNS)
        w.writerow(self.csv_row())
        return buf.getvalue()


# -- per-factor moments -------------------------------------------------------

def _factor_arrays(family: FactorFamily, k: np.ndarray, r: float):
    """Mean, variance and third absolute central moment of ``X_k`` (arrays)."""
    q = np.exp(-r * k)
    kf = k.astype(float)
    if family.kind is FamilyKind.DISTINCT:
        p = q / (1.0 + q)
        mean = kf * p
        var = kf * kf * q / (1.0 + q) ** 2
        abs3 = kf**3 * (q**3 + q) / (1.0 + q) ** 4
        return mean, var, abs3
    if family.kind is FamilyKind.GEOMETRIC:
        om = -np.expm1(-r * kf)  # 1 - q without cancellation
        mu = q / om
        mean = kf * mu
        var = kf * kf * q / om**2
        abs3 = kf**3 * _geometric_abs3(q, om, mu)
        return mean, var, abs3
    raise TypeError("custom families are summed factor by factor")


def _geometric_abs3(q: np.ndarray, om: np.ndarray, mu: np.ndarray) -> np.ndarray:
    # E|G-mu|^3 = E(G-mu)^3 + 2 E[(mu-G)^3; G < mu],  P(G=j) = (1-q) q^j
    third = q * (1.0 + q) / om**3
    lower = mu**3 * om  # the j = 0 atom, always below the mean
    for i in np.nonzero(mu > 1.0)[0]:
        j = np.arange(1, math.ceil(mu[i]))
        lower[i] += math.fsum((mu[i] - j) ** 3 * om[i] * q[i] ** j)
    return third + 2.0 * lower


def _custom_distribution(coeffs, r: float) -> tuple[np.ndarray, np.ndarray]:
    deg = np.array([j for j, c in enumerate(coeffs) if c != 0], dtype=np.int64)
    w = np.array([float(coeffs[j]) for j in deg]) * np.exp(-r * deg)
    return deg, w / w.sum()


def _law_moments(values: np.ndarray, probs: np.ndarray) -> tuple[float, float, float]:
    mean = math.fsum(values * probs)
    dev = values - mean
    return mean, math.fsum(dev * dev * probs), math.fsum(np.abs(dev) ** 3 * probs)


def factor_law(family: FactorFamily, k: int, rp: RadialParam) -> FactorLaw:
    """Law of ``X_k`` at radius ``rp``.

    For the geometric family the support is infinite; atoms are listed until
    the remaining mass drops below 1e-16, while the moments are exact.
    """
    if k < 1:
        raise ValueError("factor index starts at 1")
    r = rp.r
    if family.kind is FamilyKind.CUSTOM:
        coeffs = family.custom_factors[k - 1] if k <= len(family.custom_factors) else (1,)
        deg, probs = _custom_distribution(coeffs, r)
        mean, var, abs3 = _law_moments(deg.astype(float), probs)
        support = tuple((int(d), float(p)) for d, p in zip(deg, probs))
        return FactorLaw(k, support, mean, var, abs3)

    mean, var, abs3 = (float(a[0]) for a in _factor_arrays(family, np.array([k]), r))
    q = math.exp(-r * k)
    if family.kind is FamilyKind.DISTINCT:
        support = ((0, 1.0 / (1.0 + q)), (k, q / (1.0 + q)))
    else:
        om = -math.expm1(-r * k)
        n_atoms = max(1, math.ceil(math.log(1e-16) / math.log(q))) if q > 0 else 1
        support = tuple((k * j, om * q**j) for j in range(n_atoms))
    return FactorLaw(k, support, mean, var, abs3)


def _tail_constants(family: FactorFamily, x: float, om: float) -> tuple[float, float, float]:
    """``c_p`` with ``moment_p(X_k) <= c_p k**p x**k`` for p = 1, 2, 3."""
    if family.kind is FamilyKind.DISTINCT:
        return 1.0, 1.0, 1.0
    # geometric: E|G-mu|^3 <= 4(E G^3 + mu^3) <= 8 E G^3 <= 48 q / (1-q)^3
    return 1.0 / om, 1.0 / om**2, 48.0 / om**3


def moment_tail_bound(p: int, K: int, r: float, c: float = 1.0) -> float:
    """Upper bound for ``sum_{k>K} c k**p exp(-r k)``."""
    om = -math.expm1(-r)
    log_b = (
        math.log(c) + math.lgamma(p + 1) + p * math.log(K + 1) - r * (K + 1)
        - (p + 1) * math.log(om)
    )
    return math.exp(log_b) if log_b < 700 else math.inf


def _sum_custom(family: FactorFamily, r: float):
    means, vars_, abs3s = [], [], []
    for coeffs in family.custom_factors:
        deg, probs = _custom_distribution(coeffs, r)
        mean, var, abs3 = _law_moments(deg.astype(float), probs)
        means.append(mean)
        vars_.append(var)
        abs3s.append(abs3)
    if not means:
        return 0.0, 0.0, 0.0, 0.0, 0
    return math.fsum(means), math.fsum(vars_), math.fsum(abs3s), max(vars_), len(means)


def truncation_index(r: float, tol: float, k_cap: int = DEFAULT_K_CAP) -> int:
    """Smallest index the tail rule could possibly accept (``x**K <= tol``)."""
    k_min = max(1, math.ceil(math.log(1.0 / tol) / r))
    if k_min > k_cap:
        raise TruncationError(
            f"r={r} needs more than {k_cap} factors for tol={tol}"
        )
    return k_min


def aggregate_moments(
    family: FactorFamily,
    rp: RadialParam,
    tol: float = DEFAULT_TOL,
    k_cap: int = DEFAULT_K_CAP,
) -> MomentSummary:
    """Truncated sums of the factor moments, all three series in one pass.

    Raises:
        TruncationError: the tail rule needs more than ``k_cap`` factors.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    r = rp.r
    if family.kind is FamilyKind.CUSTOM:
        m, s2, g3, vmax, K = _sum_custom(family, r)
        ratio = vmax / s2 if s2 > 0 else 0.0
        return MomentSummary(rp, m, s2, g3, ratio, K, 0.0)

    om = -math.expm1(-r)
    consts = _tail_constants(family, rp.t, om)
    end = truncation_index(r, tol, k_cap)
    start = 1
    parts: tuple[list, list, list] = ([], [], [])
    vmax = 0.0
    while True:
        for lo in range(start, end + 1, _CHUNK):
            k = np.arange(lo, min(lo + _CHUNK - 1, end) + 1, dtype=np.int64)
            for store, arr in zip(parts, _factor_arrays(family, k, r)):
                store.append(math.fsum(arr))
                if store is parts[1]:
                    vmax = max(vmax, float(arr.max()))
        sums = [math.fsum(p) for p in parts]
        rel = max(
            moment_tail_bound(p, end, r, c) / s for p, c, s in zip((1, 2, 3), consts, sums)
        )
        if rel <= tol:
            break
        start, end = end + 1, 2 * end
        if end > k_cap:
            raise TruncationError(f"r={r} needs more than {k_cap} factors for tol={tol}")

    m, s2, g3 = sums
    # beyond the peak at k = 2/r the variance majorant c2 k^2 x^k is decreasing
    kk = max(end + 1, 2.0 / r)
    tail_sup = consts[1] * kk * kk * math.exp(-r * kk)
    sup_ratio = max(vmax, tail_sup) / s2
    return MomentSummary(rp, m, s2, g3, sup_ratio, end, rel)


def m1(rp: RadialParam) -> float:
    """Closed-form equivalent ``pi**2 / (12 r**2)`` of the distinct-parts mean."""
    return math.pi**2 / (12.0 * rp.r**2)


def sigma1_sq(rp: RadialParam) -> float:
    """Closed-form equivalent ``pi**2 / (6 r**3)`` of the distinct-parts variance."""
    return math.pi**2 / (6.0 * rp.r**3)


class Gamma3Constant(NamedTuple):
    C: float
    C3: float
    error: float


def _gamma3_integrand(u: float) -> float:
    e = math.exp(-u)
    return u**3 * (e**3 + e) / (1.0 + e) ** 4


def gamma3_constant(tol: float = 1e-10) -> Gamma3Constant:
    """``C = int_0^inf u^3 (e^{-3u} + e^{-u}) / (1 + e^{-u})^4 du`` and
    ``C3 = C / (pi^2/6)^{3/2}``, so that ``gamma3 ~ C / r**4`` and
    ``gamma3 / sigma**3 ~ C3 sqrt(r)`` for distinct parts.
    """
    # integrand <= 2 u^3 e^{-u}; the tail beyond 80 is below 1e-27
    res = adaptive_simpson(_gamma3_integrand, 0.0, 80.0, tol)
    C = res.value
    return Gamma3Constant(C, C / (math.pi**2 / 6.0) ** 1.5, res.error)
