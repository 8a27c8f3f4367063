"""
Moments of the associated random variables
==========================================

At radius ``t = exp(-r)`` the k-th factor becomes a variable ``X_k`` taking
the value ``k`` with probability ``t^k/(1+t^k)``.  Their sum has mean
``m``, variance ``sigma^2`` and third absolute moment sum ``Gamma3``; as
``r -> 0`` these follow simple power laws in ``r``.
"""

import math

from saddlecoef import FactorFamily, RadialParam, aggregate_moments, gamma3_constant, m1, sigma1_sq

family = FactorFamily.distinct()
C3 = gamma3_constant().C3
print(f"C3 = {C3:.12f}")

print(f"{'r':>6} {'m/m1':>12} {'s2/s1^2':>12} {'G3/s^3/sqrt(r)':>16} {'K':>8}")
for r in (0.5, 0.2, 0.1, 0.05, 0.02, 0.01):
    rp = RadialParam.from_r(r)
    s = aggregate_moments(family, rp)
    print(f"{r:6.2f} {s.m / m1(rp):12.8f} {s.sigma2 / sigma1_sq(rp):12.8f} "
          f"{s.gamma3 / s.sigma**3 / math.sqrt(r):16.8f} {s.truncation_k:8d}")

# m - m1 settles at -1/24 while sigma^2 matches its equivalent to rounding
rp = RadialParam.from_r(0.01)
print("m - m1 at r=0.01:", aggregate_moments(family, rp).m - m1(rp), "vs", -1 / 24)

print(aggregate_moments(family, RadialParam.from_r(0.1)).to_csv())
