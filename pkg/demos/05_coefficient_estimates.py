"""
Asymptotic estimates against exact counts
=========================================

``a_n ~ f(t_n) / (sqrt(2 pi) sigma(t_n) t_n^n)``.  With the closed-form
saddle and Euler-Maclaurin this becomes
``q(n) ~ exp(pi sqrt(n/3)) / (4 3^(1/4) n^(3/4))``.
"""

import math

from saddlecoef import FactorFamily, estimate, expand_product

family = FactorFamily.distinct()
ns = (100, 400, 1600, 6400)
q = expand_product(family, max(ns)).coeffs

print(f"{'n':>6} {'closed':>10} {'general':>10} {'equivalents':>12}")
for n in ns:
    ratios = [math.exp(math.log(q[n]) - estimate(family, n, m).log_estimate)
              for m in ("closed", "general", "equivalents")]
    print(f"{n:6d} " + " ".join(f"{x:10.6f}" for x in ratios))

# the general formula applies to any family, e.g. unrestricted partitions
p = expand_product(FactorFamily.geometric(), 2000).coeffs
for n in (100, 1000, 2000):
    est = estimate(FactorFamily.geometric(), n, "general")
    print(f"p({n}) / estimate = {math.exp(math.log(p[n]) - est.log_estimate):.6f}")

# the Euler-Maclaurin value of ln f(tau_n) next to the exact sum
est = estimate(family, 10**4, "equivalents")
print("ln f(tau_n): sum", est.components.log_f, "Euler-Maclaurin",
      est.components.log_f_euler_maclaurin)
