"""
Diagnostics for the limit theorem
=================================

``clt_report`` gathers the Liapounov ratio, the largest single-factor share
of the variance and the strong Gaussian integral along a grid of radii.
The two auxiliary inequalities are checked on their own.
"""

import numpy as np

from saddlecoef import FactorFamily, RadialParam, clt_report
from saddlecoef.diagnostics import law_from_atoms, product_limit_demo, taylor_remainder

for r in (0.5, 0.2, 0.1, 0.05, 0.02):
    rep = clt_report(FactorFamily.distinct(), RadialParam.from_r(r))
    print(f"r={r:<5} ratio={rep.liapounov_ratio:.4f} sup_var={rep.sup_var_ratio:.2e} "
          f"scaled={rep.liapounov_scaled:.5f} gap={rep.hypothesis1_gap:+.2e} "
          f"L1={rep.strong_gaussian:.5f}")

# cubic Taylor remainder of one centred variable
law = law_from_atoms([0.0, 3.0, 7.0], [0.5, 0.3, 0.2])
for theta in (0.1, 1.0, 5.0):
    err, bound = taylor_remainder(law, 4.0, theta)
    print(f"theta={theta}: |L|={err:.3e} <= {bound:.3e}")

# prod (1 + u_n(t)) -> exp(S) when sup|u| -> 0 and sum u -> S
S = 0.5 + 0.3j
rep = product_limit_demo(lambda n, t: S * (1 - t) * t ** (n - 1), S, (0.5, 0.9, 0.99, 0.999),
                         n_terms=lambda t: int(60 / (1 - t)))
for row in rep.rows:
    print(f"t={row.t}: |prod - e^S| = {row.distance_to_limit:.2e}")
print("within bound:", rep.all_within_bound, "converging:", rep.converging)
print(np.exp(S))
