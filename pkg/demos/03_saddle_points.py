"""
Saddle points
=============

The saddle radius solves ``m(t_n) = n``.  For distinct parts the equivalent
``m1`` gives the closed form ``tau_n = exp(-pi / (2 sqrt(3 n)))``.
"""

from saddlecoef import FactorFamily, hypothesis1_gap, solve_saddle, tau_n
from saddlecoef.errors import BracketError

family = FactorFamily.distinct()
for n in (10, 100, 1000, 10000):
    exact = solve_saddle(family, n)
    closed = tau_n(n)
    print(f"n={n:6d}  r_exact={exact.rp.r:.10f}  r_closed={closed.rp.r:.10f}  "
          f"gap={hypothesis1_gap(family, n):+.3e}")

# the geometric family has its own saddle, no closed form needed
print(solve_saddle(FactorFamily.geometric(), 100).csv_row())

# a finite product cannot reach every n
try:
    solve_saddle(FactorFamily.custom([[1, 1], [1, 0, 1]]), 5)
except BracketError as exc:
    print("bracket failure:", exc)
