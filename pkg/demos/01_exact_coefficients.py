"""
Exact coefficients of an infinite product
=========================================

The product ``prod (1 + z^k)`` counts partitions into distinct parts.  Three
independent routes give the same numbers: a knapsack-style table, the
general product expansion, and plain backtracking.
"""

from fractions import Fraction

from saddlecoef import (
    FactorFamily,
    brute_force_distinct,
    distinct_partition_count,
    expand_product,
)

# the first coefficients of (1+z)(1+z^2)(1+z^3)...
table = expand_product(FactorFamily.distinct(), 15)
print("q(0..15):", list(table.coeffs))

# all three oracles agree
for n in (10, 25, 40):
    print(n, distinct_partition_count(n), expand_product(FactorFamily.distinct(), n)[n],
          brute_force_distinct(n))

# unrestricted partitions come from the geometric family 1/(1 - z^k)
print("p(0..15):", list(expand_product(FactorFamily.geometric(), 15).coeffs))

# a custom family keeps exact rationals
custom = FactorFamily.custom([[1, Fraction(1, 2)], [1, 0, 3]])
print("custom:", [str(c) for c in expand_product(custom, 4).coeffs])

# big integers are exact
print("q(1000) =", distinct_partition_count(1000))
