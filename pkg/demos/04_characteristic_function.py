"""
Normalised characteristic function
==================================

``Z = (X - m)/sigma`` approaches a standard normal as ``t -> 1``.  The
distance is measured by the L1 norm of ``phi_Z - exp(-x^2/2)`` over the
window ``|x| <= pi sigma``; the bound checks confirm the inequalities that
control the tails of that integral.
"""

import numpy as np

from saddlecoef import (
    FactorFamily,
    RadialParam,
    StandardizedCharFn,
    cramer_grid_check,
    lemmaA_region_check,
    lemmaB_region_check,
    strong_gaussian_integral,
)

family = FactorFamily.distinct()
thetas = np.array([0.5, 1.0, 2.0, 3.0])
for r in (0.5, 0.1, 0.02):
    rp = RadialParam.from_r(r)
    cf = StandardizedCharFn(family, rp)
    diff = np.abs(cf(thetas) - np.exp(-thetas**2 / 2))
    print(f"r={r:<5} |phi - gauss| at {thetas.tolist()}: {np.array2string(diff, precision=2)}"
          f"  L1={strong_gaussian_integral(family, rp):.6f}")

rp = RadialParam.from_r(0.1)
print("Cramer:", cramer_grid_check(family, rp))
a = lemmaA_region_check(family, rp)
print(f"Lemma A: boundary {a.boundary:.4f}, violations {a.violations}")
b = lemmaB_region_check(family, rp)
print(f"Lemma B: empirical B {b.B_emp:.5f}, violations {b.violations}")
