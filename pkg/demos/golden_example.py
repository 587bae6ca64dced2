"""
Four estimates for the pair (-1, -2)
====================================

For p = -1, q = -2 the lower limit, the comparison bound, the power-type
bound and the concavization bound all have closed forms or a polynomial
root, so every number below can be checked by hand.
"""

# %%
import numpy as np

import ginihardy as gh

params = (-1.0, -2.0)
report = gh.bounds_report(params)
for name in ("lower_H", "trivial_upper", "pas_upper", "c_upper"):
    print(f"{name:<14} {getattr(report, name):.12f}")

# %%
# The concavization bound is the real root of 8c^3 - 12c^2 - 1.
roots = np.roots([8.0, -12.0, 0.0, -1.0])
real_root = float(roots[np.isclose(roots.imag, 0)].real[0])
print(f"polynomial root {real_root:.12f}   solver {report.c_upper:.12f}")

# %%
# Both residual forms vanish at the returned value. The quadrature one is an
# independent check on the closed form.
print(f"closed-form residual {report.residual_algebraic:+.2e}")
print(f"quadrature residual  {report.residual_integral:+.2e}")

# %%
# The generator and its concavized version: equal up to tau = 2, then flat.
f = gh.concavized_generator(params)
for t in (0.5, 1.0, 1.5, 2.0, 3.0, 10.0):
    print(f"t={t:<5} g={gh.g_pq(params, t):+.6f}  f={f(t):+.6f}")

# %%
# The Gini mean of (1, 2) is 1.2. The concavized mean is never smaller, and
# here it is equal up to rounding because no entry exceeds tau times the mean.
x = [1.0, 2.0]
print("Gini mean      ", gh.gini_mean(params, x))
print("concavized mean", gh.quasideviation_mean(f, x))
print("closed form    ", gh.special_mean_m12(x)[0])
