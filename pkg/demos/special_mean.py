"""
The concavized mean for (-1, -2) in closed form
===============================================

For this pair the concavized generator is a quadratic in 1/t up to t = 2, so
the mean solves a quadratic once we know how many entries are capped. The
closed form agrees with the generic root finder.
"""

# %%
import numpy as np

import ginihardy as gh

f = gh.concavized_generator((-1.0, -2.0))
rng = np.random.default_rng(3)
for _ in range(5):
    x = rng.lognormal(0.0, 1.2, size=8)
    closed, k = gh.special_mean_m12(x)
    generic = gh.quasideviation_mean(f, x)
    print(f"k={k}  closed={closed:.15f}  generic={generic:.15f}  Gini={gh.gini_mean((-1, -2), x):.6f}")

# %%
# When no entry exceeds twice the mean nothing is capped and the mean is the
# Gini mean itself.
x = np.array([1.0, 1.3, 1.7])
print(gh.special_mean_m12(x), gh.gini_mean((-1, -2), x))
