"""
Empirical Hardy ratios
======================

The Hardy ratio of a finite sequence, sum of prefix means over sum of
terms, is a lower witness for the Hardy constant. Harmonic sequences push
the Gini ratio toward the lower limit; random sequences stay well below.
"""

# %%
import numpy as np

import ginihardy as gh

params = (-1.0, -2.0)
c = gh.c_upper(params)
for n in (10, 100, 1_000, 10_000, 100_000):
    r = gh.hardy_ratio(params, gh.SequenceSpec("harmonic", n))
    print(f"n={n:<7} ratio={r.ratio:.6f}  n*G(1,..,1/n)={gh.hardy_limit_empirical(params, n):.6f}")
print(f"lower limit {gh.hardy_lower_limit(params)}, upper bound {c:.6f}")

# %%
# The concavized mean dominates the Gini mean, so its ratio is larger, yet it
# is still capped by the same constant.
f = gh.concavized_generator(params)
for n in (100, 1_000, 10_000):
    spec = gh.SequenceSpec("harmonic", n)
    print(n, gh.hardy_ratio(params, spec).ratio, gh.hardy_ratio(f, spec).ratio)

# %%
# Random lognormal sequences of growing spread.
for sigma in (0.25, 1.0, 2.0):
    ratios = [gh.hardy_ratio(params, gh.SequenceSpec("random_lognormal", 2000, sigma, seed=s)).ratio
              for s in range(5)]
    print(f"sigma={sigma:<5} max ratio {max(ratios):.4f}")

# %%
# Partial ratios converge slowly; the trace shows how.
trace = gh.hardy_ratio(params, gh.SequenceSpec("harmonic", 10_000), trace=True).partial_trace
print(np.array(trace)[[0, 9, 99, 999, 9999]])
