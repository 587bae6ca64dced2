"""
Searching for bad sequences
===========================

A hill climb in log coordinates, started from the harmonic sequence, tries
to raise the Hardy ratio. Whatever it finds is still a lower witness, so it
must stay below the concavization bound.
"""

# %%
import numpy as np

import ginihardy as gh

params = (-1.0, -2.0)
n = 200
start = gh.hardy_ratio(params, gh.SequenceSpec("harmonic", n)).ratio
best_x, best = gh.adversarial_search(params, n, budget=5000, seed=0)
print(f"harmonic start {start:.6f}")
print(f"after search   {best:.6f}")
print(f"bound c        {gh.c_upper(params):.6f}")

# %%
# Compare the shape of the best sequence to the harmonic one.
harmonic = 1.0 / np.arange(1, n + 1)
for k in (0, 4, 19, 49, 99, 199):
    print(f"k={k + 1:<4} found={best_x[k]:.4e}  harmonic={harmonic[k]:.4e}")

# %%
# Different seeds give different climbs but the same ceiling.
for seed in range(3):
    _, r = gh.adversarial_search(params, 50, budget=1500, seed=seed)
    print(seed, r)
