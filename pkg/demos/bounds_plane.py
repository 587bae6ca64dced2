"""
Bounds across the negative quadrant
===================================

Sweep (p, q) over a coarse grid and see how much the concavization bound
gains over the older upper bounds, and how far it stays from the lower
limit. The same table is available from ``ginihardy sweep``.
"""

# %%
import numpy as np

import ginihardy as gh

axis = np.round(np.linspace(-3.0, -0.25, 12), 4)
gain = np.empty((axis.size, axis.size))
gap = np.empty_like(gain)
for i, p in enumerate(axis):
    for j, q in enumerate(axis):
        rep = gh.bounds_report((p, q))
        gain[i, j] = min(rep.pas_upper, rep.trivial_upper) - rep.c_upper
        gap[i, j] = rep.c_upper - rep.lower_H

# %%
# Improvement over the best older bound. It is never negative on this grid.
print("min(pas, trivial) - c, rows p, columns q")
print("       " + " ".join(f"{q:6.2f}" for q in axis))
for p, row in zip(axis, gain):
    print(f"{p:6.2f} " + " ".join(f"{v:6.3f}" for v in row))
print("smallest improvement:", gain.min())

# %%
# Distance between the bound and the lower limit. It grows away from the
# origin, which is where the unknown exact constant has the most room.
print("c - H")
for p, row in zip(axis, gap):
    print(f"{p:6.2f} " + " ".join(f"{v:6.3f}" for v in row))

# %%
# Along the diagonal p = q the bound is continuous with nearby off-diagonal
# pairs.
for p in (-2.0, -1.0, -0.5):
    print(p, gh.c_upper((p, p)), gh.c_upper((p, p - 1e-6)))
