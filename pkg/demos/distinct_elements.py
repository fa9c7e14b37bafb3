"""
Distinct elements in an urn
===========================

"""

import numpy as np

from polyest import (
    DistinctConfig,
    DiscreteDistribution,
    build_design_B,
    closed_form_residual,
    draw_sample,
    estimate_distinct,
    solve_weights,
)

# least squares on the partial Vandermonde matrix, and its closed-form residual
for L, M in [(1, 2), (2, 3), (4, 6), (6, 20)]:
    s = solve_weights(L, M)
    print(f"L={L} M={M}: residual {s.residual:.6f}  closed form {closed_form_residual(L, M):.6f}")

# with M <= L the grid can be interpolated exactly
s = solve_weights(5, 3)
print("interpolation regime:", s.regime, " B w =", build_design_B(5, 3) @ s.w)

# an urn of k = 5000 balls carrying 1200 colours, multiplicities 1 to 8
rng = np.random.default_rng(1)
mult = rng.integers(1, 9, size=1200)
k = int(mult.sum())
P = DiscreteDistribution(mult / k)
n = 1500
h = draw_sample(P, n, mode="poissonized", seed=2)
cfg = DistinctConfig(k=k, n=n, alpha=0.5, beta=1.5)
res = estimate_distinct(h, cfg)
print(f"k={k} colours=1200 observed={h.distinct} estimate={res.estimate} (L={res.meta['L']}, M={res.meta['M']})")
