"""
Estimating the number of unseen symbols
=======================================

"""

import numpy as np

from polyest import (
    SupportConfig,
    apply_linear,
    build_fingerprint,
    chao1_support,
    chebyshev_support_coeffs,
    draw_sample,
    good_turing_support,
    make_distribution,
    plugin_support,
    trial_rng,
)

# a Zipf(1) distribution over k = 10^4 symbols, sampled n = 2000 times
k, n = 10**4, 2000
P = make_distribution("zipf", k, alpha=1.0)
h = draw_sample(P, n, seed=trial_rng(0, n, 0))
f = build_fingerprint(h)
print("n =", f.n, " distinct =", f.distinct, " Phi_1..Phi_5 =", [f[j] for j in range(1, 6)])

# the Chebyshev estimator: degree floor(0.45 ln k), interval [1/k, 0.5 ln k / n]
e = chebyshev_support_coeffs(SupportConfig(k=k), n)
print("L =", e.meta["L"], " l = %.2e  r = %.2e" % (e.meta["l"], e.meta["r"]))
print("corrections u_j:", np.round(e.u, 2))

res = apply_linear(f, e, k, "chebyshev")
print("chebyshev  ", res.estimate, "(raw %.1f)" % res.raw)
print("plug-in    ", plugin_support(f))
print("Good-Turing", good_turing_support(f))
print("Chao 1     ", chao1_support(f))
print("truth      ", k)
