"""
Entropy over a large alphabet
=============================

"""

import math

from polyest import (
    EntropyConfig,
    draw_sample,
    empirical_entropy,
    estimate_entropy,
    make_distribution,
    miller_madow,
)

k = 10**5
P = make_distribution("zipf", k, alpha=1.0)
print("true entropy: %.4f nats" % P.entropy)

# the plug-in is badly biased downwards when n is much smaller than k
cfg = EntropyConfig(k=k)
for n in (2000, 10**4, 5 * 10**4):
    h = draw_sample(P, n, seed=n)
    value, est = estimate_entropy(h, cfg, return_estimator=True)
    print(
        f"n={n:>6}: plug-in {empirical_entropy(h):.4f}  Miller-Madow {miller_madow(h):.4f}"
        f"  polynomial {value:.4f}  (L={est.L}, T={est.T})"
    )

# splitting draws a fair coin per observation from the seed
h = draw_sample(P, 10**4, seed=3)
print("split, seeds 0 and 1:",
      [round(estimate_entropy(h, EntropyConfig(k=k, split=True), seed=s), 4) for s in (0, 1)])
print("bits:", estimate_entropy(h, cfg) / math.log(2))
