"""
Chebyshev polynomials and best uniform approximation
=====================================================

"""

import math

import numpy as np

from polyest import chebyshev_first_kind, phi, remez, shifted_chebyshev_PL

# T_L(cos t) = cos(L t): check it on a grid
T5 = chebyshev_first_kind(5)
t = np.linspace(0, np.pi, 7)
print("T_5 coefficients:", T5.coeffs)
print("max |T_5(cos t) - cos 5t| =", np.max(np.abs(T5(np.cos(t)) - np.cos(5 * t))))

# the shifted, normalized version passes through -1 at the origin and is
# uniformly small on [l, r]
P = shifted_chebyshev_PL(4, 0.05, 1.0)
x = np.linspace(0.05, 1.0, 2001)
print("P_4(0) =", P(0.0), " sup on [l, r] =", np.abs(P(x)).max())

# Remez recovers the classical answers
cube = remez(lambda x: x**3, -1, 1, 2)
print("x^3 by degree 2: error", cube.error, "coefficients", cube.poly.coeffs)

lin = remez(phi, 0, 1, 1)
print("x ln(1/x) by degree 1: error", lin.error, " 1/(2e) =", 1 / (2 * math.e))

# the degree used by the entropy estimator at k = 1e5
deg18 = remez(phi, 0, 1, 18)
print("degree 18: error %.3e after %d exchanges" % (deg18.error, deg18.iterations))
e = phi(deg18.alternation_points) - deg18.evaluate(deg18.alternation_points)
print("alternating signs:", np.sign(e).astype(int))
