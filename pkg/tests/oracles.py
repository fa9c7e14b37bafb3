"""Brute-force reference computations, kept independent of the package code."""

import math
from fractions import Fraction


def cheb_T(L, y):
    """T_L(y) from the trigonometric / hyperbolic definition."""
    if abs(y) <= 1:
        return math.cos(L * math.acos(y))
    v = math.cosh(L * math.acosh(abs(y)))
    return v if (y > 0 or L % 2 == 0) else -v


def binom_pmf(n, p, j):
    return math.comb(n, j) * p**j * (1 - p) ** (n - j)


def poisson_pmf(lam, j):
    if lam == 0:
        return 1.0 if j == 0 else 0.0
    return math.exp(-lam + j * math.log(lam) - math.lgamma(j + 1))


def falling(x, m):
    out = 1
    for i in range(m):
        out *= x - i
    return out


def poisson_expectation(fn, lam, cutoff):
    return math.fsum(poisson_pmf(lam, j) * fn(j) for j in range(cutoff + 1))


def poisson_bias(e, p, n, cutoff=300):
    """``E[sum_i g(N_i)] - len(p)`` for ``N_i ~ Poi(n p_i)``, mass beyond ``cutoff`` ignored.

    Accumulated as ``sum_j P[N = j] (g(j) - 1)`` so that no ``1 - 1``
    cancellation hides a small bias.
    """
    return math.fsum(
        poisson_pmf(n * pi, j) * (float(e.weight(j)) - 1.0) for pi in p for j in range(cutoff + 1)
    )


def plogp(x):
    return 0.0 if x == 0 else -x * math.log(x)


def exact_lstsq_residual(L, M):
    """Least-squares residual of ||Bw - 1|| via exact rational normal equations."""
    xs = [Fraction(i, M) for i in range(1, M + 1)]
    cols = [[x ** (j + 1) for x in xs] for j in range(L)]
    G = [[sum(a * b for a, b in zip(cols[i], cols[j])) for j in range(L)] for i in range(L)]
    rhs = [sum(c) for c in cols]
    # Gauss-Jordan in exact arithmetic
    A = [row[:] + [r] for row, r in zip(G, rhs)]
    for i in range(L):
        piv = next(r for r in range(i, L) if A[r][i] != 0)
        A[i], A[piv] = A[piv], A[i]
        A[i] = [v / A[i][i] for v in A[i]]
        for r in range(L):
            if r != i and A[r][i] != 0:
                fac = A[r][i]
                A[r] = [a - fac * b for a, b in zip(A[r], A[i])]
    w = [A[i][L] for i in range(L)]
    res2 = sum((sum(w[j] * cols[j][i] for j in range(L)) - 1) ** 2 for i in range(M))
    return math.sqrt(float(res2)), [float(v) for v in w]
