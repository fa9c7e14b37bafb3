"""Approximation-theory kernel.

Chebyshev polynomials and best uniform approximation by the Remez
exchange, plus the smaller polynomial helpers the estimators and tests
rely on. Polynomials are carried in the monomial basis, ``coeffs[m]``
multiplying ``x**m``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as P
from scipy.special import gammaln, xlog1py, xlogy

from .exceptions import ConvergenceError, DomainError

__all__ = [
    "Polynomial",
    "RemezResult",
    "compose_affine",
    "chebyshev_first_kind",
    "shifted_chebyshev_PL",
    "remez",
    "bernstein_eval",
    "discrete_chebyshev",
    "falling_factorial",
    "phi",
]

MAX_CHEBYSHEV_DEGREE = 64


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Real polynomial in the monomial basis."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=float)).copy()
        if c.ndim != 1:
            raise DomainError("coefficients must be one-dimensional")
        if c.size == 0:
            c = np.zeros(1)
        if not np.all(np.isfinite(c)):
            raise DomainError("polynomial coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    def __call__(self, x):
        # plain Horner, highest coefficient first
        x = np.asarray(x, dtype=float)
        out = np.full_like(x, self.coeffs[-1])
        for c in self.coeffs[-2::-1]:
            out = out * x + c
        return out if out.ndim else float(out)

    def __len__(self):
        return self.coeffs.size

    def __iter__(self):
        return iter(self.coeffs.tolist())

    def __repr__(self):
        return f"Polynomial({self.coeffs.tolist()!r})"


def phi(x):
    """``x * log(1/x)`` with the continuous extension ``phi(0) = 0``."""
    x = np.asarray(x, dtype=float)
    out = -xlogy(x, x)
    return out if out.ndim else float(out)


def compose_affine(coeffs, scale, shift):
    """Monomial coefficients of ``p(scale * x + shift)``."""
    coeffs = np.asarray(coeffs, dtype=float)
    out = np.array([coeffs[-1]])
    lin = np.array([shift, scale], dtype=float)
    for c in coeffs[-2::-1]:
        out = P.polyadd(P.polymul(out, lin), [c])
    return out[: coeffs.size]


def chebyshev_first_kind(L):
    """Chebyshev polynomial of the first kind ``T_L``.

    Coefficients come from the three-term recurrence run in exact integer
    arithmetic, so they are exact up to the final float conversion.
    """
    L = int(L)
    if L < 0 or L > MAX_CHEBYSHEV_DEGREE:
        raise DomainError(f"Chebyshev degree must lie in [0, {MAX_CHEBYSHEV_DEGREE}], got {L}")
    prev, cur = [1], [0, 1]
    if L == 0:
        return Polynomial([1.0])
    for _ in range(L - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return Polynomial([float(c) for c in cur])


def shifted_chebyshev_PL(L, l, r):
    """Degree-``L`` polynomial through ``(0, -1)`` of least sup norm on ``[l, r]``.

    Returns ``P_L(x) = -T_L((2x - r - l)/(r - l)) / T_L((-r - l)/(r - l))``.
    The maximum of ``|P_L|`` over ``[l, r]`` is ``1/|T_L((-r - l)/(r - l))|``.
    """
    if not (l > 0 and r > l):
        raise DomainError(f"need 0 < l < r, got l={l}, r={r}")
    if L == 0:
        return Polynomial([-1.0])
    t = chebyshev_first_kind(L).coeffs
    composed = compose_affine(t, 2.0 / (r - l), -(r + l) / (r - l))
    # composed[0] is T_L at the shifted origin; dividing by it pins P_L(0) = -1
    return Polynomial(-composed / composed[0])


@dataclass(frozen=True)
class RemezResult:
    """Outcome of :func:`remez`.

    ``chebyshev_coeffs`` holds the same approximant in the Chebyshev basis
    of ``interval``; evaluating through it is better conditioned than the
    monomial ``poly`` at high degree.
    """

    poly: Polynomial
    error: float
    alternation_points: np.ndarray
    iterations: int
    interval: tuple = (0.0, 1.0)
    chebyshev_coeffs: np.ndarray = field(default=None, repr=False)

    def evaluate(self, x):
        a, b = self.interval
        t = (2.0 * np.asarray(x, dtype=float) - a - b) / (b - a)
        return C.chebval(t, self.chebyshev_coeffs)


def _as_vectorized(f, probe):
    """Array version of ``f``, decided once by calling it on ``probe``."""
    probe = np.asarray(probe, dtype=float)
    try:
        y = np.asarray(f(probe), dtype=float)
        if y.shape == probe.shape:
            return lambda x: np.asarray(f(np.asarray(x, dtype=float)), dtype=float)
    except (TypeError, ValueError):
        pass
    vf = np.vectorize(f, otypes=[float])
    return lambda x: vf(np.asarray(x, dtype=float))


_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def _golden_max(h, lo, hi, iters=60):
    """Vectorized golden-section search for the maxima of ``h`` on ``[lo, hi]``."""
    lo, hi = lo.copy(), hi.copy()
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    h1, h2 = h(x1), h(x2)
    for _ in range(iters):
        left = h1 >= h2
        # keep [lo, x2] where the left probe wins, [x1, hi] otherwise
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
        nx1 = np.where(left, hi - _GOLDEN * (hi - lo), x2)
        nx2 = np.where(left, x1, lo + _GOLDEN * (hi - lo))
        nh1 = np.where(left, np.nan, h2)
        nh2 = np.where(left, h1, np.nan)
        need1, need2 = np.isnan(nh1), np.isnan(nh2)
        if need1.any():
            nh1[need1] = h(nx1[need1])
        if need2.any():
            nh2[need2] = h(nx2[need2])
        x1, x2, h1, h2 = nx1, nx2, nh1, nh2
    x = np.where(h1 >= h2, x1, x2)
    return x, np.maximum(h1, h2)


def _locate_max(abs_err, ref, a, b, scan=64):
    """Point of largest ``abs_err`` on ``[a, b]``.

    Each gap between consecutive reference points (and the ends) is scanned
    on ``scan`` points, then the best scan point is refined by golden
    section inside its neighbouring grid cells.
    """
    knots = np.unique(np.concatenate(([a], ref, [b])))
    lo, hi = knots[:-1], knots[1:]
    s = np.linspace(0.0, 1.0, scan)
    grid = lo[:, None] + (hi - lo)[:, None] * s[None, :]
    vals = abs_err(grid.ravel()).reshape(grid.shape)
    idx = np.argmax(vals, axis=1)
    rows = np.arange(grid.shape[0])
    best_x = grid[rows, idx]
    best_v = vals[rows, idx]
    blo = grid[rows, np.maximum(idx - 1, 0)]
    bhi = grid[rows, np.minimum(idx + 1, scan - 1)]
    gx, gv = _golden_max(abs_err, blo, bhi)
    better = gv > best_v
    best_x = np.where(better, gx, best_x)
    best_v = np.where(better, gv, best_v)
    i = int(np.argmax(best_v))
    return float(best_x[i]), float(best_v[i])


def _exchange(ref, ref_signs, xi, s):
    """Swap ``xi`` into the reference set keeping the error signs alternating."""
    ref = ref.copy()
    ref_signs = ref_signs.copy()
    m = ref.size
    if xi < ref[0]:
        if ref_signs[0] == s:
            ref[0] = xi
        else:
            ref = np.concatenate(([xi], ref[:-1]))
            ref_signs = np.concatenate(([s], ref_signs[:-1]))
    elif xi > ref[-1]:
        if ref_signs[-1] == s:
            ref[-1] = xi
        else:
            ref = np.concatenate((ref[1:], [xi]))
            ref_signs = np.concatenate((ref_signs[1:], [s]))
    else:
        j = int(np.searchsorted(ref, xi, side="right")) - 1
        j = min(max(j, 0), m - 2)
        if ref_signs[j] == s:
            ref[j] = xi
        else:
            ref[j + 1] = xi
            ref_signs[j + 1] = s
    return ref


def remez(f, a, b, L, rel_tol=1e-9, max_iter=200):
    """Best uniform approximation of ``f`` on ``[a, b]`` by a degree-``L`` polynomial.

    Single-point Remez exchange started from the ``L + 2`` Chebyshev
    extrema of ``[a, b]``. Each step solves the levelled system
    ``f(x_j) - Q(x_j) = (-1)^j delta``, finds the global maximum ``d`` of
    ``|f - Q|`` and trades one reference point for it. Iteration stops once
    ``(d - |delta|) / d <= rel_tol``.

    Parameters
    ----------
    f : callable
        Continuous on ``[a, b]``. Array input is used when supported.
    a, b : float
        Interval, ``a < b``.
    L : int
        Degree of the approximant.
    rel_tol : float
        Relative gap between the levelled and the true uniform error.
    max_iter : int
        Iteration cap; exceeding it raises :class:`ConvergenceError` with
        the best iterate attached.

    Returns
    -------
    RemezResult
    """
    a, b, L = float(a), float(b), int(L)
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    if L < 0:
        raise DomainError("degree must be nonnegative")
    if not rel_tol > 0:
        raise DomainError("rel_tol must be positive")
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    fv = _as_vectorized(f, [a, mid, b])

    def to_t(x):
        return (np.asarray(x, dtype=float) - mid) / half

    npts = L + 2
    ref = mid - half * np.cos(np.pi * np.arange(npts) / (npts - 1))
    ref[0], ref[-1] = a, b
    if np.any(np.diff(ref) <= 0):
        raise DomainError(f"cannot place {npts} distinct reference points in [{a}, {b}]")
    alt = (-1.0) ** np.arange(npts)

    best = None
    for it in range(1, max_iter + 1):
        fx = fv(ref)
        if not np.all(np.isfinite(fx)):
            raise DomainError("f is not finite on the reference set")
        A = np.column_stack((C.chebvander(to_t(ref), L), alt))
        sol = np.linalg.solve(A, fx)
        c, delta = sol[:-1], sol[-1]

        def err(x, c=c):
            return fv(x) - C.chebval(to_t(x), c)

        xi, d = _locate_max(lambda x: np.abs(err(x)), ref, a, b)
        lev = abs(delta)
        result = RemezResult(
            poly=Polynomial(compose_affine(C.cheb2poly(c), 1.0 / half, -mid / half)),
            error=max(d, lev),
            alternation_points=ref.copy(),
            iterations=it,
            interval=(a, b),
            chebyshev_coeffs=c,
        )
        if best is None or result.error < best.error:
            best = result
        # the absolute floor catches f that is itself a polynomial of degree <= L
        floor = 64 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(fx))))
        if d <= lev or d - lev <= rel_tol * d or d <= floor:
            return result
        s = np.sign(err(np.array([xi]))[0])
        ref_signs = np.sign(delta) * alt
        if s == 0:
            return result
        new_ref = _exchange(ref, ref_signs, xi, s)
        if np.array_equal(new_ref, ref) or np.any(np.diff(new_ref) <= 0):
            raise ConvergenceError(
                "Remez exchange stalled", best=best, gap=(d - lev) / d, iterations=it
            )
        ref = new_ref
    raise ConvergenceError(
        f"Remez did not converge in {max_iter} iterations",
        best=best,
        gap=(best.error - lev) / best.error if best.error else 0.0,
        iterations=max_iter,
    )


def bernstein_eval(f, n, x):
    """Bernstein polynomial ``B_n f`` at ``x``, i.e. ``E f(N/n)`` for ``N ~ Bin(n, x)``."""
    n = int(n)
    if n < 1:
        raise DomainError("n must be a positive integer")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    k = np.arange(n + 1)
    logw = (
        gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
        + xlogy(k, x) + xlog1py(n - k, -x)
    )
    fv = _as_vectorized(f, [0.0, 0.5, 1.0])(k / n)
    return float(np.sum(np.exp(logw) * fv))


def _int_poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        for j, qj in enumerate(q):
            out[i + j] += pi * qj
    return out


def _int_poly_shift(p, s):
    """Coefficients of ``p(x + s)`` in exact integer arithmetic."""
    out = [0] * len(p)
    for k, c in enumerate(p):
        for m in range(k + 1):
            out[m] += c * comb(k, m) * s ** (k - m)
    return out


def discrete_chebyshev(m, n):
    """Discrete Chebyshev polynomial ``t_m`` orthogonal on ``{0, ..., n-1}``.

    ``t_m = Delta^m [(x)_m (x - n)_m] / m!`` with the forward difference
    taken exactly on integer coefficients.
    """
    m, n = int(m), int(n)
    if m < 0 or n < 1 or m >= n:
        raise DomainError(f"need 0 <= m < n, got m={m}, n={n}")
    pm = [1]
    for i in range(m):
        pm = _int_poly_mul(pm, [-i, 1])
        pm = _int_poly_mul(pm, [-n - i, 1])
    acc = [0] * len(pm)
    for j in range(m + 1):
        term = _int_poly_shift(pm, m - j)
        w = (-1) ** j * comb(m, j)
        for i, c in enumerate(term):
            acc[i] += w * c
    mf = factorial(m)
    coeffs = [float(Fraction(c, mf)) for c in acc[: m + 1]]
    return Polynomial(coeffs)


def falling_factorial(x, m):
    """``(x)_m = x (x-1) ... (x-m+1)``; ``(x)_0 = 1``. Accepts arrays."""
    m = int(m)
    if m < 0:
        raise DomainError("m must be nonnegative")
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    for i in range(m):
        out = out * (x - i)
    return out if out.ndim else float(out)
