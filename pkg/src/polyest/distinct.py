"""Distinct elements in a ``k``-ball urn.

Every color occupies a multiple of ``1/k`` of the urn, so the approximation
problem behind the linear estimator is discrete: find ``p(x) = sum_j w_j x^j``
with ``p(i/M)`` close to 1 on the grid ``i = 1..M``. With more grid points
than unknowns (``M > L``) the weights solve a least-squares problem; otherwise
they interpolate exactly.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import qr, solve_triangular

from .exceptions import DomainError, NumericalError
from .support import LinearEstimator, SupportEstimate, apply_linear, as_fingerprint

__all__ = [
    "DistinctConfig",
    "WeightSolution",
    "select_params",
    "build_design_B",
    "solve_weights",
    "closed_form_residual",
    "coeffs_from_weights",
    "estimate_distinct",
]

LEAST_SQUARES = "least-squares"
INTERPOLATION = "interpolation"


@dataclass(frozen=True)
class DistinctConfig:
    """Urn size ``k`` with expected sample size ``n``.

    ``alpha`` and ``beta`` set ``L = alpha ln k`` and ``M = beta k ln k / n``.
    """

    k: int
    n: float
    alpha: float
    beta: float

    def __post_init__(self):
        if self.k < 3:
            raise DomainError("urn size k must be at least 3")
        if not self.n > 0:
            raise DomainError("sample size must be positive")
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")
        if not self.beta > self.alpha:
            raise DomainError(f"need beta > alpha, got alpha={self.alpha}, beta={self.beta}")


@dataclass(frozen=True)
class WeightSolution:
    w: np.ndarray
    residual: float
    regime: str

    @property
    def L(self):
        return self.w.size


def select_params(cfg):
    """``(L, M)`` with ``L = max(1, floor(alpha ln k))`` and ``M = max(1, ceil(beta k ln k / n))``."""
    ln_k = math.log(cfg.k)
    L = max(1, int(math.floor(cfg.alpha * ln_k)))
    M = max(1, int(math.ceil(cfg.beta * cfg.k * ln_k / cfg.n)))
    return L, M


def build_design_B(L, M):
    """``M x L`` partial Vandermonde matrix with entries ``(i/M)^j``, ``i, j >= 1``."""
    if L < 1 or M < 1:
        raise DomainError("L and M must be positive")
    x = np.arange(1, M + 1) / M
    return x[:, None] ** np.arange(1, L + 1)[None, :]


def closed_form_residual(L, M):
    """Optimal ``||Bw - 1||_2`` for ``M > L``: ``[C(M+L+1, L+1) / C(M, L+1) - 1]^(-1/2)``."""
    if M <= L:
        return 0.0
    ratio = math.comb(M + L + 1, L + 1) / math.comb(M, L + 1)
    return (ratio - 1.0) ** -0.5


def _interpolation_weights(L, M):
    # p(x) = 1 - prod_{i=1..M} (1 - M x / i): p(0) = 0 and p(i/M) = 1
    prod = np.array([1.0])
    for i in range(1, M + 1):
        prod = np.convolve(prod, [1.0, -M / i])
    w = -prod[1:]
    return np.concatenate((w, np.zeros(L - M)))


def solve_weights(L, M, rcond=1e-13):
    """Weights minimizing ``||Bw - 1||_2``.

    Least squares through a Householder QR when ``M > L``; Lagrange
    interpolation through the origin (degree ``M``, zero-padded to ``L``)
    when ``M <= L``.
    """
    B = build_design_B(L, M)
    ones = np.ones(M)
    if M > L:
        Q, R = qr(B, mode="economic")
        d = np.abs(np.diag(R))
        if d.min() <= rcond * d.max():
            raise NumericalError(
                "design matrix is numerically rank deficient",
                L=L, M=M, condition=float(np.linalg.cond(B)),
            )
        w = solve_triangular(R, Q.T @ ones)
        regime = LEAST_SQUARES
    else:
        w = _interpolation_weights(L, M)
        regime = INTERPOLATION
    residual = float(np.linalg.norm(B @ w - ones))
    return WeightSolution(w=w, residual=residual, regime=regime)


def coeffs_from_weights(w, cfg, M):
    """``u_j = w_j j! (k / (n M))^j`` for ``j = 1..L``."""
    w = np.asarray(w, dtype=float)
    j = np.arange(1, w.size + 1)
    fact = np.array([math.factorial(int(i)) for i in j], dtype=float)
    u = w * fact * (cfg.k / (cfg.n * M)) ** j
    return LinearEstimator.from_corrections(
        u, L=int(w.size), M=int(M), k=cfg.k, alpha=cfg.alpha, beta=cfg.beta
    )


def estimate_distinct(f, cfg):
    """Distinct-elements estimate clamped to ``[S_plug, k]``.

    Returns a :class:`SupportEstimate` whose ``meta`` carries ``L``, ``M``,
    the regime and the least-squares residual.
    """
    f = as_fingerprint(f)
    L, M = select_params(cfg)
    sol = solve_weights(L, M)
    e = coeffs_from_weights(sol.w, cfg, M)
    out = apply_linear(f, e, cfg.k, estimator="distinct")
    out.meta.update(regime=sol.regime, residual=sol.residual, n_expected=cfg.n)
    return out
