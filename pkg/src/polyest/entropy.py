"""Shannon entropy estimators (in nats).

Besides the empirical entropy and the Miller-Madow correction, this module
provides the polynomial-approximation estimator: symbols seen at most ``T``
times contribute an unbiased estimate of the best degree-``L`` polynomial
approximation of ``x ln(1/x)`` on ``[0, beta]``; symbols seen more often
contribute the bias-corrected plug-in term ``phi(N/n) + 1/(2n)``.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exceptions import DegenerateIntervalError, DomainError
from .fingerprints import Fingerprint, Histogram
from .polycore import phi, remez

__all__ = [
    "EntropyConfig",
    "PhiApprox",
    "EntropyEstimator",
    "phi_approx",
    "empirical_entropy",
    "miller_madow",
    "build_entropy_estimator",
    "estimate_entropy",
    "entropy_record",
]


@dataclass(frozen=True)
class EntropyConfig:
    k: int = None
    c0: float = 1.6
    c1: float = 3.5
    c2: float = 1.6
    split: bool = False
    adaptive: bool = False

    def __post_init__(self):
        if min(self.c0, self.c1, self.c2) <= 0:
            raise DomainError("c0, c1 and c2 must be positive")
        if not self.adaptive and (self.k is None or self.k < 2):
            raise DomainError("k >= 2 is required unless adaptive=True")


@dataclass(frozen=True)
class PhiApprox:
    """Best uniform approximation ``sum_m a_m x^m`` of ``x ln(1/x)`` on ``[0, 1]``."""

    a: np.ndarray
    err: float

    @property
    def L(self):
        return self.a.size - 1


@lru_cache(maxsize=None)
def phi_approx(L):
    """Remez coefficients for degree ``L``; cached, so each degree is solved once."""
    res = remez(phi, 0.0, 1.0, L)
    a = np.zeros(L + 1)
    a[: res.poly.coeffs.size] = res.poly.coeffs
    a.setflags(write=False)
    return PhiApprox(a=a, err=res.error)


def _counts(h):
    if isinstance(h, Fingerprint):
        h = h.to_histogram()
    if isinstance(h, Histogram):
        return h.values()
    return np.asarray([c for c in h if c > 0], dtype=np.int64)


def empirical_entropy(h):
    """``sum_i (N_i/n) ln(n/N_i)``."""
    N = _counts(h)
    n = int(N.sum())
    if n == 0:
        raise DomainError("empirical entropy needs at least one observation")
    return float(math.fsum(phi(N / n)))


def miller_madow(h):
    """Empirical entropy plus ``(S_obs - 1) / (2n)``."""
    N = _counts(h)
    n = int(N.sum())
    return empirical_entropy(N) + (N.size - 1) / (2.0 * n)


@dataclass(frozen=True)
class EntropyEstimator:
    """Resolved parameters of the polynomial estimator for sample size ``n``.

    ``scale`` is the log-size the constants multiply: ``ln k``, or ``ln n``
    in adaptive mode.
    """

    n: int
    L: int
    beta: float
    T: int
    scale: float
    a: np.ndarray
    approx_error: float
    config: EntropyConfig = field(repr=False)

    def poly_weight(self, N):
        """``g_L(N) = (1/n) (sum_m a_m (c1 scale)^(1-m) (N)_m - N ln beta)``."""
        N = np.asarray(N, dtype=float)
        nb = self.n * self.beta  # equals c1 * scale
        acc = np.zeros_like(N)
        ff = np.ones_like(N)
        for m, am in enumerate(self.a):
            if m:
                ff = ff * (N - (m - 1))
            acc = acc + am * nb ** (1 - m) * ff
        return (acc - N * math.log(self.beta)) / self.n

    def plugin_weight(self, N):
        N = np.asarray(N, dtype=float)
        return phi(N / self.n) + 1.0 / (2 * self.n)

    def record(self, estimate):
        cfg = self.config
        return {
            "estimator": "polynomial",
            "k_or_n": cfg.k if not cfg.adaptive else self.n,
            "L": self.L,
            "beta": self.beta,
            "interval_parameter": self.n * self.beta,
            "T": self.T,
            "split": cfg.split,
            "adaptive": cfg.adaptive,
            "estimate": estimate,
        }


def build_entropy_estimator(cfg, n):
    """Degree and threshold of the estimator for sample size ``n``.

    ``L = floor(c0 ln K)`` and ``T = floor(c2 ln K)``; the approximation
    interval is ``[0, beta]`` with ``beta = c1 ln K / n``. ``K`` is ``k``,
    or ``n`` in adaptive mode, where the constant term of the approximant
    is also dropped so unseen symbols contribute zero.
    """
    n = int(n)
    if cfg.adaptive:
        if n < 3:
            raise DomainError("adaptive mode needs n >= 3")
        scale = math.log(n)
    else:
        if n < 1:
            raise DomainError("sample size must be positive")
        scale = math.log(cfg.k)
    L = int(math.floor(cfg.c0 * scale))
    beta = cfg.c1 * scale / n
    T = int(math.floor(cfg.c2 * scale))
    if beta >= 1:
        raise DegenerateIntervalError(
            f"approximation interval [0, {beta:.4g}] exceeds [0, 1]; n is too small"
        )
    approx = phi_approx(L)
    a = approx.a
    if cfg.adaptive:
        a = a.copy()
        a[0] = 0.0
        a.setflags(write=False)
    return EntropyEstimator(
        n=n, L=L, beta=beta, T=T, scale=scale, a=a, approx_error=approx.err, config=cfg
    )


def _split(N, seed):
    rng = np.random.default_rng(seed)
    est = rng.binomial(N, 0.5)
    return est, N - est


def estimate_entropy(h, cfg, seed=None, return_estimator=False):
    """Polynomial-approximation entropy estimate in nats.

    Without splitting the same counts select and estimate. With
    ``cfg.split`` every observation goes to one of two halves by a fair coin
    drawn from ``seed``; the second half picks the branch, the first half
    (and its realized size) feeds the estimate.
    """
    N = _counts(h)
    if int(N.sum()) == 0:
        raise DomainError("entropy estimate needs at least one observation")
    if not cfg.adaptive and N.size > cfg.k:
        raise DomainError(f"observed {N.size} distinct symbols but k = {cfg.k}")
    if cfg.split:
        N, N_sel = _split(N, seed)
        n = int(N.sum())
    else:
        N_sel = N
        n = int(N.sum())
    est = build_entropy_estimator(cfg, n)
    small = N_sel <= est.T
    terms = np.where(small, est.poly_weight(N), est.plugin_weight(N))
    total = math.fsum(terms)
    if not cfg.adaptive:
        unseen = cfg.k - N_sel.size
        total += unseen * float(est.poly_weight(0.0))
    value = max(total, 0.0)
    if not cfg.adaptive:
        value = min(value, math.log(cfg.k))
    if return_estimator:
        return value, est
    return value


def entropy_record(h, cfg, seed=None):
    value, est = estimate_entropy(h, cfg, seed, return_estimator=True)
    return est.record(value)
