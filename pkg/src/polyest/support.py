"""Support-size estimators.

The Chebyshev linear estimator adds a correction ``sum_j u_j Phi_j`` to the
number of observed symbols, with ``u_j`` read off a shifted Chebyshev
polynomial that passes through ``(0, -1)`` and is smallest on the interval
where the masses of rarely seen symbols are likely to lie. Classical
baselines (Good-Turing coverage, Chao 1, Good-Toulmin, Efron-Thisted) are
included for comparison.

All functions accept either a :class:`~polyest.fingerprints.Fingerprint`
or a :class:`~polyest.fingerprints.Histogram`.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError, UndefinedEstimatorError
from .fingerprints import Fingerprint, Histogram, build_fingerprint
from .polycore import shifted_chebyshev_PL

__all__ = [
    "LinearEstimator",
    "SupportConfig",
    "SupportEstimate",
    "round_half_up",
    "as_fingerprint",
    "plugin_support",
    "chebyshev_support_coeffs",
    "chebyshev_support_coeffs_adaptive",
    "apply_linear",
    "chebyshev_support",
    "good_turing_support",
    "chao1_support",
    "good_toulmin_support",
    "efron_thisted_support",
]

FALLBACK_WARNING = "approximation interval is empty (l >= r); using the plug-in estimator"


def round_half_up(x):
    return int(math.floor(x + 0.5))


def as_fingerprint(data):
    if isinstance(data, Fingerprint):
        return data
    if isinstance(data, Histogram):
        return build_fingerprint(data)
    if isinstance(data, dict):
        return Fingerprint(data)
    raise TypeError(f"expected a Fingerprint or Histogram, got {type(data).__name__}")


@dataclass(frozen=True)
class LinearEstimator:
    """Per-count weights ``g(0..J)`` of a linear estimator ``sum_j g(j) Phi_j``.

    Counts above ``J`` get ``default_weight``.
    """

    g: np.ndarray
    default_weight: float = 1.0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        g = np.atleast_1d(np.asarray(self.g, dtype=float)).copy()
        if g.size == 0:
            g = np.zeros(1)
        if g[0] != 0:
            raise DomainError("g(0) must be 0")
        if not np.all(np.isfinite(g)):
            raise DomainError("estimator weights must be finite")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    @property
    def J(self):
        return self.g.size - 1

    @property
    def u(self):
        """Corrections ``u_j = g(j) - 1`` for ``j = 1..J``."""
        return self.g[1:] - 1.0

    def weight(self, j):
        j = np.asarray(j, dtype=np.int64)
        inside = j <= self.J
        return np.where(inside, self.g[np.minimum(j, self.J)], self.default_weight)

    def raw(self, f):
        """Unrounded value ``sum_j g(j) Phi_j``."""
        js, phis = as_fingerprint(f).arrays()
        if js.size == 0:
            return 0.0
        return float(math.fsum(self.weight(js) * phis))

    @classmethod
    def plugin(cls, **meta):
        return cls(np.array([0.0]), 1.0, meta)

    @classmethod
    def from_corrections(cls, u, **meta):
        """Build from ``u_1..u_L``; ``g(j) = u_j + 1`` and ``g(0) = 0``."""
        u = np.asarray(u, dtype=float)
        return cls(np.concatenate(([0.0], u + 1.0)), 1.0, meta)


@dataclass(frozen=True)
class SupportConfig:
    k: int = None
    c0: float = 0.45
    c1: float = 0.5
    adaptive: bool = False
    eps: float = None

    def __post_init__(self):
        if self.adaptive:
            if self.eps is None or not 0 < self.eps < 1:
                raise DomainError("adaptive mode needs eps in (0, 1)")
        else:
            if self.k is None or self.k < 2:
                raise DomainError("k must be an integer >= 2")
            if not (self.c0 > 0 and self.c1 > 0):
                raise DomainError("c0 and c1 must be positive")
            if self.c0 >= self.c1:
                # the localization argument wants c0 < c1, but the published
                # theory constants (0.558, 0.5) break it, so allow with a warning
                warnings.warn(
                    f"c0={self.c0} >= c1={self.c1}: rarely seen masses may fall outside [l, r]",
                    RuntimeWarning,
                    stacklevel=3,
                )


@dataclass
class SupportEstimate:
    """A support-size estimate and the parameters that produced it."""

    estimator: str
    estimate: int
    raw: float
    n: int
    k: int = None
    meta: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def __int__(self):
        return int(self.estimate)

    def to_record(self):
        rec = {
            "estimator": self.estimator,
            "k": self.k,
            "n": self.n,
            "L": self.meta.get("L"),
            "l": self.meta.get("l"),
            "r": self.meta.get("r"),
            "c0": self.meta.get("c0"),
            "c1": self.meta.get("c1"),
            "raw": self.raw,
            "estimate": self.estimate,
            "warnings": list(self.warnings),
        }
        for key, val in self.meta.items():
            rec.setdefault(key, val)
        return rec


def plugin_support(f):
    """Number of distinct observed symbols."""
    return as_fingerprint(f).distinct


def _chebyshev_estimator(L, n, l, r, meta):
    meta = dict(meta, L=L, l=l, r=r)
    if L == 0:
        return LinearEstimator.plugin(**meta)
    if not l < r:
        warnings.warn(FALLBACK_WARNING, RuntimeWarning, stacklevel=3)
        meta["warnings"] = [FALLBACK_WARNING]
        return LinearEstimator.plugin(**meta)
    # P_L(y / n) is the shifted polynomial on [n l, n r]; its y^j coefficient
    # is a_j / n^j, which keeps the numbers O(1) for large n
    scaled = shifted_chebyshev_PL(L, n * l, n * r).coeffs
    j = np.arange(1, L + 1)
    u = scaled[1:] * np.array([math.factorial(int(i)) for i in j], dtype=float)
    return LinearEstimator.from_corrections(u, **meta)


def chebyshev_support_coeffs(cfg, n):
    """Chebyshev linear estimator with ``L = floor(c0 ln k)``, ``[l, r] = [1/k, c1 ln k / n]``."""
    if cfg.adaptive:
        return chebyshev_support_coeffs_adaptive(n, cfg.eps, cfg.c0, cfg.c1)
    k = cfg.k
    if k is None or k < 2:
        raise DomainError("k must be at least 2")
    if n < 1:
        raise DomainError("sample size must be positive")
    L = int(math.floor(cfg.c0 * math.log(k)))
    r = cfg.c1 * math.log(k) / n
    l = 1.0 / k
    return _chebyshev_estimator(L, n, l, r, {"k": k, "c0": cfg.c0, "c1": cfg.c1})


def chebyshev_support_coeffs_adaptive(n, eps, c0=0.45, c1=0.5):
    """Variant that needs no lower bound on the masses.

    ``L = floor(c0 ln n)``, ``r = c1 ln n / n`` and
    ``l = (c1 / c0^2) ln^2(1/eps) / (n ln n)``, with ``eps`` the target
    relative accuracy. The theory asks for ``eps > n^-C``; that is not
    checked here.
    """
    if n < 3:
        raise DomainError("adaptive estimator needs n >= 3")
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    ln_n = math.log(n)
    L = int(math.floor(c0 * ln_n))
    r = c1 * ln_n / n
    l = (c1 / c0**2) * math.log(1.0 / eps) ** 2 / (n * ln_n)
    return _chebyshev_estimator(L, n, l, r, {"eps": eps, "c0": c0, "c1": c1})


def apply_linear(f, e, k=None, estimator="linear"):
    """Evaluate a linear estimator, then round half up within ``[S_plug, k]``."""
    f = as_fingerprint(f)
    raw = e.raw(f)
    s_plug = f.distinct
    est = max(round_half_up(raw), s_plug)
    if k is not None:
        est = min(est, max(int(k), s_plug))
    return SupportEstimate(
        estimator=estimator,
        estimate=est,
        raw=raw,
        n=f.n,
        k=k,
        meta={key: v for key, v in e.meta.items() if key not in ("warnings", "k")},
        warnings=list(e.meta.get("warnings", [])),
    )


def chebyshev_support(f, k=None, c0=0.45, c1=0.5, eps=None):
    """One-call Chebyshev estimate; adaptive when ``eps`` is given instead of ``k``."""
    f = as_fingerprint(f)
    if f.n == 0:
        return SupportEstimate("chebyshev", 0, 0.0, 0, k)
    if eps is not None and k is None:
        e = chebyshev_support_coeffs_adaptive(f.n, eps, c0, c1)
        return apply_linear(f, e, None, "chebyshev-adaptive")
    e = chebyshev_support_coeffs(SupportConfig(k=k, c0=c0, c1=c1), f.n)
    return apply_linear(f, e, k, "chebyshev")


def good_turing_support(f):
    """``S_plug / C`` with coverage ``C = 1 - Phi_1 / n``."""
    f = as_fingerprint(f)
    if f.n == 0 or f[1] == f.n:
        raise UndefinedEstimatorError("Good-Turing coverage is zero (every symbol is a singleton)")
    coverage = 1.0 - f[1] / f.n
    return round_half_up(f.distinct / coverage)


def chao1_support(f):
    """Bias-corrected Chao 1: ``S_plug + Phi_1 (Phi_1 - 1) / (2 (Phi_2 + 1))``."""
    f = as_fingerprint(f)
    phi1, phi2 = f[1], f[2]
    return round_half_up(f.distinct + phi1 * (phi1 - 1) / (2.0 * (phi2 + 1)))


def good_toulmin_support(f, t):
    """``S_plug + sum_j (-1)^(j+1) t^j Phi_j``; diverges for ``t > 1``."""
    if not t > 0:
        raise DomainError("t must be positive")
    f = as_fingerprint(f)
    terms = [(-1) ** (j + 1) * t**j * v for j, v in f.phi.items()]
    return f.distinct + math.fsum(terms)


def _binom_tail(J, q):
    """``P[Bin(J, q) >= j]`` for ``j = 0..J``."""
    pmf = [math.comb(J, i) * q**i * (1 - q) ** (J - i) for i in range(J + 1)]
    return [math.fsum(pmf[j:]) for j in range(J + 1)]


def efron_thisted_support(f, t, J):
    """Efron-Thisted: Good-Toulmin terms damped by ``b_j = P[Bin(J, 1/(t+1)) >= j]``."""
    if not t > 0:
        raise DomainError("t must be positive")
    if J < 1:
        raise DomainError("J must be a positive integer")
    f = as_fingerprint(f)
    b = _binom_tail(int(J), 1.0 / (t + 1.0))
    terms = [(-1) ** (j + 1) * t**j * b[j] * v for j, v in f.phi.items() if j <= J]
    return f.distinct + math.fsum(terms)
