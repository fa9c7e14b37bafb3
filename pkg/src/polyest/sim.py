"""Synthetic distributions with seeded samplers, plus the RMSE experiment runner.

Randomness comes from NumPy's ``PCG64`` generator. The sample for trial
``t`` at sample size ``n`` is drawn from
``default_rng(SeedSequence(seed, spawn_key=(n, t)))``, so it depends only
on the master seed, ``n`` and ``t``; every estimator in that trial sees the
same sample (paired comparison). Reproducibility holds per build; aggregate
floats are not promised to match bit-for-bit across platforms.
"""

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import distinct as _distinct
from . import entropy as _entropy
from . import support as _support
from .exceptions import DomainError, PolyestError
from .fingerprints import Histogram, build_fingerprint
from .polycore import phi

__all__ = [
    "DiscreteDistribution",
    "EstimatorSpec",
    "ExperimentSpec",
    "ExperimentResult",
    "ESTIMATORS",
    "make_distribution",
    "draw_sample",
    "trial_rng",
    "run_trials",
]

CSV_HEADER = ["n", "estimator", "trials", "failures", "rmse", "std", "mean_estimate", "truth"]


@dataclass(frozen=True)
class DiscreteDistribution:
    probs: np.ndarray
    family: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise DomainError("probabilities must be a non-empty vector")
        if np.any(p <= 0):
            raise DomainError("all probabilities must be positive")
        if abs(math.fsum(p) - 1.0) > 1e-12:
            raise DomainError(f"probabilities sum to {math.fsum(p)!r}, not 1")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def k(self):
        return self.probs.size

    @property
    def support_size(self):
        return self.probs.size

    @property
    def entropy(self):
        return math.fsum(phi(self.probs))

    @property
    def min_mass(self):
        return float(self.probs.min())


def _normalize(w):
    w = np.asarray(w, dtype=float)
    return w / math.fsum(w)


def make_distribution(family, k, **params):
    """Build one of the synthetic families.

    ``"uniform"``; ``"zipf"`` with ``p_i ~ i^-alpha`` (``alpha`` defaults to
    1); ``"geo-zipf-mix"``, an even mixture whose first half is Zipf(1) and
    second half geometric with ratio ``1 - 2/k``, each half carrying mass 1/2.
    """
    k = int(k)
    if k < 2:
        raise DomainError("k must be at least 2")
    i = np.arange(1, k + 1, dtype=float)
    if family == "uniform":
        p = np.full(k, 1.0 / k)
    elif family == "zipf":
        alpha = float(params.get("alpha", 1.0))
        params = {"alpha": alpha}
        p = _normalize(i ** -alpha)
    elif family in ("geo-zipf-mix", "mixture"):
        if k % 2:
            raise DomainError("the geometric/Zipf mixture needs an even k")
        family = "geo-zipf-mix"
        h = k // 2
        j = np.arange(h, dtype=float)
        p = np.concatenate((0.5 * _normalize(1.0 / (j + 1)), 0.5 * _normalize((1 - 2 / k) ** j)))
    else:
        raise DomainError(f"unknown distribution family {family!r}")
    # absorb the last rounding error so the sum is 1 to working precision
    p[-1] += 1.0 - math.fsum(p)
    return DiscreteDistribution(p, family, dict(params))


def trial_rng(seed, n, trial):
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(int(n), int(trial))))


def draw_sample(P, n, mode="iid", seed=None):
    """Histogram of a sample of size ``n`` (or ``Poi(n)`` in poissonized mode).

    Symbol labels are the integer indices ``1..k``. ``seed`` may be an
    integer or anything ``numpy.random.default_rng`` accepts.
    """
    if n < 0:
        raise DomainError("sample size must be nonnegative")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if mode == "iid":
        counts = rng.multinomial(int(n), P.probs)
    elif mode in ("poissonized", "poisson"):
        counts = rng.poisson(n * P.probs)
    else:
        raise DomainError(f"unknown sampling mode {mode!r}")
    idx = np.flatnonzero(counts)
    return Histogram(dict(zip((idx + 1).tolist(), counts[idx].tolist())))


# --- estimator registry -------------------------------------------------
#
# Each entry maps a name to (property, function). The function takes the
# sample histogram with the true distribution plus the estimator's parameters
# and returns a float. ``k`` defaults to round(1 / min mass), the alphabet bound
# the support estimators assume.


def _k_default(P, params):
    return int(params.get("k") or round(1.0 / P.min_mass))


def _chebyshev(h, P, params):
    k = _k_default(P, params)
    f = build_fingerprint(h)
    if f.n == 0:
        return 0.0
    cfg = _support.SupportConfig(k=k, c0=params.get("c0", 0.45), c1=params.get("c1", 0.5))
    e = _support.chebyshev_support_coeffs(cfg, f.n)
    return _support.apply_linear(f, e, k).estimate


def _chebyshev_adaptive(h, P, params):
    f = build_fingerprint(h)
    return _support.chebyshev_support(
        f, eps=params.get("eps", 0.1), c0=params.get("c0", 0.45), c1=params.get("c1", 0.5)
    ).estimate


def _distinct_est(h, P, params):
    k = _k_default(P, params)
    cfg = _distinct.DistinctConfig(
        k=k, n=params.get("n", h.n), alpha=params["alpha"], beta=params["beta"]
    )
    return _distinct.estimate_distinct(h, cfg).estimate


def _entropy_poly(h, P, params):
    cfg = _entropy.EntropyConfig(
        k=params.get("k", P.k),
        c0=params.get("c0", 1.6),
        c1=params.get("c1", 3.5),
        c2=params.get("c2", 1.6),
        adaptive=params.get("adaptive", False),
    )
    return _entropy.estimate_entropy(h, cfg)


ESTIMATORS = {
    "plugin": ("support", lambda h, P, p: float(h.distinct)),
    "chebyshev": ("support", _chebyshev),
    "chebyshev-adaptive": ("support", _chebyshev_adaptive),
    "good-turing": ("support", lambda h, P, p: _support.good_turing_support(h)),
    "chao1": ("support", lambda h, P, p: _support.chao1_support(h)),
    "good-toulmin": ("support", lambda h, P, p: _support.good_toulmin_support(h, p["t"])),
    "efron-thisted": (
        "support",
        lambda h, P, p: _support.efron_thisted_support(h, p["t"], p["J"]),
    ),
    "distinct": ("support", _distinct_est),
    "entropy-plugin": ("entropy", lambda h, P, p: _entropy.empirical_entropy(h)),
    "miller-madow": ("entropy", lambda h, P, p: _entropy.miller_madow(h)),
    "entropy-poly": ("entropy", _entropy_poly),
}


@dataclass(frozen=True)
class EstimatorSpec:
    name: str
    params: dict = field(default_factory=dict)
    label: str = None

    def __post_init__(self):
        if self.name not in ESTIMATORS:
            raise DomainError(f"unknown estimator {self.name!r}; choose from {sorted(ESTIMATORS)}")

    @property
    def key(self):
        return self.label or self.name


@dataclass(frozen=True)
class ExperimentSpec:
    family: str
    k: int
    estimators: tuple
    sample_sizes: tuple
    trials: int = 50
    mode: str = "iid"
    seed: int = 0
    family_params: dict = field(default_factory=dict)

    def __post_init__(self):
        ests = tuple(e if isinstance(e, EstimatorSpec) else EstimatorSpec(e) for e in self.estimators)
        object.__setattr__(self, "estimators", ests)
        object.__setattr__(self, "sample_sizes", tuple(int(n) for n in self.sample_sizes))
        if self.trials < 1:
            raise DomainError("trials must be at least 1")
        if not self.sample_sizes or min(self.sample_sizes) < 1:
            raise DomainError("sample sizes must be positive")
        if not ests:
            raise DomainError("no estimators given")

    def to_dict(self):
        d = asdict(self)
        d["estimators"] = [asdict(e) for e in self.estimators]
        d["pairing"] = "estimators share the sample within each trial"
        d["rng"] = "numpy PCG64, SeedSequence(seed, spawn_key=(n, trial))"
        return d


@dataclass
class ResultRow:
    n: int
    estimator: str
    trials: int
    failures: int
    rmse: float
    std: float
    mean_estimate: float
    truth: float
    wall_time: float = 0.0
    errors: list = field(default_factory=list, repr=False)


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    rows: list

    def row(self, n, estimator):
        for r in self.rows:
            if r.n == n and r.estimator == estimator:
                return r
        raise KeyError((n, estimator))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow([r.n, r.estimator, r.trials, r.failures,
                        repr(r.rmse), repr(r.std), repr(r.mean_estimate), repr(r.truth)])
        return buf.getvalue()

    def to_json(self, **kw):
        rows = []
        for r in self.rows:
            d = asdict(r)
            d.pop("errors")
            rows.append(d)
        return json.dumps({"spec": self.spec.to_dict(), "results": rows}, **kw)


def _run_one(spec, P, n, trial):
    h = draw_sample(P, n, spec.mode, trial_rng(spec.seed, n, trial))
    out = []
    for e in spec.estimators:
        _, fn = ESTIMATORS[e.name]
        t0 = time.perf_counter()
        try:
            val = float(fn(h, P, e.params))
            err = None
        except PolyestError as exc:
            val, err = None, f"{type(exc).__name__}: {exc}"
        out.append((val, err, time.perf_counter() - t0))
    return out


def _aggregate(values, truth):
    if not values:
        return math.nan, math.nan, math.nan
    v = np.asarray(values, dtype=float)
    d = v - truth
    # np.sum uses pairwise summation
    rmse = math.sqrt(np.sum(d * d) / d.size)
    return rmse, float(np.std(d)), float(np.sum(v) / v.size)


def run_trials(spec, workers=None):
    """Run every (sample size, estimator) cell of ``spec``.

    Failed trials (an estimator raising, e.g. Good-Turing on an all-singleton
    sample) are counted in ``failures`` and left out of the aggregates.
    Results do not depend on ``workers``.
    """
    P = make_distribution(spec.family, spec.k, **spec.family_params)
    truths = {"support": float(P.support_size), "entropy": P.entropy}
    rows = []
    for n in spec.sample_sizes:
        if workers and workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                per_trial = list(pool.map(lambda t: _run_one(spec, P, n, t), range(spec.trials)))
        else:
            per_trial = [_run_one(spec, P, n, t) for t in range(spec.trials)]
        for i, e in enumerate(spec.estimators):
            prop = ESTIMATORS[e.name][0]
            cells = [tr[i] for tr in per_trial]
            vals = [c[0] for c in cells if c[1] is None]
            errs = [c[1] for c in cells if c[1] is not None]
            rmse, std, mean = _aggregate(vals, truths[prop])
            rows.append(ResultRow(
                n=n, estimator=e.key, trials=spec.trials, failures=len(errs),
                rmse=rmse, std=std, mean_estimate=mean, truth=truths[prop],
                wall_time=sum(c[2] for c in cells), errors=errs,
            ))
    return ExperimentResult(spec, rows)
