"""Estimating symmetric properties of a distribution from a sample.

Support size and entropy estimators built from polynomial approximation,
with classical baselines for comparison. A seeded Monte Carlo harness
measures their risk on synthetic distributions.
"""

__version__ = "0.1.0"

from .exceptions import (
    ConvergenceError,
    DegenerateIntervalError,
    DomainError,
    NumericalError,
    ParseError,
    PolyestError,
    UndefinedEstimatorError,
)
from .fingerprints import (
    Fingerprint,
    Histogram,
    build_fingerprint,
    build_histogram,
    parse_input,
    tokenize_words,
    write_fingerprint,
)
from .polycore import (
    Polynomial,
    RemezResult,
    bernstein_eval,
    chebyshev_first_kind,
    discrete_chebyshev,
    falling_factorial,
    phi,
    remez,
    shifted_chebyshev_PL,
)
from .support import (
    LinearEstimator,
    SupportConfig,
    SupportEstimate,
    apply_linear,
    chao1_support,
    chebyshev_support,
    chebyshev_support_coeffs,
    chebyshev_support_coeffs_adaptive,
    efron_thisted_support,
    good_toulmin_support,
    good_turing_support,
    plugin_support,
)
from .distinct import (
    DistinctConfig,
    WeightSolution,
    build_design_B,
    closed_form_residual,
    coeffs_from_weights,
    estimate_distinct,
    select_params,
    solve_weights,
)
from .entropy import (
    EntropyConfig,
    EntropyEstimator,
    PhiApprox,
    build_entropy_estimator,
    empirical_entropy,
    entropy_record,
    estimate_entropy,
    miller_madow,
    phi_approx,
)
from .sim import (
    DiscreteDistribution,
    EstimatorSpec,
    ExperimentSpec,
    ExperimentResult,
    draw_sample,
    make_distribution,
    run_trials,
    trial_rng,
)
