"""
RMSE of support estimators on synthetic data
============================================

"""

from polyest import ExperimentSpec, run_trials

# 50 paired trials per sample size; every estimator sees the same sample
spec = ExperimentSpec(
    family="zipf",
    k=10**4,
    estimators=("plugin", "chebyshev", "good-turing", "chao1"),
    sample_sizes=(500, 2000, 8000),
    trials=50,
    seed=7,
)
result = run_trials(spec, workers=4)
print(result.to_csv())

# the same spec always gives the same table
assert run_trials(spec).to_csv() == result.to_csv()
