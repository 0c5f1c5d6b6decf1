"""Operator inequality checks for commuting Hermitian tuples.

Matrices are passed as complex (or real) NumPy arrays.
"""

import json

from ._opineq import (
    DEFAULT_SEED,
    ConfigError,
    DimensionError,
    DomainError,
    NumericalError,
    apply_function,
    check_trace_power_monotone,
    eigh,
    function_names,
    geometric_mean,
    geometric_mean_quadrature,
    is_psd,
    kyfan_check,
    loewner_leq,
    matrix_power,
    partial_sums,
    pinch,
    reproduce_example1,
    run_campaign_json,
    weak_majorize,
)

__version__ = "0.1.0"


def run_campaign(theorem, count=None, seed=DEFAULT_SEED, dim=None, arity=None, include_timing=True):
    """Run a campaign and return the report as a dict."""
    return json.loads(run_campaign_json(theorem, count, seed, dim, arity, include_timing))


__all__ = [
    "DEFAULT_SEED",
    "ConfigError",
    "DimensionError",
    "DomainError",
    "NumericalError",
    "apply_function",
    "check_trace_power_monotone",
    "eigh",
    "function_names",
    "geometric_mean",
    "geometric_mean_quadrature",
    "is_psd",
    "kyfan_check",
    "loewner_leq",
    "matrix_power",
    "partial_sums",
    "pinch",
    "reproduce_example1",
    "run_campaign",
    "run_campaign_json",
    "weak_majorize",
]
