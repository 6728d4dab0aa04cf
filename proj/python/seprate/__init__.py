"""Python bindings for the seprate library.

Bodies are passed as JSON descriptors, either as strings or as dicts:
``{"variant": "orthant", "d": 3}``.
"""

import json as _json

from . import _core
from ._core import (  # noqa: F401
    ConvergenceError,
    DomainError,
    ball_lower_separation,
    ball_prior_divergence,
    chi2_two_point,
    chisq_lower_threshold,
    chisq_upper_threshold,
    cli,
    fit_loglog,
    gaussian_tail_threshold,
    inflated_orthant_rho,
    moment_priors,
    prior_order,
    prior_parameters,
    run_check_suite,
    sample,
    tv_bound_product,
    tv_distance_1d,
    two_point_separation,
    v,
)


def _body(body):
    return body if isinstance(body, str) else _json.dumps(body)


def project(body, x):
    return _core.project(_body(body), x)


def distance(body, x):
    return _core.distance(_body(body), x)


def run_test(kind, body, X, n, alpha=0.05, beta=0.05, R=None):
    return _core.run_test(kind, _body(body), X, n, alpha, beta, R)


def guaranteed_separation(kind, body, n, alpha=0.05, beta=0.05, R=None):
    return _core.guaranteed_separation(kind, _body(body), n, alpha, beta, R)


def empirical_separation(kind, body, n, alpha=0.05, beta=0.05, reps=20000, seed=0, bisect_tol=0.02, R=None):
    return _core.empirical_separation(kind, _body(body), n, alpha, beta, reps, seed, bisect_tol, R)
