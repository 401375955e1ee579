"""Numerical infima of entropy sums over pure quantum states.

Restricting the search to pure states is exact: the entropy objectives are
concave in the density operator, so their infimum over the convex set of all
states is attained at an extreme point. A pure state in dimension d is
parameterized by 2d-1 reals (first amplitude real, global phase fixed,
normalization applied inside the objective), and each multi-start runs a
derivative-free Powell direction-set search from a seeded random start, so
results are deterministic and independent of scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .errors import OptimizerFailure
from .linalg import Observable, projector_stack
from .states import _clip_probabilities

_NORM_FLOOR = 1e-12
_PENALTY = 1e30


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 64
    max_iterations: int = 2000
    value_tolerance: float = 1e-8
    step_tolerance: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.starts < 1 or self.max_iterations < 1:
            raise ValueError("starts and max_iterations must be >= 1")
        if self.value_tolerance <= 0 or self.step_tolerance <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class OptimizerResult:
    value: float
    minimizer: np.ndarray  # unit vector achieving ``value``
    starts_converged: int
    per_start_values: tuple


def _params_to_state(params: np.ndarray, dim: int) -> np.ndarray | None:
    v = np.empty(dim, dtype=complex)
    v[0] = params[0]
    v[1:] = params[1::2] + 1j * params[2::2]
    norm = np.linalg.norm(v)
    if norm < _NORM_FLOOR:
        return None
    return v / norm


def minimize_over_pure_states(objective, dim: int, config: OptimizerConfig) -> OptimizerResult:
    """Multi-start minimization of ``objective`` over unit vectors in C^dim.

    Start k draws its initial point from a generator seeded with
    ``config.seed + k``, so the result depends only on the config. The
    reported value is the minimum over starts; the reported minimizer is the
    lowest-indexed start within ``value_tolerance`` of it. Raises
    ``OptimizerFailure`` if the objective goes non-finite or no start
    converges.
    """
    n_params = 2 * dim - 1

    def wrapped(params):
        state = _params_to_state(params, dim)
        if state is None:
            return _PENALTY
        value = objective(state)
        if not np.isfinite(value):
            raise OptimizerFailure("objective returned a non-finite value")
        return value

    values = []
    states = []
    converged = 0
    for k in range(config.starts):
        rng = np.random.default_rng(config.seed + k)
        x0 = rng.standard_normal(n_params)
        res = _scipy_minimize(
            wrapped,
            x0,
            method="Powell",
            options={
                "xtol": config.step_tolerance,
                "ftol": config.value_tolerance,
                "maxiter": config.max_iterations,
            },
        )
        if res.success:
            converged += 1
        values.append(float(res.fun))
        states.append(_params_to_state(np.atleast_1d(res.x), dim))

    if converged == 0:
        raise OptimizerFailure("no optimizer start converged")

    best = min(values)
    chosen = next(
        (i for i, (v, s) in enumerate(zip(values, states))
         if s is not None and v <= best + config.value_tolerance),
        None,
    )
    if chosen is None:
        raise OptimizerFailure("no start produced a valid state")
    return OptimizerResult(
        value=best,
        minimizer=states[chosen],
        starts_converged=converged,
        per_start_values=tuple(values),
    )


def minimize_in_subspace(objective, basis, config: OptimizerConfig) -> OptimizerResult:
    """Minimize over unit vectors in the span of an orthonormal ``basis``.

    Coefficients in the basis are parameterized exactly like a full-space
    state, then mapped back, so a full-space basis reproduces
    ``minimize_over_pure_states``.
    """
    vectors = [np.asarray(v, dtype=complex).ravel() for v in basis]
    if not vectors:
        raise ValueError("basis must be nonempty")
    basis = np.column_stack(vectors)
    k = basis.shape[1]
    if k == 1:
        vec = basis[:, 0]
        value = float(objective(vec))
        return OptimizerResult(value=value, minimizer=vec, starts_converged=1,
                               per_start_values=(value,))

    result = minimize_over_pure_states(lambda c: objective(basis @ c), k, config)
    return OptimizerResult(
        value=result.value,
        minimizer=basis @ result.minimizer,
        starts_converged=result.starts_converged,
        per_start_values=result.per_start_values,
    )


def _entropy_of_quadratic(stack: np.ndarray, state: np.ndarray, ln_base: float) -> float:
    """Entropy of the distribution <psi|M_k|psi> for a stack of operators M_k."""
    p = _clip_probabilities(np.einsum("kij,i,j->k", stack, state.conj(), state).real)
    p = p[p > 1e-15]
    return float(-(p * np.log(p)).sum() / ln_base)


def _distinct_stacks(observables) -> list:
    return [projector_stack(o) for o in observables]


def _sequential_stacks(chain) -> list:
    """Operator stacks whose expectations give each step's outcome distribution.

    Conjugating the k-th observable's projectors with all earlier projector
    sums moves the collapse maps onto the operators, so every marginal of the
    sequential measurement is a plain expectation in the initial state.
    """
    stacks = []
    for depth, obs in enumerate(chain):
        stack = projector_stack(obs)
        for earlier in reversed(chain[:depth]):
            ps = projector_stack(earlier)
            stack = np.einsum("mij,kjl,mln->kin", ps, stack, ps)
        stacks.append(stack)
    return stacks


def _lambda_result(stacks, dim, config, base) -> OptimizerResult:
    ln_base = math.log(base)
    # each stack's expectations sum to 1, so the entropy of the concatenated
    # distribution equals the sum of the per-observable entropies
    merged = np.concatenate(stacks, axis=0)

    def objective(state):
        return _entropy_of_quadratic(merged, state, ln_base)

    return minimize_over_pure_states(objective, dim, config)


def lambda_d_numeric(
    a: Observable, b: Observable, config: OptimizerConfig | None = None,
    base: float = math.e,
) -> OptimizerResult:
    """Optimal distinct-measurement bound: infimum of S(A) + S(B) over states."""
    a.require_same_dim(b)
    config = config or OptimizerConfig()
    return _lambda_result(_distinct_stacks([a, b]), a.dim, config, base)


def lambda_s_numeric(
    a: Observable, b: Observable, config: OptimizerConfig | None = None,
    base: float = math.e,
) -> OptimizerResult:
    """Optimal sequential bound for two observables, found numerically."""
    a.require_same_dim(b)
    config = config or OptimizerConfig()
    return _lambda_result(_sequential_stacks([a, b]), a.dim, config, base)


def lambda_s3_numeric(
    a: Observable, b: Observable, c: Observable,
    config: OptimizerConfig | None = None, base: float = math.e,
) -> OptimizerResult:
    """Optimal sequential bound for a three-observable chain, found numerically."""
    a.require_same_dim(b)
    a.require_same_dim(c)
    config = config or OptimizerConfig()
    return _lambda_result(_sequential_stacks([a, b, c]), a.dim, config, base)
