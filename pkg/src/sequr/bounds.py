"""Closed-form lower bounds on entropic uncertainty sums.

Two families: bounds for observables measured on distinct, identically
prepared ensembles (Deutsch, Partovi, Maassen-Uffink, Krishna-Parthasarathy),
and the optimal bounds for observables measured sequentially on the same
ensemble, which reduce to minimizing the later measurements' entropies over
eigenstates of the first observable. Measurement order matters: none of the
sequential bounds are symmetrized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import Observable, operator_norm
from .optimize import OptimizerConfig, minimize_in_subspace
from .states import _clip_probabilities

#: Starts per subspace dimension when a degenerate eigenspace needs a search.
_SUBSPACE_STARTS = 8


def _require_nondegenerate(*observables: Observable) -> None:
    for obs in observables:
        if not obs.is_nondegenerate:
            raise ValueError(
                "observable has a degenerate spectrum; use the projector-norm "
                "variants (partovi/krishna-parthasarathy) instead"
            )


def squared_overlaps(a: Observable, b: Observable) -> np.ndarray:
    """Matrix of squared eigenvector overlaps |<a_i|b_j>|^2.

    Both spectra must be nondegenerate. The result is doubly stochastic: each
    row and column sums to 1.
    """
    a.require_same_dim(b)
    _require_nondegenerate(a, b)
    return np.abs(a.eigenbasis().conj().T @ b.eigenbasis()) ** 2


def transition_matrix(b: Observable, c: Observable) -> np.ndarray:
    """Doubly stochastic transition matrix U_jk = |<b_j|c_k>|^2."""
    return squared_overlaps(b, c)


def deutsch_bound(a: Observable, b: Observable, base: float = math.e) -> float:
    """2 log[2 / (1 + max overlap)]; zero only when the observables share an eigenvector."""
    top = math.sqrt(squared_overlaps(a, b).max())
    return 2.0 * math.log(2.0 / (1.0 + top)) / math.log(base)


def partovi_bound(a: Observable, b: Observable, base: float = math.e) -> float:
    """2 log[2 / max ||P_A(a_i) + P_B(b_j)||]; degeneracy-safe form of the Deutsch bound."""
    a.require_same_dim(b)
    top = max(
        operator_norm(pa + pb) for pa in a.projectors for pb in b.projectors
    )
    return 2.0 * math.log(2.0 / top) / math.log(base)


def maassen_uffink_bound(a: Observable, b: Observable, base: float = math.e) -> float:
    """log[1 / max |<a_i|b_j>|^2]; equals log(n) for complementary observables."""
    return -math.log(squared_overlaps(a, b).max()) / math.log(base) + 0.0


def krishna_parthasarathy_bound(a: Observable, b: Observable, base: float = math.e) -> float:
    """log[1 / max ||P_A(a_i) P_B(b_j)||^2]; degeneracy-safe and never below Partovi."""
    a.require_same_dim(b)
    top = max(
        operator_norm(pa @ pb) for pa in a.projectors for pb in b.projectors
    )
    return -2.0 * math.log(top) / math.log(base) + 0.0


def is_complementary(a: Observable, b: Observable, tol: float = 1e-9) -> bool:
    """True if every squared eigenvector overlap equals 1/dim within ``tol``."""
    u = squared_overlaps(a, b)
    return bool(np.abs(u - 1.0 / a.dim).max() <= tol)


def _projector_expectation_entropy(state: np.ndarray, obs: Observable, ln_base: float) -> float:
    p = _clip_probabilities(
        np.einsum("kij,i,j->k", np.stack(obs.projectors), state.conj(), state).real
    )
    p = p[p > 1e-15]
    return float(-(p * np.log(p)).sum() / ln_base)


def lambda_s_two(
    a: Observable, b: Observable, base: float = math.e,
    config: OptimizerConfig | None = None,
) -> float:
    """Optimal bound on the entropy sum when ``a`` is measured before ``b``.

    Equals the smallest entropy the ``b``-distribution can have in an
    eigenstate of ``a``. For a nondegenerate ``a`` this is a minimum over its
    eigenvectors in closed form; a degenerate eigenspace is searched
    numerically (``config`` seeds that search, 8 starts per subspace
    dimension). Order-dependent: swapping the arguments changes the value.
    """
    a.require_same_dim(b)
    ln_base = math.log(base)
    candidates = []
    for basis in a.eigenvectors:
        if basis.shape[1] == 1:
            candidates.append(
                _projector_expectation_entropy(basis[:, 0], b, ln_base)
            )
        else:
            cfg = config or OptimizerConfig(seed=0)
            cfg = OptimizerConfig(
                starts=_SUBSPACE_STARTS * basis.shape[1],
                max_iterations=cfg.max_iterations,
                value_tolerance=cfg.value_tolerance,
                step_tolerance=cfg.step_tolerance,
                seed=cfg.seed,
            )
            res = minimize_in_subspace(
                lambda psi: _projector_expectation_entropy(psi, b, ln_base),
                [basis[:, k] for k in range(basis.shape[1])],
                cfg,
            )
            candidates.append(res.value)
    return min(candidates)


@dataclass(frozen=True)
class TripleBound:
    """Sequential-measurement bound data for a three-observable chain.

    ``stagewise`` minimizes the second- and third-stage entropies over
    independent choices of the initial eigenstate and adds the results;
    ``common_state`` ties both stages to one initial eigenstate and is what an
    unconstrained minimization over states attains, so
    ``common_state >= stagewise`` always. ``second_stage`` is the third
    observable's entropy bound alone, and ``transition`` the doubly stochastic
    overlap matrix between the second and third eigenbases.
    """

    stagewise: float
    common_state: float
    second_stage: float
    transition: np.ndarray
    log_base: float


def lambda_s_three(
    a: Observable, b: Observable, c: Observable, base: float = math.e
) -> TripleBound:
    """Optimal bound data for the sequence ``a``, ``b``, ``c`` (nondegenerate spectra).

    The first-stage term is the two-observable bound for (``a``, ``b``); the
    second-stage term applies the overlap transition of (``b``, ``c``) to the
    first-stage distributions before taking entropies.
    """
    a.require_same_dim(b)
    a.require_same_dim(c)
    _require_nondegenerate(a, b, c)
    ln_base = math.log(base)

    u = squared_overlaps(a, b)
    v = transition_matrix(b, c)
    w = u @ v  # row i: distribution of the third outcome from eigenstate i

    def entropy_rows(rows):
        out = np.empty(rows.shape[0])
        for i, row in enumerate(rows):
            r = row[row > 1e-15]
            out[i] = -(r * np.log(r)).sum() / ln_base
        return out

    first = entropy_rows(u)
    second = entropy_rows(w)
    return TripleBound(
        stagewise=float(first.min() + second.min()),
        common_state=float((first + second).min()),
        second_stage=float(second.min()),
        transition=v,
        log_base=base,
    )


def second_stage_dominates(a: Observable, b: Observable, c: Observable,
                           slack: float = 1e-9) -> bool:
    """Check that the third-stage entropy bound is at least the second-stage one.

    Because the overlap transition between the later eigenbases is doubly
    stochastic, appending a measurement cannot lower the optimal entropy
    bound of the final outcome.
    """
    triple = lambda_s_three(a, b, c)
    return triple.second_stage >= lambda_s_two(a, b) - slack


@dataclass(frozen=True)
class BoundReport:
    """All closed-form bounds for one ordered pair of observables.

    ``deutsch`` and ``maassen_uffink`` are ``None`` when either spectrum is
    degenerate (their projector-norm generalizations are always present).
    """

    deutsch: float | None
    partovi: float
    maassen_uffink: float | None
    krishna_parthasarathy: float
    lambda_s: float
    log_base: float


def bound_report(
    a: Observable, b: Observable, base: float = math.e,
    config: OptimizerConfig | None = None,
) -> BoundReport:
    """Evaluate every analytic bound for the ordered pair (``a``, ``b``)."""
    nondegenerate = a.is_nondegenerate and b.is_nondegenerate
    return BoundReport(
        deutsch=deutsch_bound(a, b, base) if nondegenerate else None,
        partovi=partovi_bound(a, b, base),
        maassen_uffink=maassen_uffink_bound(a, b, base) if nondegenerate else None,
        krishna_parthasarathy=krishna_parthasarathy_bound(a, b, base),
        lambda_s=lambda_s_two(a, b, base, config),
        log_base=base,
    )
