"""Shannon entropies of measurement outcome distributions, plus the variance relations.

Entropies default to natural log; every public function takes a ``base``
argument (use 2 for bits). The ``0 log 0 = 0`` convention is implemented by
dropping weights below 1e-15, which is the same thing at machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import Observable
from .states import outcome_probabilities, wigner_joint, _clip_probabilities

#: Weights below this contribute nothing to an entropy sum.
WEIGHT_FLOOR = 1e-15

DISTRIBUTION_TOL = 1e-9


def shannon_entropy(weights, base: float = math.e) -> float:
    """Entropy -sum p_i log p_i of a discrete distribution.

    The result lies in [0, log n]. Raises ``ValueError`` if the weights are
    not a probability distribution (within clipping tolerance) or the base is
    not > 1.
    """
    if base <= 1.0:
        raise ValueError("log base must be > 1")
    p = _clip_probabilities(np.asarray(weights, dtype=float).ravel())
    if p.max(initial=0.0) > 1.0 + DISTRIBUTION_TOL:
        raise ValueError("weights must lie in [0, 1]")
    if abs(p.sum() - 1.0) > DISTRIBUTION_TOL:
        raise ValueError(f"weights sum to {p.sum()!r}, not 1")
    p = p[p > WEIGHT_FLOOR]
    return float(-(p * np.log(p)).sum() / math.log(base)) + 0.0


def entropy_distinct(rho: np.ndarray, obs: Observable, base: float = math.e) -> float:
    """Entropic uncertainty of one observable measured on its own ensemble."""
    return shannon_entropy(outcome_probabilities(rho, obs), base)


@dataclass(frozen=True)
class EntropyReport:
    """Marginal and joint entropies of a sequential measurement."""

    s_a: float
    s_b: float
    s_joint: float
    log_base: float
    s_c: float | None = None

    def marginal_sum(self) -> float:
        return self.s_a + self.s_b + (self.s_c or 0.0)


def entropies_sequential(
    rho: np.ndarray, a: Observable, b: Observable, base: float = math.e
) -> EntropyReport:
    """Entropies of the outcome distributions when ``a`` then ``b`` are measured.

    The first marginal entropy coincides with the distinct-measurement value;
    the second is the distinct-measurement entropy of ``b`` in the collapsed
    state. The joint entropy obeys sub-additivity and dominates both marginals.
    """
    joint = wigner_joint(rho, a, b)
    pa, pb = joint.marginals()
    return EntropyReport(
        s_a=shannon_entropy(pa, base),
        s_b=shannon_entropy(pb, base),
        s_joint=shannon_entropy(joint.table, base),
        log_base=base,
    )


def entropies_sequential_3(
    rho: np.ndarray, a: Observable, b: Observable, c: Observable, base: float = math.e
) -> EntropyReport:
    """Entropies for the three-step sequence ``a``, ``b``, ``c``."""
    joint = wigner_joint(rho, a, b, c)
    pa, pb, pc = joint.marginals()
    return EntropyReport(
        s_a=shannon_entropy(pa, base),
        s_b=shannon_entropy(pb, base),
        s_c=shannon_entropy(pc, base),
        s_joint=shannon_entropy(joint.table, base),
        log_base=base,
    )


@dataclass(frozen=True)
class VarianceReport:
    """Variance-form uncertainty data for one pair of observables.

    ``var_a``/``var_b`` are the distinct-ensemble variances with the
    commutator lower bound ``robertson_rhs``. The ``_seq`` variances come from
    the sequential joint distribution; their product is bounded below by the
    squared covariance ``successive_rhs`` of that distribution, which equals
    ``|Tr[rho A C] - Tr[rho A] Tr[rho C]|^2`` for the compressed second
    observable ``C = sum_i P_A(a_i) B P_A(a_i)`` stored in ``c_of_b``.
    """

    var_a: float
    var_b: float
    robertson_rhs: float
    var_a_seq: float
    var_b_seq: float
    successive_rhs: float
    c_of_b: np.ndarray


def compressed_observable(a: Observable, b: Observable) -> np.ndarray:
    """The second observable averaged over the first's eigenspaces; commutes with ``a``."""
    a.require_same_dim(b)
    out = np.zeros_like(b.matrix)
    for p in a.projectors:
        out += p @ b.matrix @ p
    return out


def variance_relations(rho: np.ndarray, a: Observable, b: Observable) -> VarianceReport:
    """Evaluate both variance-form uncertainty relations for ``a`` and ``b`` on ``rho``."""
    a.require_same_dim(rho)
    b.require_same_dim(rho)
    rho = np.asarray(rho, dtype=complex)

    def expect(m):
        return np.trace(rho @ m)

    var_a = float((expect(a.matrix @ a.matrix) - expect(a.matrix) ** 2).real)
    var_b = float((expect(b.matrix @ b.matrix) - expect(b.matrix) ** 2).real)
    commutator = a.matrix @ b.matrix - b.matrix @ a.matrix
    robertson = 0.25 * abs(expect(commutator)) ** 2

    joint = wigner_joint(rho, a, b)
    pa, pb = joint.marginals()
    ea = float(pa @ joint.axes[0])
    eb = float(pb @ joint.axes[1])
    var_a_seq = float(pa @ joint.axes[0] ** 2) - ea**2
    var_b_seq = float(pb @ joint.axes[1] ** 2) - eb**2
    c_of_b = compressed_observable(a, b)
    successive = abs(expect(a.matrix @ c_of_b) - expect(a.matrix) * expect(c_of_b)) ** 2

    return VarianceReport(
        var_a=var_a,
        var_b=var_b,
        robertson_rhs=float(robertson),
        var_a_seq=var_a_seq,
        var_b_seq=var_b_seq,
        successive_rhs=float(successive),
        c_of_b=c_of_b,
    )
