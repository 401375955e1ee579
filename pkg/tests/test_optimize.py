import math

import numpy as np
import pytest

from sequr.bounds import krishna_parthasarathy_bound, lambda_s_two
from sequr.errors import OptimizerFailure
from sequr.optimize import (
    OptimizerConfig,
    lambda_d_numeric,
    lambda_s3_numeric,
    lambda_s_numeric,
    minimize_in_subspace,
    minimize_over_pure_states,
)
from sequr.qubit import PAULI_X, PAULI_Z, spin_observable
from sequr.states import random_observable

CFG = OptimizerConfig(starts=8, seed=7)


def entropy_of(expectations):
    p = np.clip(expectations, 0.0, None)
    p = p[p > 1e-15]
    return float(-(p * np.log(p)).sum())


def tilted_spin(deg):
    theta = math.radians(deg)
    return spin_observable((math.sin(theta), 0.0, math.cos(theta)))


class TestMinimizeOverPureStates:
    def test_expectation_reaches_smallest_eigenvalue(self):
        result = minimize_over_pure_states(
            lambda psi: float((psi.conj() @ PAULI_Z @ psi).real), dim=2, config=CFG
        )
        assert result.value == pytest.approx(-1.0, abs=1e-8)
        # minimizer is |z-> up to phase
        assert abs(result.minimizer[1]) == pytest.approx(1.0, abs=1e-4)

    def test_constant_objective(self):
        result = minimize_over_pure_states(lambda psi: 2.5, dim=3, config=CFG)
        assert result.value == 2.5
        assert np.linalg.norm(result.minimizer) == pytest.approx(1.0)

    def test_entropy_pair_objective(self):
        z, x = PAULI_Z, PAULI_X

        def objective(psi):
            pz = np.abs([psi[0], psi[1]]) ** 2
            px = np.abs([(psi[0] + psi[1]), (psi[0] - psi[1])]) ** 2 / 2
            return entropy_of(pz) + entropy_of(px)

        result = minimize_over_pure_states(objective, dim=2,
                                           config=OptimizerConfig(starts=16, seed=3))
        assert result.value == pytest.approx(0.693, abs=5e-4)

    def test_determinism(self):
        obs = random_observable(3, seed=77)

        def objective(psi):
            return entropy_of(
                np.einsum("kij,i,j->k", np.stack(obs.projectors), psi.conj(), psi).real
            )

        first = minimize_over_pure_states(objective, 3, CFG)
        second = minimize_over_pure_states(objective, 3, CFG)
        assert first.value == second.value
        assert first.per_start_values == second.per_start_values
        assert np.array_equal(first.minimizer, second.minimizer)

    def test_result_invariants(self):
        def objective(psi):
            return float((psi.conj() @ PAULI_X @ psi).real)

        result = minimize_over_pure_states(objective, 2, CFG)
        assert result.value == min(result.per_start_values)
        assert objective(result.minimizer) == pytest.approx(result.value, abs=1e-9)
        assert result.starts_converged >= 1

    def test_non_finite_objective_raises(self):
        with pytest.raises(OptimizerFailure, match="non-finite"):
            minimize_over_pure_states(lambda psi: math.inf, 2, CFG)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            OptimizerConfig(starts=0)
        with pytest.raises(ValueError):
            OptimizerConfig(value_tolerance=0.0)


class TestMinimizeInSubspace:
    def test_one_dimensional_subspace(self):
        basis = [np.array([0.0, 1.0], dtype=complex)]
        result = minimize_in_subspace(
            lambda psi: float((psi.conj() @ PAULI_Z @ psi).real), basis, CFG
        )
        assert result.value == pytest.approx(-1.0)

    def test_full_space_matches_global(self):
        obs = random_observable(2, seed=5)

        def objective(psi):
            return float((psi.conj() @ obs.matrix @ psi).real)

        basis = [np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)]
        sub = minimize_in_subspace(objective, basis, CFG)
        full = minimize_over_pure_states(objective, 2, CFG)
        assert sub.value == pytest.approx(full.value, abs=1e-8)

    def test_empty_basis_rejected(self):
        with pytest.raises(ValueError, match="nonempty"):
            minimize_in_subspace(lambda psi: 0.0, [], CFG)

    def test_whole_space_eigenspace_x_entropy(self, sigma_x):
        # first observable is the identity: the search space is all of C^2 and
        # the x-entropy dips to zero at the x eigenstates
        def objective(psi):
            p = np.einsum("kij,i,j->k", np.stack(sigma_x.projectors),
                          psi.conj(), psi).real
            return entropy_of(p)

        basis = [np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)]
        result = minimize_in_subspace(objective, basis,
                                      OptimizerConfig(starts=16, seed=11))
        assert result.value <= 1e-6

        # oracle: dense Bloch-sphere scan at 0.5 degree resolution
        thetas = np.radians(np.arange(0.0, 180.5, 0.5))
        phis = np.radians(np.arange(0.0, 360.0, 0.5))
        tt, pp = np.meshgrid(thetas, phis, indexing="ij")
        amp0 = np.cos(tt / 2)
        amp1 = np.sin(tt / 2) * np.exp(1j * pp)
        px = np.abs(amp0 + amp1) ** 2 / 2  # overlap with |x+>
        with np.errstate(divide="ignore", invalid="ignore"):
            h = -(px * np.log(px) + (1 - px) * np.log(1 - px))
        h = np.nan_to_num(h, nan=0.0)
        assert h.min() == pytest.approx(0.0, abs=1e-12)
        assert result.value <= h.min() + 1e-6


class TestLambdaDNumeric:
    def test_complementary_pair(self, sigma_z, sigma_x):
        result = lambda_d_numeric(sigma_z, sigma_x, OptimizerConfig(starts=16, seed=2))
        assert result.value == pytest.approx(math.log(2), abs=1e-4)

    def test_30_degrees(self, sigma_z):
        result = lambda_d_numeric(sigma_z, tilted_spin(30),
                                  OptimizerConfig(starts=16, seed=2))
        assert result.value == pytest.approx(0.173, abs=1e-3)

    def test_commuting_observables(self, sigma_z):
        result = lambda_d_numeric(sigma_z, sigma_z, OptimizerConfig(starts=16, seed=2))
        assert result.value == pytest.approx(0.0, abs=1e-6)

    def test_never_below_analytic_bounds(self):
        for i in range(10):
            dim = 2 + i % 3
            a = random_observable(dim, seed=2200 + i)
            b = random_observable(dim, seed=2300 + i)
            result = lambda_d_numeric(a, b, OptimizerConfig(starts=12, seed=i))
            assert result.value >= krishna_parthasarathy_bound(a, b) - 1e-6

    def test_low_angle_minimizer_is_bisector_eigenstate(self, sigma_z):
        # below the regime boundary the optimum sits in an eigenstate of the
        # bisector spin component sigma.(n1+n2)
        theta = math.radians(40)
        b = tilted_spin(40)
        result = lambda_d_numeric(sigma_z, b, OptimizerConfig(starts=16, seed=5))
        bisector = np.array([math.sin(theta), 0, 1 + math.cos(theta)])
        bisector /= np.linalg.norm(bisector)
        eigvecs = spin_observable(tuple(bisector)).eigenvectors
        fidelity = max(
            abs(np.vdot(eigvecs[k][:, 0], result.minimizer)) ** 2 for k in (0, 1)
        )
        assert fidelity >= 1.0 - 1e-4


class TestLambdaSNumeric:
    def test_complementary_pair(self, sigma_z, sigma_x):
        result = lambda_s_numeric(sigma_z, sigma_x, OptimizerConfig(starts=16, seed=2))
        assert result.value == pytest.approx(math.log(2), abs=1e-4)

    def test_50_degrees(self, sigma_z):
        result = lambda_s_numeric(sigma_z, tilted_spin(50),
                                  OptimizerConfig(starts=16, seed=2))
        assert result.value == pytest.approx(0.469, abs=1e-3)

    def test_equal_observables(self, sigma_x):
        result = lambda_s_numeric(sigma_x, sigma_x, OptimizerConfig(starts=16, seed=2))
        assert result.value == pytest.approx(0.0, abs=1e-6)

    def test_agrees_with_closed_form(self):
        for i in range(15):
            dim = 2 + i % 2
            a = random_observable(dim, seed=2400 + i)
            b = random_observable(dim, seed=2500 + i)
            result = lambda_s_numeric(a, b, OptimizerConfig(starts=16, seed=i))
            assert abs(result.value - lambda_s_two(a, b)) <= 1e-4


class TestLambdaS3Numeric:
    def test_all_equal(self, sigma_z):
        result = lambda_s3_numeric(sigma_z, sigma_z, sigma_z,
                                   OptimizerConfig(starts=12, seed=2))
        assert result.value == pytest.approx(0.0, abs=1e-6)

    def test_zxz(self, sigma_z, sigma_x):
        result = lambda_s3_numeric(sigma_z, sigma_x, sigma_z,
                                   OptimizerConfig(starts=12, seed=2))
        assert result.value == pytest.approx(2 * math.log(2), abs=1e-3)

    def test_repeated_tail_doubles_pair_bound(self, sigma_z):
        b = tilted_spin(40)
        result = lambda_s3_numeric(sigma_z, b, b, OptimizerConfig(starts=12, seed=2))
        assert result.value == pytest.approx(0.722, abs=1e-3)
