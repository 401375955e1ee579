import numpy as np
import pytest

from sequr.linalg import spectral_resolution
from sequr.qubit import PAULI_X, PAULI_Y, PAULI_Z


@pytest.fixture(scope="session")
def sigma_z():
    return spectral_resolution(PAULI_Z)


@pytest.fixture(scope="session")
def sigma_x():
    return spectral_resolution(PAULI_X)


@pytest.fixture(scope="session")
def sigma_y():
    return spectral_resolution(PAULI_Y)


@pytest.fixture(scope="session")
def z_plus():
    return np.outer([1, 0], [1, 0]).astype(complex)


@pytest.fixture(scope="session")
def x_plus():
    v = np.array([1, 1], dtype=complex) / np.sqrt(2)
    return np.outer(v, v.conj())
