"""Shared fixtures and reference constructions."""

import numpy as np
import pytest

from spinpoint import CMatrix

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def pauli():
    return CMatrix(SIGMA1), CMatrix(SIGMA2), CMatrix(SIGMA3)


def random_complex(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_cmatrix(rng, rows, cols=None):
    return CMatrix(random_complex(rng, rows, cols))


def random_hermitian(rng, n):
    m = random_complex(rng, n)
    return CMatrix((m + m.conj().T) / 2.0)


def random_unitary(rng, n):
    m = random_complex(rng, n)
    q, r = np.linalg.qr(m)
    return CMatrix(q * (np.diag(r) / np.abs(np.diag(r))))
