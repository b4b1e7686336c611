"""Closed-form null vector of s3 + i * s_axis by the row recurrence.

The matrix is tridiagonal in the m-descending basis, so fixing the last
component to 1 lets each row from the bottom up determine the component
above it; the top row is left over and its residual certifies
consistency. The subdiagonal coefficients never vanish, so the
recurrence has no breakdown and exhibits the uniqueness of the
eigenvector directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cmatrix import DEFAULT_TOLERANCE, Tolerance, rank
from .spins import Spin, nonnormal_hamiltonian

__all__ = ["KernelSolution", "kernel_vector", "verify_uniqueness"]


@dataclass(frozen=True, eq=False)
class KernelSolution:
    """Null vector of s3 + i * s_axis with residual certificates.

    ``vector`` is normalized with the last component real positive;
    ``raw_vector`` has last component exactly 1. ``residual`` is
    ||(s3 + i s_axis) vector||_2; ``consistency`` is the modulus of the
    unused top-row equation evaluated on the raw vector, divided by
    ||raw_vector||_2 so it is comparable across spins.
    """

    spin: Spin
    axis: int
    vector: np.ndarray
    raw_vector: np.ndarray
    residual: float
    consistency: float


def _recurrence(matrix: np.ndarray) -> tuple[np.ndarray, float]:
    n = matrix.shape[0]
    v = np.zeros(n, dtype=complex)
    v[n - 1] = 1.0
    if n > 1:
        v[n - 2] = -matrix[n - 1, n - 1] / matrix[n - 1, n - 2]
    for r in range(n - 2, 0, -1):
        v[r - 1] = -(matrix[r, r] * v[r] + matrix[r, r + 1] * v[r + 1]) \
            / matrix[r, r - 1]
    top = matrix[0, 0] * v[0]
    if n > 1:
        top += matrix[0, 1] * v[1]
    return v, abs(top)


def kernel_vector(s: Spin, axis: int) -> KernelSolution:
    """Solve (s3 + i * s_axis) v = 0 by the bottom-up recurrence.

    The raw recurrence runs unnormalized (components grow combinatorially
    with spin) and is scaled once at the end; the normalized vector's
    last component is real positive by construction.
    """
    if axis not in (1, 2):
        raise ValueError(f"invalid axis {axis!r}: must be 1 or 2")
    h = nonnormal_hamiltonian(s, axis, 1j)
    raw, top_residual = _recurrence(h.data)
    raw_norm = float(np.linalg.norm(raw))
    vector = raw / raw_norm
    residual = float(np.linalg.norm(h.data @ vector))
    return KernelSolution(spin=s, axis=axis, vector=vector, raw_vector=raw,
                          residual=residual,
                          consistency=top_residual / raw_norm)


def verify_uniqueness(s: Spin, axis: int,
                      tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """True iff rank(s3 + i * s_axis) = n - 1, i.e. the null vector is
    unique up to scale."""
    h = nonnormal_hamiltonian(s, axis, 1j)
    return rank(h, tol) == s.dimension - 1
