"""Matrix representation of quadratic two-mode Fermi operators.

The operator sum_{jk} m_jk c_j^dag c_k acts on the four-dimensional Fock
space with basis |0>, c1^dag|0>, c2^dag|0>, c1^dag c2^dag|0> (doubly
occupied ket in that creation order). In this basis the representation
has a closed block form: zero on the vacuum, the coefficient matrix m on
the singly-occupied block, trace(m) on the doubly-occupied corner. The
constructor cross-checks the block rule against a direct application of
the anticommutation relations on the four kets and insists on exact
agreement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cmatrix import (CMatrix, DEFAULT_TOLERANCE, Tolerance, eigenvalues,
                      rank)
from .errors import DimensionError

__all__ = ["FermiQuadratic", "RepEigenAnalysis", "quadratic_fermi_rep",
           "rep_eigen_analysis"]

# Occupation (n1, n2) of each Fock basis ket, in basis order.
_BASIS = ((0, 0), (1, 0), (0, 1), (1, 1))
_INDEX = {occ: i for i, occ in enumerate(_BASIS)}


@dataclass(frozen=True, eq=False)
class FermiQuadratic:
    """Coefficient matrix and its 4x4 Fock-space representation."""

    m: CMatrix
    rep: CMatrix


@dataclass(frozen=True, eq=False)
class RepEigenAnalysis:
    """Eigenvalues of the representation and the geometric multiplicity
    of the zero eigenvalue (4 - rank(rep))."""

    eigenvalues: np.ndarray
    geometric_multiplicity_of_zero: int


def _annihilate(mode: int, occ: tuple[int, int]) -> tuple[int, tuple[int, int]]:
    """Apply c_mode to an occupation ket; returns (sign, occ) with sign 0
    when the mode is empty. The sign is (-1)^(operators to jump over)."""
    n1, n2 = occ
    if mode == 1:
        return (1, (0, n2)) if n1 == 1 else (0, occ)
    if n2 == 1:
        return ((-1) ** n1, (n1, 0))
    return (0, occ)


def _create(mode: int, occ: tuple[int, int]) -> tuple[int, tuple[int, int]]:
    n1, n2 = occ
    if mode == 1:
        return (1, (1, n2)) if n1 == 0 else (0, occ)
    if n2 == 0:
        return ((-1) ** n1, (n1, 1))
    return (0, occ)


def _brute_force_rep(m: np.ndarray) -> np.ndarray:
    rep = np.zeros((4, 4), dtype=complex)
    for col, occ in enumerate(_BASIS):
        for j in (1, 2):
            for k in (1, 2):
                sign_a, occ_a = _annihilate(k, occ)
                if sign_a == 0:
                    continue
                sign_c, occ_c = _create(j, occ_a)
                if sign_c == 0:
                    continue
                rep[_INDEX[occ_c], col] += m[j - 1, k - 1] * sign_a * sign_c
    return rep


def quadratic_fermi_rep(m: CMatrix) -> FermiQuadratic:
    """Build the 4x4 Fock representation of sum m_jk c_j^dag c_k.

    Uses the closed block rule and asserts exact entry-wise agreement
    with the brute-force anticommutator construction.
    """
    if m.rows != 2 or m.cols != 2:
        raise DimensionError(f"coefficient matrix must be 2x2, got "
                             f"{m.rows}x{m.cols}")
    rep = np.zeros((4, 4), dtype=complex)
    rep[1:3, 1:3] = m.data
    rep[3, 3] = m.data[0, 0] + m.data[1, 1]
    brute = _brute_force_rep(m.data)
    if not np.array_equal(rep, brute):
        raise ArithmeticError("block rule and Fock construction disagree")
    return FermiQuadratic(m=m, rep=CMatrix(rep))


def rep_eigen_analysis(f: FermiQuadratic,
                       tol: Tolerance = DEFAULT_TOLERANCE) -> RepEigenAnalysis:
    """Eigenvalues of the representation and the dimension of its null
    space."""
    return RepEigenAnalysis(
        eigenvalues=eigenvalues(f.rep),
        geometric_multiplicity_of_zero=4 - rank(f.rep, tol),
    )
