"""Null-vector recurrence against the printed vectors and the structural
invariants of the whole hierarchy."""

import numpy as np
import pytest

import spinpoint as sp
from spinpoint import Spin, kernel_vector, verify_uniqueness

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)
SQRT6 = np.sqrt(6.0)

PRINTED_VECTORS = {
    1: np.array([-1j, 1.0]) / SQRT2,
    2: np.array([-1.0, -1j * SQRT2, 1.0]) / 2.0,
    3: np.array([1j, -SQRT3, -1j * SQRT3, 1.0]) / np.sqrt(8.0),
    4: np.array([1.0, 2j, -SQRT6, -2j, 1.0]) / 4.0,
}


def phase_aligned_distance(u, v):
    """Max component deviation after quotienting one global phase."""
    overlap = np.vdot(v, u)
    phase = overlap / abs(overlap)
    return np.abs(u - phase * v).max()


class TestPrintedVectors:
    @pytest.mark.parametrize("twice", [1, 2, 3, 4])
    def test_matches_up_to_phase(self, twice):
        got = kernel_vector(Spin(twice), 1).vector
        assert phase_aligned_distance(got, PRINTED_VECTORS[twice]) <= 1e-12

    def test_raw_vector_rescales_last_entry(self):
        solution = kernel_vector(Spin(4), 1)
        assert solution.raw_vector[-1] == 1.0
        assert solution.vector[-1].real > 0.0
        assert solution.vector[-1].imag == 0.0

    def test_first_recurrence_step(self):
        # the bottom row forces v_{-s+1} = -i 2s / sqrt(2s)
        for twice in (1, 2, 3, 4, 9):
            s = twice / 2.0
            solution = kernel_vector(Spin(twice), 1)
            expected = -1j * 2.0 * s / np.sqrt(2.0 * s)
            assert solution.raw_vector[-2] == pytest.approx(expected, abs=1e-14)


class TestHierarchyInvariants:
    @pytest.mark.parametrize("twice", list(range(1, 26)))
    @pytest.mark.parametrize("axis", [1, 2])
    def test_residuals(self, twice, axis):
        n = twice + 1
        solution = kernel_vector(Spin(twice), axis)
        assert solution.residual <= 1e-10 * n
        assert solution.consistency <= 1e-10 * n
        assert np.abs(solution.vector).min() > 1e-10
        assert np.linalg.norm(solution.vector) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("twice", list(range(1, 26)))
    def test_alternation_structure(self, twice):
        # under the chosen phase convention the components alternate
        # between real and purely imaginary, counted from the bottom
        v = kernel_vector(Spin(twice), 1).vector
        n = twice + 1
        for offset, comp in enumerate(v[::-1]):
            if offset % 2 == 0:
                assert abs(comp.imag) <= 1e-10
            else:
                assert abs(comp.real) <= 1e-10

    @pytest.mark.parametrize("twice", [1, 2, 3, 4, 9, 16, 25])
    @pytest.mark.parametrize("axis", [1, 2])
    def test_cross_validation_against_nullspace(self, twice, axis):
        h = sp.nonnormal_hamiltonian(Spin(twice), axis, 1j)
        basis = sp.nullspace(h)
        assert len(basis) == 1
        v = kernel_vector(Spin(twice), axis).vector
        assert abs(np.vdot(v, basis[0])) >= 1.0 - 1e-10


class TestUniqueness:
    @pytest.mark.parametrize("twice,expected_rank", [(1, 1), (3, 3), (4, 4)])
    def test_low_spins(self, twice, expected_rank):
        assert verify_uniqueness(Spin(twice), 1)
        h = sp.nonnormal_hamiltonian(Spin(twice), 1, 1j)
        assert sp.rank(h) == expected_rank

    @pytest.mark.parametrize("axis", [1, 2])
    def test_all_spins(self, axis):
        for twice in range(1, 26):
            assert verify_uniqueness(Spin(twice), axis)

    def test_invalid_axis(self):
        with pytest.raises(ValueError):
            kernel_vector(Spin(1), 0)
