import numpy as np
import pytest

from qradon import linalg
from qradon.errors import NotHermitian, NotSquare, NotUnitary
from qradon.states import random_density

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def random_hermitian(dim, seed, scale=2.0):
    rho = random_density(dim, seed).matrix
    return scale * (rho - np.eye(dim) / dim)


class TestHermitianEigendecompose:
    def test_sigma_z_diagonal(self):
        es = linalg.hermitian_eigendecompose(SZ)
        assert np.allclose(es.eigenvalues, [-1.0, 1.0])

    def test_sigma_x_by_hand(self):
        # characteristic polynomial gives +/-1 with eigenvectors (1, -+1)/sqrt(2)
        es = linalg.hermitian_eigendecompose(SX)
        assert np.allclose(es.eigenvalues, [-1.0, 1.0])
        for k, expected in enumerate([np.array([1, -1]) / np.sqrt(2), np.array([1, 1]) / np.sqrt(2)]):
            v = es.basis[:, k]
            overlap = abs(np.vdot(expected, v))
            assert overlap == pytest.approx(1.0, abs=1e-12)

    def test_identity_dim4(self):
        es = linalg.hermitian_eigendecompose(np.eye(4, dtype=complex))
        assert np.allclose(es.eigenvalues, 1.0)
        assert np.allclose(es.basis @ es.basis.conj().T, np.eye(4), atol=1e-12)

    def test_rejects_non_square(self):
        with pytest.raises(NotSquare):
            linalg.hermitian_eigendecompose(np.zeros((2, 3)))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            linalg.hermitian_eigendecompose(np.array([[0, 1], [0, 0]], dtype=complex))

    @pytest.mark.parametrize("seed", range(10))
    @pytest.mark.parametrize("dim", [2, 3, 5, 8])
    def test_reconstruction_residual(self, dim, seed):
        h = random_hermitian(dim, seed)
        es = linalg.hermitian_eigendecompose(h)
        assert linalg.frobenius(es.reconstruct() - h) <= 1e-10 * max(linalg.frobenius(h), 1e-30)
        assert linalg.frobenius(es.basis @ es.basis.conj().T - np.eye(dim)) <= 1e-12

    @pytest.mark.parametrize("seed", range(5))
    def test_spectral_shift(self, seed):
        h = random_hermitian(4, seed)
        base = linalg.hermitian_eigendecompose(h).eigenvalues
        shifted = linalg.hermitian_eigendecompose(h + 0.5 * np.eye(4)).eigenvalues
        assert np.abs(shifted - base - 0.5).max() < 1e-12

    def test_deterministic(self):
        h = random_hermitian(6, 3)
        a = linalg.hermitian_eigendecompose(h)
        b = linalg.hermitian_eigendecompose(h.copy())
        assert np.array_equal(a.eigenvalues, b.eigenvalues)
        assert np.array_equal(a.basis, b.basis)


class TestDiagonalizeUnitary:
    def test_identity(self):
        phases, v = linalg.diagonalize_unitary(np.eye(3, dtype=complex))
        assert np.allclose(phases, 0.0)
        assert np.allclose(v, np.eye(3))

    def test_sigma_x(self):
        phases, v = linalg.diagonalize_unitary(SX)
        assert np.allclose(phases, [0.0, np.pi], atol=1e-12)
        rebuilt = (v * np.exp(1j * phases)) @ v.conj().T
        assert linalg.frobenius(rebuilt - SX) < 1e-10

    def test_diag_i_minus_i(self):
        phases, _ = linalg.diagonalize_unitary(np.diag([1j, -1j]))
        assert np.allclose(phases, [-np.pi / 2, np.pi / 2], atol=1e-12)

    def test_minus_one_maps_to_plus_pi(self):
        phases, _ = linalg.diagonalize_unitary(np.diag([-1.0 + 0j]))
        assert phases[0] == pytest.approx(np.pi)

    def test_rejects_non_unitary(self):
        with pytest.raises(NotUnitary):
            linalg.diagonalize_unitary(2 * np.eye(2, dtype=complex))

    @pytest.mark.parametrize("seed", range(8))
    def test_random_unitary_roundtrip(self, seed):
        h = random_hermitian(5, seed, scale=3.0)
        u = linalg.unitary_exp(h, 1.0)
        phases, v = linalg.diagonalize_unitary(u)
        rebuilt = (v * np.exp(1j * phases)) @ v.conj().T
        assert linalg.frobenius(rebuilt - u) < 1e-10
        assert np.all(np.diff(phases) >= -1e-15)

    @pytest.mark.parametrize("seed", range(5))
    def test_phases_match_generator_spectrum(self, seed):
        h = random_hermitian(4, seed)
        h *= 3.0 / np.abs(np.linalg.eigvalsh(h)).max()  # ||H|| < pi
        phases, _ = linalg.diagonalize_unitary(linalg.unitary_exp(h, 1.0))
        assert np.abs(np.sort(phases) - np.linalg.eigvalsh(h)).max() < 1e-10


class TestUnitaryExp:
    def test_t_zero(self):
        assert np.allclose(linalg.unitary_exp(SZ, 0.0), np.eye(2))

    def test_sigma_z_quarter_turn(self):
        assert np.allclose(linalg.unitary_exp(SZ, np.pi / 2), np.diag([1j, -1j]), atol=1e-14)

    @pytest.mark.parametrize("seed", range(5))
    def test_unitarity(self, seed):
        h = random_hermitian(5, seed)
        u = linalg.unitary_exp(h, 0.7)
        assert linalg.frobenius(u @ u.conj().T - np.eye(5)) < 1e-12

    @pytest.mark.parametrize("seed", range(5))
    def test_one_parameter_group_law(self, seed):
        h = random_hermitian(4, seed)
        lhs = linalg.unitary_exp(h, 0.4) @ linalg.unitary_exp(h, 1.1)
        assert linalg.frobenius(lhs - linalg.unitary_exp(h, 1.5)) < 1e-10


class TestPsdMinEigenvalue:
    def test_identity(self):
        assert linalg.psd_min_eigenvalue(np.eye(3, dtype=complex)) == pytest.approx(1.0)

    def test_indefinite_diagonal(self):
        assert linalg.psd_min_eigenvalue(np.diag([1.0, -2.0]).astype(complex)) == pytest.approx(-2.0)

    def test_rank_one_projector(self):
        v = np.array([1.0, 1.0], dtype=complex)
        proj = np.outer(v, v.conj()) / 2
        assert linalg.psd_min_eigenvalue(proj) == pytest.approx(0.0, abs=1e-14)
