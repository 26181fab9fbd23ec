import numpy as np
import pytest

from qradon import groups, pairs
from qradon.errors import BadParameter, NotIrreducible, NotSubgroup, ToleranceError
from qradon.states import random_density, validate_density


@pytest.fixture(scope="module")
def pauli():
    return groups.pauli_group()


@pytest.fixture(scope="module")
def heis3():
    return groups.heisenberg_group(3)


class TestBuiltinGroups:
    def test_cyclic_character(self):
        group, rep = groups.cyclic_group(3, k=1)
        omega = np.exp(2j * np.pi / 3)
        assert np.allclose(rep.matrices[:, 0, 0], [1, omega, omega**2])
        assert pairs.homomorphism_residual(rep) < 1e-14

    def test_pauli_order_and_irreducibility(self, pauli):
        group, rep = pauli
        assert group.order == 16 and rep.dim == 2
        assert pairs.schur_residual(rep) < 1e-12

    def test_heisenberg_clock_shift_commutation(self, heis3):
        group, rep = heis3
        assert group.order == 27 and rep.dim == 3
        omega = np.exp(2j * np.pi / 3)
        z = rep.matrices[1 * 3]  # (s=0, a=1, b=0)
        x = rep.matrices[1]  # (s=0, a=0, b=1)
        assert np.abs(z @ x - omega * x @ z).max() < 1e-14
        assert pairs.schur_residual(rep) < 1e-10

    def test_heisenberg_requires_odd_prime(self):
        with pytest.raises(BadParameter):
            groups.heisenberg_group(4)

    def test_dihedral(self):
        group, rep = groups.dihedral_group(5)
        assert group.order == 10 and rep.dim == 2
        assert pairs.schur_residual(rep) < 1e-12

    def test_parser(self):
        for spec, order in [("pauli", 16), ("cyclic:6", 6), ("heisenberg:3", 27), ("dihedral:4", 8)]:
            group, _ = groups.builtin_group(spec)
            assert group.order == order
        with pytest.raises(BadParameter):
            groups.builtin_group("tetrahedral:3")


class TestSmearedCharacter:
    @pytest.mark.parametrize("seed", range(5))
    def test_identity_value(self, pauli, seed):
        _, rep = pauli
        chi = groups.smeared_character(random_density(2, seed), rep)
        assert chi.values[rep.group.identity] == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed_gives_normalized_character(self, heis3):
        _, rep = heis3
        chi = groups.smeared_character(validate_density(np.eye(3, dtype=complex) / 3), rep)
        standard = np.einsum("gii->g", rep.matrices) / 3
        assert np.abs(chi.values - standard).max() < 1e-14

    def test_ground_state_on_pauli(self, pauli):
        _, rep = pauli
        rho = validate_density(np.diag([1.0, 0.0]).astype(complex))
        chi = groups.smeared_character(rho, rep)
        assert chi.values[3] == pytest.approx(1.0)  # sigma_z index
        assert chi.values[1] == pytest.approx(0.0, abs=1e-15)  # sigma_x index


class TestDiscreteTomogram:
    def test_identity_element_reads_diagonal(self, pauli):
        _, rep = pauli
        rho = random_density(2, 11)
        tom = groups.discrete_tomogram(rho, rep, rep.group.identity)
        assert np.allclose(tom.weights, np.diag(rho.matrix).real, atol=1e-12)
        assert np.allclose(tom.locations, 0.0)

    def test_sigma_x_splits_ground_state(self, pauli):
        _, rep = pauli
        rho = validate_density(np.diag([1.0, 0.0]).astype(complex))
        tom = groups.discrete_tomogram(rho, rep, 1)
        assert np.allclose(tom.locations, [0.0, np.pi], atol=1e-12)
        assert np.allclose(tom.weights, [0.5, 0.5], atol=1e-12)

    def test_stochastic_over_all_builtin_groups(self):
        for spec in ("pauli", "cyclic:5", "heisenberg:3", "dihedral:4"):
            _, rep = groups.builtin_group(spec)
            rho = random_density(rep.dim, 17)
            for g in range(rep.group.order):
                tom = groups.discrete_tomogram(rho, rep, g)
                assert tom.weights.min() >= -1e-10
                assert tom.weights.sum() == pytest.approx(1.0, abs=1e-10)

    def test_invalid_weights_rejected(self):
        with pytest.raises(ToleranceError):
            groups.DiscreteTomogram(locations=np.zeros(2), weights=np.array([0.7, 0.6]))


class TestCharacterFromTomogram:
    @pytest.mark.parametrize("seed", range(3))
    def test_matches_smeared_character(self, pauli, seed):
        _, rep = pauli
        rho = random_density(2, seed)
        chi = groups.smeared_character(rho, rep)
        for g in range(rep.group.order):
            val = groups.character_from_tomogram(groups.discrete_tomogram(rho, rep, g))
            assert abs(val - chi.values[g]) < 1e-12

    def test_identity_gives_one(self, pauli):
        _, rep = pauli
        tom = groups.discrete_tomogram(random_density(2, 5), rep, rep.group.identity)
        assert groups.character_from_tomogram(tom) == pytest.approx(1.0, abs=1e-12)

    def test_one_dimensional_rep(self):
        _, rep = groups.cyclic_group(4, k=1)
        rho = validate_density(np.eye(1, dtype=complex))
        tom = groups.discrete_tomogram(rho, rep, 1)
        assert groups.character_from_tomogram(tom) == pytest.approx(1j, abs=1e-12)


class TestReconstructFinite:
    @pytest.mark.parametrize("spec", ["pauli", "heisenberg:3", "dihedral:5", "cyclic:4"])
    def test_round_trip(self, spec):
        _, rep = groups.builtin_group(spec)
        from qradon.states import trace_distance

        for seed in range(10):
            rho = random_density(rep.dim, seed)
            rec = groups.reconstruct_finite(groups.smeared_character(rho, rep), rep)
            assert trace_distance(rho, rec) < 1e-10

    def test_mixed_state_fixed_point(self, heis3):
        _, rep = heis3
        rho = validate_density(np.eye(3, dtype=complex) / 3)
        rec = groups.reconstruct_finite(groups.smeared_character(rho, rep), rep)
        assert np.abs(rec.matrix - rho.matrix).max() < 1e-12

    def test_reducible_rep_rejected(self):
        group, _ = groups.cyclic_group(4)
        rep = groups.regular_rep(group)
        rho = random_density(4, 1)
        with pytest.raises(NotIrreducible):
            groups.reconstruct_finite(groups.smeared_character(rho, rep), rep)


class TestAdaptedStates:
    def test_diagonal_state_is_adapted(self, pauli):
        _, rep = pauli
        h = groups.pauli_phase_z_subgroup()
        rho = validate_density(np.diag([0.8, 0.2]).astype(complex))
        out = groups.adapted_check_and_reconstruct(rho, rep, h)
        assert out.is_adapted
        assert np.abs(out.reconstruction - rho.matrix).max() < 1e-12

    def test_plus_state_is_not_adapted(self, pauli):
        _, rep = pauli
        h = groups.pauli_phase_z_subgroup()
        rho = validate_density((np.eye(2) + np.array([[0, 1], [1, 0]])) / 2)
        out = groups.adapted_check_and_reconstruct(rho, rep, h)
        assert not out.is_adapted
        assert out.max_character_off_subgroup == pytest.approx(1.0)

    def test_full_group_reduces_to_reconstruction(self, pauli):
        _, rep = pauli
        rho = random_density(2, 23)
        out = groups.adapted_check_and_reconstruct(rho, rep, np.arange(16))
        assert out.is_adapted
        assert np.abs(out.reconstruction - rho.matrix).max() < 1e-12

    def test_non_subgroup_rejected(self, pauli):
        _, rep = pauli
        with pytest.raises(NotSubgroup):
            groups.adapted_check_and_reconstruct(random_density(2, 0), rep, [1, 2])


class TestRegularRep:
    def test_cyclic_four_character(self):
        group, _ = groups.cyclic_group(4)
        reg = groups.regular_rep(group)
        chars = np.einsum("gii->g", reg.matrices).real
        expected = np.zeros(4)
        expected[group.identity] = 4.0
        assert np.allclose(chars, expected)

    def test_permutation_matrices(self):
        group, _ = groups.cyclic_group(4)
        reg = groups.regular_rep(group)
        assert np.all((reg.matrices == 0) | (reg.matrices == 1))
        assert pairs.homomorphism_residual(reg) < 1e-15


class TestGramOverGroup:
    def test_eight_element_subsets_stay_psd(self, pauli):
        group, rep = pauli
        rng = np.random.default_rng(0)
        for seed in range(10):
            rho = random_density(2, seed)
            chi = groups.smeared_character(rho, rep)
            subset = rng.choice(group.order, size=8, replace=False)
            gram = np.empty((8, 8), dtype=complex)
            for i, gi in enumerate(subset):
                for j, gj in enumerate(subset):
                    gram[i, j] = chi.values[group.mul[group.inv[gi], gj]]
            lo = np.linalg.eigvalsh((gram + gram.conj().T) / 2).min()
            assert lo >= -1e-10


class TestEquivariance:
    def test_conjugation_matches_moved_state(self, pauli):
        group, rep = pauli
        rho = random_density(2, 31)
        worst = 0.0
        for h in range(group.order):
            uh = rep.matrices[h]
            moved = validate_density(uh.conj().T @ rho.matrix @ uh)
            chi_moved = groups.smeared_character(moved, rep)
            for g in range(group.order):
                conj_idx = group.mul[group.mul[h, g], group.inv[h]]
                direct = np.trace(rho.matrix @ rep.matrices[conj_idx])
                worst = max(worst, abs(direct - chi_moved.values[g]))
        assert worst < 1e-12


class TestSerialization:
    def test_round_trip(self, pauli):
        group, rep = pauli
        text = groups.group_to_json(group, [rep])
        group2, reps = groups.group_from_json(text)
        assert np.array_equal(group2.mul, group.mul)
        assert np.allclose(reps[0].matrices, rep.matrices)
