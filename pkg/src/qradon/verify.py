"""Runtime invariant suites behind the ``verify`` CLI subcommand.

Each suite exercises the documented invariants of one module on seeded
fixtures and reports the measured residual against its tolerance.  These are
smaller, self-contained versions of the development test suite, meant to be
run on an installed package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock, groups, linalg, pairs, radon, spin, states


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def _random_hermitian(dim: int, seed: int) -> np.ndarray:
    rho = states.random_density(dim, seed).matrix
    return rho - np.trace(rho).real * np.eye(dim) / dim + np.eye(dim) / dim


def verify_linalg(seed: int = 0) -> list[CheckResult]:
    out = []
    worst_rec = worst_shift = 0.0
    for k in range(20):
        h = 4.0 * (_random_hermitian(6, seed + k) - np.eye(6) / 6)
        es = linalg.hermitian_eigendecompose(h)
        worst_rec = max(worst_rec, linalg.frobenius(es.reconstruct() - h) / max(linalg.frobenius(h), 1e-30))
        shifted = linalg.hermitian_eigendecompose(h + 0.5 * np.eye(6))
        worst_shift = max(worst_shift, float(np.abs(shifted.eigenvalues - es.eigenvalues - 0.5).max()))
    out.append(CheckResult("linalg", "eigh reconstruction (20 seeded dim-6)", worst_rec, 1e-10))
    out.append(CheckResult("linalg", "spectral shift by 0.5", worst_shift, 1e-10))
    worst_group = 0.0
    worst_phase = 0.0
    for k in range(10):
        h = 2.0 * (_random_hermitian(4, seed + 100 + k) - np.eye(4) / 4)
        u1 = linalg.unitary_exp(h, 0.3)
        u2 = linalg.unitary_exp(h, 0.9)
        u12 = linalg.unitary_exp(h, 1.2)
        worst_group = max(worst_group, linalg.frobenius(u1 @ u2 - u12))
        hs = h * (3.0 / max(np.abs(np.linalg.eigvalsh(h)).max(), 1e-30))
        phases, _ = linalg.diagonalize_unitary(linalg.unitary_exp(hs, 1.0))
        worst_phase = max(worst_phase, float(np.abs(np.sort(phases) - np.sort(np.linalg.eigvalsh(hs))).max()))
    out.append(CheckResult("linalg", "one-parameter group law", worst_group, 1e-10))
    out.append(CheckResult("linalg", "unitary phases match generator spectrum", worst_phase, 1e-10))
    return out


def verify_states(seed: int = 0) -> list[CheckResult]:
    out = []
    worst = 0.0
    for k in range(200):
        rho = states.random_density(2, seed + k)
        back = states.bloch_density(states.bloch_from_density(rho))
        worst = max(worst, linalg.frobenius(back.matrix - rho.matrix))
    out.append(CheckResult("states", "Bloch round trip (200 seeded qubits)", worst, 1e-10))
    worst_sym = worst_tri = 0.0
    for k in range(50):
        a = states.random_density(3, seed + 1000 + 3 * k)
        b = states.random_density(3, seed + 1001 + 3 * k)
        c = states.random_density(3, seed + 1002 + 3 * k)
        dab = states.trace_distance(a, b)
        worst_sym = max(worst_sym, abs(dab - states.trace_distance(b, a)))
        worst_tri = max(
            worst_tri, dab - states.trace_distance(a, c) - states.trace_distance(c, b)
        )
    out.append(CheckResult("states", "trace distance symmetry", worst_sym, 1e-14))
    out.append(CheckResult("states", "trace distance triangle inequality", max(worst_tri, 0.0), 1e-12))
    return out


def verify_pairs(seed: int = 0) -> list[CheckResult]:
    out = []
    group, rep = groups.pauli_group()
    tset, dual = groups.rep_tomographic_pair(rep)
    worst = 0.0
    for k in range(100):
        rho = states.random_density(2, seed + k)
        f = pairs.sample(rho, tset)
        rec = pairs.reconstruct(f, dual)
        worst = max(worst, float(np.abs(rec - rho.matrix).max()))
    out.append(CheckResult("pairs", "left-inverse law on the Pauli pair", worst, 1e-10))
    gram_state = min(
        pairs.gram_min_eigenvalue(states.random_density(2, seed + k), tset) for k in range(50)
    )
    out.append(CheckResult("pairs", "Gram positivity for states", max(-gram_state, 0.0), 1e-10))
    fake = np.diag([1.5, -0.5]).astype(complex)
    gram_fake = pairs.gram_min_eigenvalue(fake, tset)
    # passes when the Gram spectrum is genuinely negative (< -1e-3)
    out.append(CheckResult("pairs", "Gram negativity for a non-state", gram_fake + 1e-3, 0.0))
    psi0 = np.array([1.0, 0.0], dtype=complex)
    frame = pairs.group_frame(rep, psi0)
    fb = pairs.frame_bounds(frame)
    tight_dev = max(abs(fb.lower - 8.0), abs(fb.upper - 8.0))
    out.append(CheckResult("pairs", "tight group frame bound |G|/n", tight_dev, 1e-10))
    dual_fr = pairs.dual_frame(frame)
    resolution = np.einsum("x,xi,xj->ij", frame.weights, dual_fr.vectors, frame.vectors.conj())
    out.append(
        CheckResult("pairs", "dual frame resolves identity", float(np.abs(resolution - np.eye(2)).max()), 1e-10)
    )
    out.append(
        CheckResult("pairs", "reproducing kernel self-consistency", pairs.reproducing_kernel_residual(frame), 1e-10)
    )
    a = states.random_density(2, seed + 777).matrix
    avg = pairs.average_conjugation(rep, a)
    target = np.trace(a) / 2 * np.eye(2)
    out.append(CheckResult("pairs", "conjugation average is Tr(A)/n I", float(np.abs(avg - target).max()), 1e-10))
    out.append(CheckResult("pairs", "Schur residual of the Pauli irrep", pairs.schur_residual(rep), 1e-10))
    return out


def verify_groups(seed: int = 0) -> list[CheckResult]:
    out = []
    for label, (group, rep) in (
        ("pauli", groups.pauli_group()),
        ("heisenberg(3)", groups.heisenberg_group(3)),
        ("cyclic(5)", groups.cyclic_group(5)),
        ("dihedral(4)", groups.dihedral_group(4)),
    ):
        worst = 0.0
        for k in range(10):
            rho = states.random_density(rep.dim, seed + k)
            chi = groups.smeared_character(rho, rep)
            try:
                rec = groups.reconstruct_finite(chi, rep)
                worst = max(worst, states.trace_distance(rho, rec))
            except groups.NotIrreducible:  # pragma: no cover - all fixtures irreducible
                worst = np.inf
        out.append(CheckResult("groups", f"round trip on {label}", worst, 1e-10))
    group, rep = groups.pauli_group()
    rho = states.random_density(2, seed + 5)
    worst_dft = worst_sum = 0.0
    for g in range(group.order):
        tom = groups.discrete_tomogram(rho, rep, g)
        chi_g = groups.character_from_tomogram(tom)
        direct = complex(np.trace(rho.matrix @ rep.matrices[g]))
        worst_dft = max(worst_dft, abs(chi_g - direct))
        worst_sum = max(worst_sum, abs(tom.weights.sum() - 1.0))
    out.append(CheckResult("groups", "tomogram DFT recovers the character", worst_dft, 1e-12))
    out.append(CheckResult("groups", "tomogram weights are stochastic", worst_sum, 1e-10))
    worst_equi = 0.0
    for h in range(group.order):
        uh = rep.matrices[h]
        moved = states.validate_density(uh.conj().T @ rho.matrix @ uh)
        chi_moved = groups.smeared_character(moved, rep)
        for g in range(group.order):
            conj_idx = group.mul[group.mul[h, g], group.inv[h]]
            lhs = complex(np.trace(rho.matrix @ rep.matrices[conj_idx]))
            worst_equi = max(worst_equi, abs(lhs - chi_moved.values[g]))
    out.append(CheckResult("groups", "equivariance under conjugation", worst_equi, 1e-12))
    reg = groups.regular_rep(groups.cyclic_group(4)[0])
    chars = np.einsum("gii->g", reg.matrices)
    target = np.zeros(4, dtype=complex)
    target[reg.group.identity] = 4.0
    out.append(
        CheckResult("groups", "regular representation character", float(np.abs(chars - target).max()), 1e-15)
    )
    sub = groups.pauli_phase_z_subgroup()
    diag_rho = states.validate_density(np.diag([0.75, 0.25]).astype(complex))
    adapted = groups.adapted_check_and_reconstruct(diag_rho, rep, sub)
    res = float(np.abs(adapted.reconstruction - diag_rho.matrix).max()) if adapted.is_adapted else np.inf
    out.append(CheckResult("groups", "adapted state rebuilt from subgroup", res, 1e-12))
    return out


def verify_spin(seed: int = 0) -> list[CheckResult]:
    out = []
    rng = states.SplitMix64(seed + 42)
    worst_norm = 0.0
    for k in range(500):
        rho = states.random_density(2, seed + k)
        axis = spin.SpinAxis(*(2 * rng.uniform() - 1 for _ in range(3)))
        tom = spin.spin_tomogram(rho, axis)
        worst_norm = max(worst_norm, abs(tom.weights.sum() - 1), float(-tom.weights.min()))
    out.append(CheckResult("spin", "tomogram stochasticity (500 seeded)", worst_norm, 1e-12))
    worst_rec = 0.0
    for k in range(5):
        rho = states.random_density(2, seed + 900 + k)
        rec = spin.su2_reconstruct(spin.state_character(rho), orders=(32, 32, 64))
        worst_rec = max(worst_rec, states.trace_distance(rho, rec))
    out.append(CheckResult("spin", "Haar-quadrature reconstruction", worst_rec, 1e-8))
    worst_eq = 0.0
    for k in range(20):
        rho = states.random_density(2, seed + 1700 + k)
        axis = spin.SpinAxis(rng.uniform() + 0.1, rng.uniform(), rng.uniform())
        angles = (2 * np.pi * rng.uniform(), np.pi * rng.uniform(), 2 * np.pi * rng.uniform())
        g = spin.euler_matrices(*angles)
        worst_eq = max(worst_eq, spin.equivariance_residual(rho, axis, g))
    out.append(CheckResult("spin", "equivariance under SU(2)", worst_eq, 1e-12))
    return out


def verify_fock(seed: int = 0) -> list[CheckResult]:
    out = []
    x = np.linspace(-8, 8, 801)
    vac = fock.fock_state(0, 32)
    one = fock.fock_state(1, 32)
    d = fock.WHDirection(mu=[1.0], nu=[0.0])
    tom_vac = fock.grid_tomogram(vac, d, x)
    tom_one = fock.grid_tomogram(one, d, x)
    exact_vac = np.exp(-(x**2)) / np.sqrt(np.pi)
    exact_one = 2 * x**2 * np.exp(-(x**2)) / np.sqrt(np.pi)
    out.append(CheckResult("fock", "vacuum tomogram vs closed form", float(np.abs(tom_vac.values - exact_vac).max()), 1e-6))
    out.append(CheckResult("fock", "one-photon tomogram vs closed form", float(np.abs(tom_one.values - exact_one).max()), 1e-6))
    out.append(CheckResult("fock", "tomogram normalization", max(abs(tom_vac.integral - 1), abs(tom_one.integral - 1)), 1e-6))
    out.append(CheckResult("fock", "tomogram reality residue", max(tom_vac.imag_residual, tom_one.imag_residual), 1e-10))
    worst_h = 0.0
    for c in (0.5, 2.0):
        dc = fock.WHDirection(mu=[c], nu=[0.0])
        tom_c = fock.grid_tomogram(one, dc, c * x)
        worst_h = max(worst_h, float(np.abs(c * tom_c.values - tom_one.values).max()))
    out.append(CheckResult("fock", "tomogram homogeneity", worst_h, 1e-5))
    axes = np.linspace(-6, 6, 161)
    w = fock.wigner(vac, axes, axes)
    exact_w = np.exp(-(axes[:, None] ** 2) - axes[None, :] ** 2) / np.pi
    out.append(CheckResult("fock", "vacuum Wigner vs closed form", float(np.abs(w - exact_w).max()), 1e-6))
    rec = fock.reconstruct_wh(fock.fock_state(0, 16), box=6.0, grid=32, cutoff=16)
    out.append(
        CheckResult("fock", "phase-space reconstruction of the vacuum",
                    states.trace_distance(rec.matrix, fock.fock_state(0, 16).matrix), 0.05)
    )
    return out


def verify_radon(seed: int = 0) -> list[CheckResult]:
    out = []
    axes = np.linspace(-9, 9, 257)
    qq, pp = np.meshgrid(axes, axes, indexing="ij")
    img = radon.ImageGrid.from_axes(axes, axes, np.exp(-(qq**2 + pp**2) / 2) / (2 * np.pi))
    thetas = np.pi * np.arange(45) / 45
    x = np.linspace(-9, 9, 257)
    sino = radon.radon(img, thetas, x)
    exact = np.exp(-(x**2) / 2) / np.sqrt(2 * np.pi)
    out.append(CheckResult("radon", "Gaussian sinogram vs closed form", float(np.abs(sino.values - exact[None, :]).max()), 1e-3))
    masses = sino.values.sum(axis=1) * sino.dx
    out.append(CheckResult("radon", "mass preservation per angle", float(np.abs(masses - img.mass()).max()), 1e-4))
    back = radon.inverse_radon(sino, out_grid=img)
    rel = np.linalg.norm(back.values - img.values) / np.linalg.norm(img.values)
    out.append(CheckResult("radon", "round trip relative L2 (45 angles)", float(rel), 0.02))
    return out


SUITES = {
    "linalg": verify_linalg,
    "states": verify_states,
    "pairs": verify_pairs,
    "groups": verify_groups,
    "spin": verify_spin,
    "fock": verify_fock,
    "radon": verify_radon,
}


def run(modules: list[str] | None = None, seed: int = 0) -> list[CheckResult]:
    chosen = modules or list(SUITES)
    results: list[CheckResult] = []
    for name in chosen:
        results.extend(SUITES[name](seed=seed))
    return results


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results) + 2
    lines = [f"{'module':<8} {'check':<{width}} {'residual':>12} {'tolerance':>12} status"]
    for r in results:
        status = "pass" if r.passed else "FAIL"
        tol = "-" if np.isinf(r.tolerance) else f"{r.tolerance:.1e}"
        lines.append(f"{r.module:<8} {r.name:<{width}} {r.residual:12.3e} {tol:>12} {status}")
    return "\n".join(lines)
