"""Finite-group tomography: built-in groups, discrete tomograms, reconstruction.

A state is sampled through the smeared character chi(g) = Tr(rho U(g)); the
discrete tomogram of a group element is the diagonal of the state in the
eigenbasis of U(g), and the character returns as its discrete Fourier sum.
Irreducible representations reconstruct the state exactly from |G| samples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadParameter,
    DimensionMismatch,
    FileFormatError,
    NotIrreducible,
    NotSubgroup,
    ReconstructionNotState,
    ToleranceError,
)
from .linalg import diagonalize_unitary, frobenius
from .pairs import (
    DualTomographicSet,
    SamplingFunction,
    TomographicSet,
    homomorphism_residual,
    schur_residual,
)
from .states import DensityMatrix, validate_density

ASSOC_FULL_CHECK_MAX_ORDER = 64
ASSOC_SAMPLE_COUNT = 20000
IDENTITY_TOL = 1e-12
HOMOMORPHISM_TOL = 1e-10
IRREDUCIBLE_TOL = 1e-8
ADAPTED_TOL = 1e-10


@dataclass(frozen=True)
class FiniteGroup:
    """Multiplication table on element indices, with inverses and identity."""

    order: int
    mul: np.ndarray
    inv: np.ndarray
    identity: int

    @classmethod
    def from_table(cls, mul) -> "FiniteGroup":
        table = np.asarray(mul, dtype=np.intp)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise BadParameter(f"multiplication table must be square, got {table.shape}")
        order = table.shape[0]
        if table.min() < 0 or table.max() >= order:
            raise BadParameter("table entries must be element indices")
        elems = np.arange(order)
        identity = None
        for e in elems:
            if np.array_equal(table[e], elems) and np.array_equal(table[:, e], elems):
                identity = int(e)
                break
        if identity is None:
            raise BadParameter("no identity element in the table")
        inv = np.full(order, -1, dtype=np.intp)
        for g in elems:
            hits = np.flatnonzero(table[g] == identity)
            if hits.size != 1:
                raise BadParameter(f"element {g} has no unique inverse")
            inv[g] = hits[0]
        if not np.array_equal(table[inv, elems], np.full(order, identity)):
            raise BadParameter("left and right inverses disagree")
        _check_associativity(table, order)
        return cls(order=order, mul=table, inv=inv, identity=identity)


def _check_associativity(table: np.ndarray, order: int) -> None:
    # full check is cubic; sample triples beyond a size threshold
    if order <= ASSOC_FULL_CHECK_MAX_ORDER:
        left = table[table, :]  # [a, b, c] -> table[table[a, b], c]
        right = table[:, table]  # [a, b, c] -> table[a, table[b, c]]
        if not np.array_equal(left, right):
            raise BadParameter("multiplication table is not associative")
    else:
        rng = np.random.default_rng(12345)
        a, b, c = rng.integers(0, order, size=(3, ASSOC_SAMPLE_COUNT))
        if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
            raise BadParameter("multiplication table is not associative (sampled)")


@dataclass(frozen=True)
class UnitaryRep:
    """Per-element unitary matrices satisfying the group law."""

    group: FiniteGroup
    dim: int
    matrices: np.ndarray

    @classmethod
    def from_matrices(cls, group: FiniteGroup, matrices) -> "UnitaryRep":
        u = np.asarray(matrices, dtype=complex)
        if u.shape[0] != group.order or u.ndim != 3 or u.shape[1] != u.shape[2]:
            raise BadParameter(f"expected {group.order} square matrices, got {u.shape}")
        dim = u.shape[1]
        rep = cls(group=group, dim=dim, matrices=u)
        dev_id = frobenius(u[group.identity] - np.eye(dim))
        if dev_id > IDENTITY_TOL:
            raise BadParameter(f"U(identity) deviates from I by {dev_id:.3e}")
        res = homomorphism_residual(rep)
        if res > HOMOMORPHISM_TOL:
            raise BadParameter(f"matrices violate the group law by {res:.3e}")
        return rep


@dataclass(frozen=True)
class DiscreteTomogram:
    """Atoms (location, weight) forming a stochastic vector; context labels them."""

    locations: np.ndarray
    weights: np.ndarray
    context: object = None

    def __post_init__(self):
        loc = np.asarray(self.locations, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if loc.shape != w.shape or loc.ndim != 1:
            raise DimensionMismatch("locations and weights must be equal-length vectors")
        if w.min() < -1e-10:
            raise ToleranceError(f"tomogram weight {w.min():.3e} below -1e-10")
        total = w.sum()
        if abs(total - 1.0) > 1e-10:
            raise ToleranceError(f"tomogram weights sum to {total:.12g}")
        object.__setattr__(self, "locations", loc)
        object.__setattr__(self, "weights", np.maximum(w, 0.0))


def _mats_for(kind: str):
    if kind == "pauli":
        eye = np.eye(2, dtype=complex)
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
        sz = np.array([[1, 0], [0, -1]], dtype=complex)
        return [eye, sx, sy, sz]
    raise BadParameter(kind)


def pauli_group() -> tuple[FiniteGroup, UnitaryRep]:
    """Order-16 qubit Pauli group {i^s sigma_a} with its defining 2-dim irrep."""
    base = _mats_for("pauli")
    mats = [1j**s * base[a] for s in range(4) for a in range(4)]
    order = 16
    mul = np.empty((order, order), dtype=np.intp)
    for i in range(order):
        for j in range(order):
            prod = mats[i] @ mats[j]
            hits = [k for k, m in enumerate(mats) if np.allclose(prod, m, atol=1e-9)]
            if len(hits) != 1:
                raise BadParameter("Pauli product did not land on a unique element")
            mul[i, j] = hits[0]
    group = FiniteGroup.from_table(mul)
    return group, UnitaryRep.from_matrices(group, np.array(mats))


def pauli_phase_z_subgroup() -> np.ndarray:
    """Indices of the order-8 subgroup {i^s sigma_z^a} of the Pauli group."""
    return np.array([4 * s + a for s in range(4) for a in (0, 3)], dtype=np.intp)


def cyclic_group(n: int, k: int = 1) -> tuple[FiniteGroup, UnitaryRep]:
    """Z_n with the one-dimensional character a -> exp(2 pi i k a / n)."""
    if n < 1:
        raise BadParameter(f"cyclic order must be >= 1, got {n}")
    idx = np.arange(n)
    mul = (idx[:, None] + idx[None, :]) % n
    group = FiniteGroup.from_table(mul)
    mats = np.exp(2j * np.pi * k * idx / n).reshape(n, 1, 1)
    return group, UnitaryRep.from_matrices(group, mats)


def _is_odd_prime(d: int) -> bool:
    if d < 3 or d % 2 == 0:
        return False
    return all(d % f for f in range(3, int(d**0.5) + 1, 2))


def heisenberg_group(d: int) -> tuple[FiniteGroup, UnitaryRep]:
    """Order d^3 clock-and-shift group {w^s Z^a X^b}, w = exp(2 pi i / d), d odd prime."""
    if not _is_odd_prime(d):
        raise BadParameter(f"heisenberg cutoff must be an odd prime, got {d}")
    omega = np.exp(2j * np.pi / d)
    z = np.diag(omega ** np.arange(d))
    x = np.roll(np.eye(d, dtype=complex), 1, axis=0)

    def index(s, a, b):
        return (s * d + a) * d + b

    order = d**3
    mul = np.empty((order, order), dtype=np.intp)
    for s1 in range(d):
        for a1 in range(d):
            for b1 in range(d):
                i = index(s1, a1, b1)
                for s2 in range(d):
                    for a2 in range(d):
                        for b2 in range(d):
                            # X^b1 Z^a2 = w^{-a2 b1} Z^a2 X^b1
                            s = (s1 + s2 - a2 * b1) % d
                            mul[i, index(s2, a2, b2)] = index(s, (a1 + a2) % d, (b1 + b2) % d)
    group = FiniteGroup.from_table(mul)
    mats = np.empty((order, d, d), dtype=complex)
    zpow = [np.linalg.matrix_power(z, a) for a in range(d)]
    xpow = [np.linalg.matrix_power(x, b) for b in range(d)]
    for s in range(d):
        for a in range(d):
            for b in range(d):
                mats[index(s, a, b)] = omega**s * zpow[a] @ xpow[b]
    return group, UnitaryRep.from_matrices(group, mats)


def dihedral_group(n: int, k: int = 1) -> tuple[FiniteGroup, UnitaryRep]:
    """D_n (order 2n) with the standard two-dimensional representation."""
    if n < 3:
        raise BadParameter(f"dihedral order parameter must be >= 3, got {n}")
    order = 2 * n

    def index(f, a):
        return f * n + a

    mul = np.empty((order, order), dtype=np.intp)
    for f1 in range(2):
        for a1 in range(n):
            for f2 in range(2):
                for a2 in range(n):
                    # s^f1 r^a1 s^f2 r^a2 = s^(f1+f2) r^(a2 +/- a1)
                    a = (a2 - a1) % n if f2 else (a1 + a2) % n
                    mul[index(f1, a1), index(f2, a2)] = index((f1 + f2) % 2, a)
    group = FiniteGroup.from_table(mul)
    omega = np.exp(2j * np.pi * k / n)
    flip = np.array([[0, 1], [1, 0]], dtype=complex)
    mats = np.empty((order, 2, 2), dtype=complex)
    for f in range(2):
        for a in range(n):
            rot = np.diag([omega**a, omega ** (-a)])
            mats[index(f, a)] = (flip @ rot) if f else rot
    return group, UnitaryRep.from_matrices(group, mats)


def builtin_group(spec: str) -> tuple[FiniteGroup, UnitaryRep]:
    """Parse 'pauli', 'cyclic:n[:k]', 'heisenberg:d' or 'dihedral:n[:k]'."""
    parts = spec.split(":")
    name, args = parts[0], parts[1:]
    try:
        params = [int(a) for a in args]
    except ValueError as exc:
        raise BadParameter(f"non-integer parameter in {spec!r}") from exc
    if name == "pauli" and not params:
        return pauli_group()
    if name == "cyclic" and len(params) in (1, 2):
        return cyclic_group(*params)
    if name == "heisenberg" and len(params) == 1:
        return heisenberg_group(params[0])
    if name == "dihedral" and len(params) in (1, 2):
        return dihedral_group(*params)
    raise BadParameter(f"unknown group spec {spec!r}")


def rep_tomographic_pair(rep: UnitaryRep) -> tuple[TomographicSet, DualTomographicSet]:
    """U with normalized counting measure and its Schur dual D(g) = n U(g)†."""
    weights = np.full(rep.group.order, 1.0 / rep.group.order)
    tset = TomographicSet(elements=rep.matrices, weights=weights)
    dual = DualTomographicSet(
        elements=rep.dim * rep.matrices.conj().transpose(0, 2, 1), weights=weights
    )
    return tset, dual


def smeared_character(rho: DensityMatrix, rep: UnitaryRep) -> SamplingFunction:
    """chi(g) = Tr(rho U(g)) with the normalized counting measure on G."""
    if rho.dim != rep.dim:
        raise DimensionMismatch(f"state dim {rho.dim} does not match rep dim {rep.dim}")
    values = np.einsum("ij,gji->g", rho.matrix, rep.matrices)
    return SamplingFunction(values=values, weights=np.full(rep.group.order, 1.0 / rep.group.order))


def discrete_tomogram(rho: DensityMatrix, rep: UnitaryRep, g: int) -> DiscreteTomogram:
    """Atoms at the eigenphases of U(g) weighted by the state in that eigenbasis."""
    if rho.dim != rep.dim:
        raise DimensionMismatch(f"state dim {rho.dim} does not match rep dim {rep.dim}")
    phases, v = diagonalize_unitary(rep.matrices[g])
    weights = np.einsum("im,ij,jm->m", v.conj(), rho.matrix, v).real
    return DiscreteTomogram(locations=phases, weights=weights, context=int(g))


def character_from_tomogram(t: DiscreteTomogram) -> complex:
    """Discrete Fourier sum over the atoms, sum_m exp(i theta_m) W(m)."""
    return complex(np.sum(np.exp(1j * t.locations) * t.weights))


def reconstruct_finite(chi: SamplingFunction, rep: UnitaryRep) -> DensityMatrix:
    """sigma = (n/|G|) sum_g chi(g) U(g)†, valid for irreducible representations."""
    if chi.size != rep.group.order:
        raise DimensionMismatch("sampling function does not run over the group")
    res = schur_residual(rep)
    if res > IRREDUCIBLE_TOL:
        raise NotIrreducible(f"Schur residual {res:.3e}; representation is reducible")
    out = rep.dim * np.einsum(
        "g,g,gji->ij", chi.weights, chi.values, rep.matrices.conj()
    )
    try:
        return validate_density(out, hermitian_rtol=1e-8, trace_tol=1e-8, psd_tol=1e-8)
    except Exception as exc:
        raise ReconstructionNotState(f"reconstruction failed validation: {exc}") from exc


def is_subgroup(group: FiniteGroup, members) -> bool:
    h = np.asarray(members, dtype=np.intp)
    if h.size == 0 or group.identity not in h:
        return False
    member = np.zeros(group.order, dtype=bool)
    member[h] = True
    closed = member[group.mul[np.ix_(h, h)]].all()
    return bool(closed and member[group.inv[h]].all())


@dataclass(frozen=True)
class AdaptedReconstruction:
    is_adapted: bool
    reconstruction: np.ndarray
    max_character_off_subgroup: float


def adapted_check_and_reconstruct(
    rho: DensityMatrix,
    rep: UnitaryRep,
    subgroup,
    tol: float = ADAPTED_TOL,
) -> AdaptedReconstruction:
    """Test chi = 0 off the subgroup and rebuild from subgroup samples alone."""
    h = np.asarray(subgroup, dtype=np.intp)
    if not is_subgroup(rep.group, h):
        raise NotSubgroup("element set is not closed under multiplication and inverse")
    chi = smeared_character(rho, rep)
    outside = np.setdiff1d(np.arange(rep.group.order), h)
    off = float(np.abs(chi.values[outside]).max()) if outside.size else 0.0
    partial = (rep.dim / rep.group.order) * np.einsum(
        "g,gji->ij", chi.values[h], rep.matrices[h].conj()
    )
    return AdaptedReconstruction(
        is_adapted=off < tol, reconstruction=partial, max_character_off_subgroup=off
    )


def regular_rep(group: FiniteGroup) -> UnitaryRep:
    """Left translation on the group algebra: permutation matrices |hg><g|."""
    n = group.order
    mats = np.zeros((n, n, n), dtype=complex)
    cols = np.arange(n)
    for h in range(n):
        mats[h, group.mul[h, cols], cols] = 1.0
    return UnitaryRep.from_matrices(group, mats)


def group_to_json(group: FiniteGroup, reps: list[UnitaryRep] | None = None) -> str:
    doc = {
        "order": group.order,
        "mul": [int(x) for x in group.mul.ravel()],
        "reps": [
            {
                "dim": r.dim,
                "re": [float(x) for x in r.matrices.real.ravel()],
                "im": [float(x) for x in r.matrices.imag.ravel()],
            }
            for r in (reps or [])
        ],
    }
    return json.dumps(doc)


def group_from_json(text: str) -> tuple[FiniteGroup, list[UnitaryRep]]:
    try:
        doc = json.loads(text)
        order = int(doc["order"])
        mul = np.asarray(doc["mul"], dtype=np.intp).reshape(order, order)
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"not a valid group JSON document: {exc}") from exc
    group = FiniteGroup.from_table(mul)
    reps = []
    for entry in doc.get("reps", []):
        try:
            dim = int(entry["dim"])
            re = np.asarray(entry["re"], dtype=float).reshape(order, dim, dim)
            im = np.asarray(entry["im"], dtype=float).reshape(order, dim, dim)
        except (KeyError, TypeError, ValueError) as exc:
            raise FileFormatError(f"bad representation entry: {exc}") from exc
        reps.append(UnitaryRep.from_matrices(group, re + 1j * im))
    return group, reps
