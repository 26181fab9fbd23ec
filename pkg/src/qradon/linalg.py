"""Dense complex linear algebra used everywhere else in the package.

Hermitian eigendecomposition, diagonalization of unitary (normal) matrices,
spectral matrix exponentials and PSD tests, all on plain complex ``ndarray``s.
Every function is pure; tolerances are module constants overridable per call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, NotHermitian, NotSquare, NotUnitary

HERMITIAN_RTOL = 1e-10
UNITARY_TOL = 1e-10
DEGENERACY_TOL = 1e-8
RECONSTRUCTION_RTOL = 1e-10


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def as_square_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise NotSquare("matrix entries must be finite")
    return m


def require_hermitian(a, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    m = as_square_matrix(a)
    dev = frobenius(m - dagger(m))
    scale = max(frobenius(m), 1.0)
    if dev > rtol * scale:
        raise NotHermitian(f"deviation from Hermiticity {dev:.3e} exceeds {rtol:.1e} * {scale:.3e}")
    return m


def require_unitary(a, tol: float = UNITARY_TOL) -> np.ndarray:
    m = as_square_matrix(a)
    dev = frobenius(m @ dagger(m) - np.eye(m.shape[0]))
    if dev > tol:
        raise NotUnitary(f"deviation from unitarity {dev:.3e} exceeds {tol:.1e}")
    return m


@dataclass(frozen=True)
class Eigensystem:
    """Spectral decomposition H = V diag(w) V† with w ascending, V unitary."""

    eigenvalues: np.ndarray
    basis: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.basis * self.eigenvalues) @ dagger(self.basis)


def hermitian_eigendecompose(h, rtol: float = HERMITIAN_RTOL) -> Eigensystem:
    """Eigendecompose a Hermitian matrix; eigenvalues ascending, deterministic."""
    m = require_hermitian(h, rtol)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails
        raise ConvergenceFailure(str(exc)) from exc
    return Eigensystem(eigenvalues=w, basis=v)


def psd_min_eigenvalue(m, rtol: float = HERMITIAN_RTOL) -> float:
    """Smallest eigenvalue of a Hermitian matrix (negative means not PSD)."""
    return float(hermitian_eigendecompose(m, rtol).eigenvalues[0])


def unitary_exp(h, t: float = 1.0, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """exp(i t H) for Hermitian H, exact on the spectrum."""
    es = hermitian_eigendecompose(h, rtol)
    return (es.basis * np.exp(1j * t * es.eigenvalues)) @ dagger(es.basis)


def _fix_column_phases(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate each column so its first component of magnitude > tol is real positive."""
    out = v.copy()
    for k in range(v.shape[1]):
        col = out[:, k]
        idx = np.flatnonzero(np.abs(col) > tol)
        if idx.size:
            pivot = col[idx[0]]
            out[:, k] = col * (abs(pivot) / pivot)
    return out


def diagonalize_unitary(
    u,
    tol: float = UNITARY_TOL,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a unitary matrix U = V diag(exp(i*phase)) V†.

    Works through the commuting Hermitian pair A = (U+U†)/2, B = (U-U†)/(2i):
    A is eigendecomposed first and B is rediagonalized inside each (nearly)
    degenerate eigenspace of A, which is exact for normal matrices and avoids
    a nonsymmetric eigensolver.  Phases are returned ascending on the
    principal branch (-pi, pi], with pi chosen for eigenvalue -1; eigenvector
    phases are fixed so the first nonzero component is real positive.
    """
    m = require_unitary(u, tol)
    n = m.shape[0]
    a = (m + dagger(m)) / 2
    b = (m - dagger(m)) / 2j
    es = hermitian_eigendecompose(a, rtol=np.inf)
    v = es.basis.copy()
    # split the sorted spectrum of A into clusters separated by > degeneracy_tol
    w = es.eigenvalues
    splits = np.flatnonzero(np.diff(w) > degeneracy_tol) + 1
    for block in np.split(np.arange(n), splits):
        if block.size < 2:
            continue
        vb = v[:, block]
        sub = dagger(vb) @ b @ vb
        sub_es = hermitian_eigendecompose((sub + dagger(sub)) / 2, rtol=np.inf)
        v[:, block] = vb @ sub_es.basis
    lam = np.einsum("im,ij,jm->m", v.conj(), m, v)
    phases = np.angle(lam)
    phases[phases <= -np.pi + 1e-14] += 2 * np.pi
    order = np.argsort(phases, kind="stable")
    phases = phases[order]
    v = _fix_column_phases(v[:, order])
    residual = frobenius((v * np.exp(1j * phases)) @ dagger(v) - m)
    if residual > 1e-9 * max(1.0, frobenius(m)):
        raise ConvergenceFailure(
            f"unitary diagonalization residual {residual:.3e}; matrix may not be normal"
        )
    return phases, v
