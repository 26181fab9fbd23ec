"""Spin-1/2 tomography over SU(2).

A direction s in R^3 fixes the observable (s.sigma)/2; its two eigenprojectors
give a two-atom tomogram.  States are recovered by integrating the smeared
character against the group with a Haar-exact Euler-angle quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NotSpecialUnitary,
    OutOfRange,
    QuadratureTooCoarse,
    ZeroAxis,
)
from .groups import DiscreteTomogram
from .linalg import dagger, hermitian_eigendecompose
from .states import PAULIS, DensityMatrix, validate_density

MIN_QUADRATURE_ORDER = 8
TRACE_GUARD = 1e-3


@dataclass(frozen=True)
class SpinAxis:
    sx: float
    sy: float
    sz: float

    def __post_init__(self):
        if self.norm == 0.0:
            raise ZeroAxis("axis vector must be nonzero")

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.sx**2 + self.sy**2 + self.sz**2))

    def as_array(self) -> np.ndarray:
        return np.array([self.sx, self.sy, self.sz])


@dataclass(frozen=True)
class EulerAngles:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not (0.0 <= self.alpha < 2 * np.pi):
            raise OutOfRange(f"alpha={self.alpha} outside [0, 2*pi)")
        if not (0.0 <= self.beta <= np.pi):
            raise OutOfRange(f"beta={self.beta} outside [0, pi]")
        if not (0.0 <= self.gamma < 4 * np.pi):
            raise OutOfRange(f"gamma={self.gamma} outside [0, 4*pi)")


def axis_operator(s: SpinAxis) -> np.ndarray:
    """(s_x sigma_x + s_y sigma_y + s_z sigma_z) / 2, eigenvalues +/- |s|/2."""
    return 0.5 * sum(c * p for c, p in zip(s.as_array(), PAULIS))


def spin_tomogram(rho: DensityMatrix, s: SpinAxis) -> DiscreteTomogram:
    """Two atoms at +/- |s|/2 weighted by the eigenprojector expectations."""
    if rho.dim != 2:
        raise DimensionMismatch("spin tomograms are defined for qubit states")
    es = hermitian_eigendecompose(axis_operator(s))
    weights = np.einsum("im,ij,jm->m", es.basis.conj(), rho.matrix, es.basis).real
    return DiscreteTomogram(locations=es.eigenvalues, weights=weights, context=s)


def euler_matrices(alpha, beta, gamma) -> np.ndarray:
    """U = exp(-i a sz/2) exp(-i b sy/2) exp(-i g sz/2), broadcast over inputs."""
    a, b, g = np.broadcast_arrays(
        np.asarray(alpha, float), np.asarray(beta, float), np.asarray(gamma, float)
    )
    ch, sh = np.cos(b / 2), np.sin(b / 2)
    u = np.empty(a.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = np.exp(-0.5j * (a + g)) * ch
    u[..., 0, 1] = -np.exp(-0.5j * (a - g)) * sh
    u[..., 1, 0] = np.exp(0.5j * (a - g)) * sh
    u[..., 1, 1] = np.exp(0.5j * (a + g)) * ch
    return u


def haar_grid(orders: tuple[int, int, int]) -> tuple[np.ndarray, np.ndarray]:
    """Group elements and weights of the normalized-Haar quadrature on SU(2).

    Trapezoid (periodic, spectrally exact) in alpha over [0, 2 pi) and gamma
    over [0, 4 pi); Gauss-Legendre in cos(beta).  Weights sum to one.
    """
    na, nb, ng = orders
    if min(na, nb, ng) < MIN_QUADRATURE_ORDER:
        raise QuadratureTooCoarse(f"orders {orders} below the minimum {MIN_QUADRATURE_ORDER}")
    alphas = 2 * np.pi * np.arange(na) / na
    gammas = 4 * np.pi * np.arange(ng) / ng
    nodes, gl_w = np.polynomial.legendre.leggauss(nb)
    betas = np.arccos(nodes)
    a, b, g = np.meshgrid(alphas, betas, gammas, indexing="ij")
    u = euler_matrices(a.ravel(), b.ravel(), g.ravel())
    w = np.broadcast_to(gl_w[None, :, None] / (2 * na * ng), (na, nb, ng)).ravel()
    return u, w.copy()


def state_character(rho: DensityMatrix):
    """Vectorized smeared character g -> Tr(rho U(g)) over stacked matrices."""

    def chi(us: np.ndarray) -> np.ndarray:
        return np.einsum("ij,...ji->...", rho.matrix, np.asarray(us, dtype=complex))

    return chi


def su2_reconstruct(chi, orders: tuple[int, int, int] = (32, 32, 64)) -> DensityMatrix:
    """sigma = 2 * integral of chi(g) U(g)† over the normalized Haar measure.

    ``chi`` must accept a stack of group elements of shape (m, 2, 2) and
    return the m character values (see :func:`state_character`).
    """
    u, w = haar_grid(orders)
    values = np.asarray(chi(u), dtype=complex)
    if values.shape != (u.shape[0],):
        raise DimensionMismatch("character callable must return one value per group element")
    sigma = 2.0 * np.einsum("g,g,gji->ij", w, values, u.conj())
    tr = complex(np.trace(sigma))
    if abs(tr - 1.0) > TRACE_GUARD:
        raise QuadratureTooCoarse(f"reconstructed trace {tr:.6g} deviates from 1 by > {TRACE_GUARD}")
    sigma = (sigma + dagger(sigma)) / 2
    return validate_density(sigma, hermitian_rtol=1e-8, trace_tol=TRACE_GUARD, psd_tol=1e-6)


def adjoint_axis(g: np.ndarray, s: SpinAxis) -> SpinAxis:
    """Axis s' with (s'.sigma) = U(g)† (s.sigma) U(g)."""
    conj = dagger(g) @ (2.0 * axis_operator(s)) @ g
    comps = [float(np.trace(conj @ p).real) / 2 for p in PAULIS]
    return SpinAxis(*comps)


def equivariance_residual(rho: DensityMatrix, s: SpinAxis, g) -> float:
    """Weight mismatch between rotating the axis and rotating the state.

    Sampling the state along the pulled-back axis (read off U† (s.sigma) U)
    is the same measurement as sampling the pushed-forward state U rho U†
    along the original axis; the residual is zero up to rounding.
    """
    u = np.asarray(g, dtype=complex)
    if u.shape != (2, 2):
        raise NotSpecialUnitary("group element must be a 2x2 matrix")
    if np.linalg.norm(u @ dagger(u) - np.eye(2)) > 1e-10 or abs(np.linalg.det(u) - 1) > 1e-10:
        raise NotSpecialUnitary("matrix is not special unitary")
    moved_state = validate_density(u @ rho.matrix @ dagger(u))
    lhs = spin_tomogram(rho, adjoint_axis(u, s))
    rhs = spin_tomogram(moved_state, s)
    return float(np.abs(lhs.weights - rhs.weights).max())
