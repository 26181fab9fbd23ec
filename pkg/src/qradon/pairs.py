"""Tomographic sets, dual pairs, sampling/reconstruction maps, and frames.

The index set is always finite with explicit positive weights; continuous
measures enter only through quadrature grids built by callers.  Dual
functionals are matrices paired against the algebra by D, a -> Tr(D a).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import (
    DegenerateFrame,
    DimensionMismatch,
    NotHomomorphism,
    NotUnitaryElement,
)
from .linalg import dagger, hermitian_eigendecompose
from .states import DensityMatrix

if TYPE_CHECKING:  # pragma: no cover
    from .groups import FiniteGroup, UnitaryRep

FRAME_SPAN_TOL = 1e-12
TIGHTNESS_RTOL = 1e-8
UNITARY_ELEMENT_TOL = 1e-8


def _as_element_stack(elements) -> np.ndarray:
    arr = np.asarray(elements, dtype=complex)
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise DimensionMismatch(f"expected a stack of square matrices, got shape {arr.shape}")
    return arr


def _as_weights(weights, count: int) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.shape != (count,):
        raise DimensionMismatch(f"expected {count} weights, got shape {w.shape}")
    if np.any(w <= 0):
        raise DimensionMismatch("weights must be positive")
    return w


@dataclass(frozen=True)
class TomographicSet:
    """Indexed family U(x) with a positive measure on the index set."""

    elements: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "elements", _as_element_stack(self.elements))
        object.__setattr__(self, "weights", _as_weights(self.weights, self.elements.shape[0]))

    @property
    def size(self) -> int:
        return self.elements.shape[0]

    @property
    def dim(self) -> int:
        return self.elements.shape[1]


@dataclass(frozen=True)
class DualTomographicSet:
    """Functionals a -> Tr(D(x) a), stored as the matrices D(x)."""

    elements: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "elements", _as_element_stack(self.elements))
        object.__setattr__(self, "weights", _as_weights(self.weights, self.elements.shape[0]))

    @property
    def size(self) -> int:
        return self.elements.shape[0]

    @property
    def dim(self) -> int:
        return self.elements.shape[1]


@dataclass(frozen=True)
class SamplingFunction:
    """Values F(x) = <rho, U(x)> on the index set, with the set's weights."""

    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
            raise DimensionMismatch("sampling values must be finite")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "weights", _as_weights(self.weights, v.shape[0]))

    @property
    def size(self) -> int:
        return self.values.shape[0]


def _state_matrix(rho) -> np.ndarray:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def sample(rho, tset: TomographicSet) -> SamplingFunction:
    """F(x) = Tr(rho U(x)) for every index x."""
    m = _state_matrix(rho)
    if m.shape != (tset.dim, tset.dim):
        raise DimensionMismatch(f"state dim {m.shape} does not match set dim {tset.dim}")
    values = np.einsum("ij,xji->x", m, tset.elements)
    return SamplingFunction(values=values, weights=tset.weights)


def reconstruct(f: SamplingFunction, dual: DualTomographicSet) -> np.ndarray:
    """Weighted synthesis sum_x mu(x) F(x) D(x); caller validates the result."""
    if f.size != dual.size:
        raise DimensionMismatch(f"index sets differ: {f.size} vs {dual.size}")
    return np.einsum("x,x,xij->ij", f.weights, f.values, dual.elements)


@dataclass(frozen=True)
class TomographicKernel:
    """kappa(y, x) = Tr(D(x) U(y)) plus residuals of the reproducing property."""

    matrix: np.ndarray
    weights: np.ndarray
    reproducing_residual: float | None = None

    @property
    def biorthogonality_residual(self) -> float:
        """max |kappa . diag(mu) - identity| over index pairs."""
        k = self.matrix * self.weights[None, :]
        return float(np.abs(k - np.eye(k.shape[0])).max())


def kernel(
    tset: TomographicSet,
    dual: DualTomographicSet,
    probe: SamplingFunction | None = None,
) -> TomographicKernel:
    """Kernel of the pair; optionally reports how well it reproduces a probe."""
    if tset.size != dual.size or tset.dim != dual.dim:
        raise DimensionMismatch("tomographic set and dual set are incompatible")
    k = np.einsum("xij,yji->yx", dual.elements, tset.elements)
    residual = None
    if probe is not None:
        if probe.size != tset.size:
            raise DimensionMismatch("probe index set does not match")
        reproduced = k @ (tset.weights * probe.values)
        residual = float(np.abs(reproduced - probe.values).max())
    return TomographicKernel(matrix=k, weights=tset.weights, reproducing_residual=residual)


def normalization_check(f: SamplingFunction, dual: DualTomographicSet) -> complex:
    """sum_x mu(x) F(x) <D(x), 1>; equals 1 for normalized pairs and states."""
    if f.size != dual.size:
        raise DimensionMismatch(f"index sets differ: {f.size} vs {dual.size}")
    traces = np.einsum("xii->x", dual.elements)
    return complex(np.sum(f.weights * f.values * traces))


def gram_min_eigenvalue(rho, tset: TomographicSet, unitary_tol: float = UNITARY_ELEMENT_TOL) -> float:
    """Minimum eigenvalue of G_ij = Tr(rho U(x_i)† U(x_j)).

    Nonnegative (within eigensolver noise) exactly when the functional rho is
    a state; a unit-trace Hermitian non-PSD matrix produces genuine negativity.
    """
    m = _state_matrix(rho)
    u = tset.elements
    eye = np.eye(tset.dim)
    dev = np.abs(np.einsum("xij,xkj->xik", u, u.conj()) - eye[None]).max()
    if dev > unitary_tol:
        raise NotUnitaryElement(f"set elements deviate from unitarity by {dev:.3e}")
    g = np.einsum("ab,icb,jca->ij", m, u.conj(), u)
    g = (g + dagger(g)) / 2
    return float(hermitian_eigendecompose(g, rtol=np.inf).eigenvalues[0])


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float


@dataclass(frozen=True)
class Frame:
    """Vector family psi_x with weights; must span the space to be a frame."""

    vectors: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2:
            raise DimensionMismatch(f"expected vectors of shape (count, dim), got {v.shape}")
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "weights", _as_weights(self.weights, v.shape[0]))

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


def metric_operator(frame: Frame) -> np.ndarray:
    """S = sum_x mu(x) |psi_x><psi_x|."""
    return np.einsum("x,xi,xj->ij", frame.weights, frame.vectors, frame.vectors.conj())


def frame_bounds(frame: Frame, span_tol: float = FRAME_SPAN_TOL) -> FrameBounds:
    """Extreme eigenvalues of the metric operator."""
    if frame.size == 0:
        raise DegenerateFrame("empty frame")
    w = hermitian_eigendecompose(metric_operator(frame), rtol=np.inf).eigenvalues
    lower, upper = float(w[0]), float(w[-1])
    if lower <= span_tol:
        raise DegenerateFrame(f"lower frame bound {lower:.3e} <= {span_tol:.1e}; not a frame")
    return FrameBounds(lower=lower, upper=upper)


def dual_frame(frame: Frame, span_tol: float = FRAME_SPAN_TOL) -> Frame:
    """psi^x = S^{-1} psi_x; resolves the identity against the original frame."""
    frame_bounds(frame, span_tol)
    s = metric_operator(frame)
    duals = np.linalg.solve(s, frame.vectors.T).T
    return Frame(vectors=duals, weights=frame.weights)


def _require_tight(frame: Frame, rtol: float = TIGHTNESS_RTOL) -> float:
    fb = frame_bounds(frame)
    if fb.upper - fb.lower > rtol * fb.upper:
        raise DegenerateFrame(
            f"frame is not tight: bounds ({fb.lower:.6g}, {fb.upper:.6g})"
        )
    return fb.lower


def formal_degree(frame: Frame) -> float:
    """d with frame constant A = ||psi_0||^2 / d for a tight group frame."""
    a = _require_tight(frame)
    norm0 = float(np.vdot(frame.vectors[0], frame.vectors[0]).real)
    return norm0 / a


def reproducing_kernel(frame: Frame) -> np.ndarray:
    """kappa(g, g') = d <psi_g, psi_g'> for a tight group frame."""
    d = formal_degree(frame)
    return d * (frame.vectors.conj() @ frame.vectors.T)


def reproducing_kernel_residual(frame: Frame) -> float:
    """Self-consistency of the kernel under weighted composition."""
    k = reproducing_kernel(frame)
    composed = (k * frame.weights[None, :]) @ k
    return float(np.abs(k - composed).max())


def frame_trace(frame: Frame, op) -> complex:
    """Trace of an operator from its diagonal kernel, sum_g mu(g) d <psi_g, A psi_g>."""
    a = np.asarray(op, dtype=complex)
    if a.shape != (frame.dim, frame.dim):
        raise DimensionMismatch(f"operator shape {a.shape} does not match frame dim {frame.dim}")
    d = formal_degree(frame)
    diag = np.einsum("xi,ij,xj->x", frame.vectors.conj(), a, frame.vectors)
    return complex(d * np.sum(frame.weights * diag))


def homomorphism_residual(rep: "UnitaryRep") -> float:
    """max over pairs of || U(g) U(h) - U(gh) ||_F."""
    u = rep.matrices
    mul = rep.group.mul
    worst = 0.0
    for g in range(u.shape[0]):
        prod = np.einsum("ij,hjk->hik", u[g], u)
        dev = prod - u[mul[g]]
        norms = np.linalg.norm(dev.reshape(dev.shape[0], -1), axis=1)
        worst = max(worst, float(norms.max()))
    return worst


def schur_residual(rep: "UnitaryRep", group: "FiniteGroup | None" = None, tol: float = 1e-8) -> float:
    """Deviation of (n/|G|) sum_g conj(U_ij) U_rs from delta_ir delta_js.

    Vanishes iff the representation is irreducible; reducible representations
    leave cross terms of order one.
    """
    if group is None:
        group = rep.group
    res = homomorphism_residual(rep)
    if res > tol:
        raise NotHomomorphism(f"representation violates the group law by {res:.3e}")
    u = rep.matrices
    n = rep.dim
    t = (n / group.order) * np.einsum("gij,grs->ijrs", u.conj(), u)
    eye = np.eye(n)
    target = np.einsum("ir,js->ijrs", eye, eye)
    return float(np.abs(t - target).max())


def average_conjugation(rep: "UnitaryRep", op) -> np.ndarray:
    """(1/|G|) sum_g U(g) A U(g)†; a multiple of the identity for irreps."""
    a = np.asarray(op, dtype=complex)
    u = rep.matrices
    if a.shape != u.shape[1:]:
        raise DimensionMismatch("operator dimension does not match the representation")
    return np.einsum("gij,jk,glk->il", u, a, u.conj()) / u.shape[0]


def group_frame(rep: "UnitaryRep", fiducial, weights=None) -> Frame:
    """Orbit frame psi_g = U(g) psi_0, counting measure by default."""
    psi0 = np.asarray(fiducial, dtype=complex)
    if psi0.shape != (rep.dim,):
        raise DimensionMismatch(f"fiducial shape {psi0.shape}, expected ({rep.dim},)")
    vectors = np.einsum("gij,j->gi", rep.matrices, psi0)
    if weights is None:
        weights = np.ones(rep.group.order)
    return Frame(vectors=vectors, weights=weights)
