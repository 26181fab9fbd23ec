"""Density matrices: validation, Bloch-ball parametrization, metrics, fixtures.

The random-state generator is specified down to the bit level (splitmix64 +
Box-Muller) so that fixtures are reproducible across platforms and language
implementations; see :func:`random_density`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    FileFormatError,
    NotHermitian,
    NotPSD,
    OutOfRange,
    TraceNotOne,
)
from .linalg import (
    as_square_matrix,
    dagger,
    frobenius,
    hermitian_eigendecompose,
    psd_min_eigenvalue,
)

HERMITIAN_RTOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class DensityMatrix:
    """A validated Hermitian, PSD, unit-trace matrix.  Build via validate_density."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def validate_density(
    m,
    hermitian_rtol: float = HERMITIAN_RTOL,
    trace_tol: float = TRACE_TOL,
    psd_tol: float = PSD_TOL,
) -> DensityMatrix:
    """Check Hermiticity, unit trace and positive semidefiniteness."""
    mat = as_square_matrix(m)
    dev = frobenius(mat - dagger(mat))
    if dev > hermitian_rtol * max(frobenius(mat), 1.0):
        raise NotHermitian(f"deviation from Hermiticity {dev:.3e}")
    tr = complex(np.trace(mat))
    if abs(tr - 1.0) > trace_tol:
        raise TraceNotOne(f"trace is {tr:.12g}, expected 1")
    mat = (mat + dagger(mat)) / 2
    lo = psd_min_eigenvalue(mat)
    if lo < -psd_tol:
        raise NotPSD(f"minimum eigenvalue {lo:.3e} below -{psd_tol:.1e}")
    return DensityMatrix(matrix=mat)


@dataclass(frozen=True)
class BlochPoint:
    r: float
    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.r <= 1.0):
            raise OutOfRange(f"r={self.r} outside [0, 1]")
        if not (0.0 <= self.theta <= np.pi):
            raise OutOfRange(f"theta={self.theta} outside [0, pi]")
        if not (0.0 <= self.phi < 2 * np.pi):
            raise OutOfRange(f"phi={self.phi} outside [0, 2*pi)")


def bloch_density(p: BlochPoint) -> DensityMatrix:
    """Qubit state (I + r n.sigma)/2 with n the unit vector at (theta, phi)."""
    n = np.array(
        [np.sin(p.theta) * np.cos(p.phi), np.sin(p.theta) * np.sin(p.phi), np.cos(p.theta)]
    )
    rho = 0.5 * (np.eye(2, dtype=complex) + p.r * sum(c * s for c, s in zip(n, PAULIS)))
    return validate_density(rho)


def bloch_from_density(rho: DensityMatrix) -> BlochPoint:
    """Invert the Bloch parametrization from the Pauli expectations."""
    if rho.dim != 2:
        raise DimensionMismatch("Bloch coordinates exist for qubits only")
    n = np.array([np.trace(rho.matrix @ s).real for s in PAULIS])
    r = float(np.linalg.norm(n))
    if r < 1e-15:
        return BlochPoint(0.0, 0.0, 0.0)
    theta = float(np.arccos(np.clip(n[2] / r, -1.0, 1.0)))
    phi = float(np.arctan2(n[1], n[0])) % (2 * np.pi)
    return BlochPoint(min(r, 1.0), theta, phi)


def trace_distance(rho, sigma) -> float:
    """Half the sum of |eigenvalues| of rho - sigma; a metric in [0, 1] on states.

    Accepts DensityMatrix instances or raw Hermitian arrays (for comparing
    cleaned-up reconstructions that are not quite states yet).
    """
    a = rho.matrix if isinstance(rho, DensityMatrix) else as_square_matrix(rho)
    b = sigma.matrix if isinstance(sigma, DensityMatrix) else as_square_matrix(sigma)
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimensions {a.shape} and {b.shape} differ")
    delta = a - b
    # canonical sign makes the result exactly symmetric in its arguments
    flat = delta.ravel()
    lead = flat[np.flatnonzero(flat)]
    if lead.size and (lead[0].real < 0 or (lead[0].real == 0 and lead[0].imag < 0)):
        delta = -delta
    w = hermitian_eigendecompose(delta, rtol=np.inf).eigenvalues
    return float(0.5 * np.abs(w).sum())


_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64 stream; the portable PRNG behind all seeded fixtures.

    next_u64:  state += 0x9E3779B97F4A7C15;  z = state;
               z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
               z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
               return z ^ (z >> 31)          (all mod 2^64)
    uniform:   (next_u64 >> 11) / 2^53                      in [0, 1)
    normals:   Box-Muller on u1 = (next_u64 >> 11 + 1)/2^53 in (0, 1]
               and u2 uniform: sqrt(-2 ln u1) * (cos, sin)(2 pi u2)
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) / float(1 << 53)

    def normal_pair(self) -> tuple[float, float]:
        u1 = ((self.next_u64() >> 11) + 1) / float(1 << 53)
        u2 = (self.next_u64() >> 11) / float(1 << 53)
        radius = np.sqrt(-2.0 * np.log(u1))
        return radius * np.cos(2 * np.pi * u2), radius * np.sin(2 * np.pi * u2)


def random_density(dim: int, seed: int) -> DensityMatrix:
    """G G† / Tr(G G†) with G filled row-major by complex standard normals.

    Each entry consumes one Box-Muller pair of the ``SplitMix64`` stream:
    real part first, imaginary part second.  Deterministic per (dim, seed).
    """
    if dim < 1:
        raise OutOfRange(f"dim must be >= 1, got {dim}")
    rng = SplitMix64(seed)
    g = np.empty((dim, dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            re, im = rng.normal_pair()
            g[i, j] = complex(re, im)
    rho = g @ dagger(g)
    rho /= np.trace(rho).real
    return validate_density(rho)


def density_to_json(rho: DensityMatrix) -> str:
    n = rho.dim
    return json.dumps(
        {
            "dim": n,
            "re": [float(x) for x in rho.matrix.real.ravel()],
            "im": [float(x) for x in rho.matrix.imag.ravel()],
        }
    )


def density_from_json(text: str, trace_tol: float = TRACE_TOL) -> DensityMatrix:
    """Parse the {dim, re, im} row-major JSON format; validation is enforced."""
    try:
        obj = json.loads(text)
        n = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float).reshape(n, n)
        im = np.asarray(obj["im"], dtype=float).reshape(n, n)
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"not a valid density-matrix JSON document: {exc}") from exc
    return validate_density(re + 1j * im, trace_tol=trace_tol)
