"""Weyl-Heisenberg tomography on truncated Fock spaces.

Quadrature generators mu.Q + nu.P are exponentiated spectrally; tomograms are
Fourier inversions of the characteristic function chi(t) = Tr(rho e^{itT}).
Truncation is handled honestly: every operation checks the state's tail mass,
and the Fourier window is clipped adaptively where the computed chi stops
being trustworthy (the truncated spectrum cannot support arbitrarily fine
time resolution).  Reconstruction from chi samples uses displacement-operator
corners evaluated at a larger internal cutoff so the synthesis kernel stays
faithful over the whole integration box.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import radon as radon_mod
from .errors import (
    BadCutoff,
    BadDirection,
    CutoffTooSmall,
    DimensionMismatch,
    GridTooNarrow,
    NegativityBeyondTolerance,
    QuadratureTooCoarse,
)
from .linalg import dagger, hermitian_eigendecompose, unitary_exp
from .states import DensityMatrix, validate_density

TAIL_LEVELS = 4
TAIL_MASS_TOL = 1e-6
DEFAULT_T_NODES = 1024
DEFAULT_T_RANGE = 16.0  # in units of 1/|(mu, nu)|
NEG_FLOOR = 1e-5
REALITY_TOL = 1e-10
INTEGRAL_GUARD = 1e-3
INTEGRAL_TOL = 1e-6


@dataclass(frozen=True)
class FockSpace:
    """Truncated ladder and quadrature operators at a given cutoff."""

    cutoff: int
    a: np.ndarray
    a_dag: np.ndarray
    q: np.ndarray
    p: np.ndarray


def fock_operators(cutoff: int) -> FockSpace:
    """a with entries sqrt(k+1) on the superdiagonal; Q, P from it."""
    if cutoff < 2:
        raise BadCutoff(f"cutoff must be >= 2, got {cutoff}")
    a = np.zeros((cutoff, cutoff), dtype=complex)
    ks = np.arange(cutoff - 1)
    a[ks, ks + 1] = np.sqrt(ks + 1.0)
    ad = dagger(a)
    q = (a + ad) / np.sqrt(2)
    p = (a - ad) / (1j * np.sqrt(2))
    return FockSpace(cutoff=cutoff, a=a, a_dag=ad, q=q, p=p)


def fock_state(levels, cutoff: int) -> DensityMatrix:
    """Pure product state |k_1, ..., k_n> at per-mode cutoff."""
    levels = [int(k) for k in np.atleast_1d(levels)]
    vec = np.zeros(cutoff**len(levels), dtype=complex)
    idx = 0
    for k in levels:
        if not 0 <= k < cutoff:
            raise BadCutoff(f"level {k} outside the cutoff {cutoff}")
        idx = idx * cutoff + k
    vec[idx] = 1.0
    return validate_density(np.outer(vec, vec.conj()))


@dataclass(frozen=True)
class WHDirection:
    """Phase-space direction (mu, nu) plus the central coordinate s.

    The central coordinate only shifts the tomogram variable X -> X - s.
    """

    mu: np.ndarray
    nu: np.ndarray
    s: float = 0.0

    def __post_init__(self):
        mu = np.atleast_1d(np.asarray(self.mu, dtype=float))
        nu = np.atleast_1d(np.asarray(self.nu, dtype=float))
        if mu.shape != nu.shape or mu.ndim != 1:
            raise BadDirection(f"mu and nu must be equal-length vectors, got {mu.shape}, {nu.shape}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    @property
    def modes(self) -> int:
        return self.mu.shape[0]

    @property
    def norm(self) -> float:
        return float(np.sqrt((self.mu**2).sum() + (self.nu**2).sum()))


def _require_nonzero(d: WHDirection) -> WHDirection:
    if d.norm == 0.0:
        raise BadDirection("(mu, nu) must not both vanish here")
    return d


def _per_mode_cutoff(dim: int, modes: int) -> int:
    n = round(dim ** (1.0 / modes))
    if n**modes != dim:
        raise DimensionMismatch(f"state dim {dim} is not a {modes}-mode Fock dimension")
    return n


def tail_mass(rho: DensityMatrix, modes: int = 1, levels: int = TAIL_LEVELS) -> float:
    """Population of the top ``levels`` per-mode Fock levels (max over modes)."""
    n = _per_mode_cutoff(rho.dim, modes)
    pop = np.diag(rho.matrix).real.reshape((n,) * modes)
    worst = 0.0
    for axis in range(modes):
        marg = pop.sum(axis=tuple(i for i in range(modes) if i != axis))
        worst = max(worst, float(marg[max(n - levels, 0):].sum()))
    return worst


def _check_tail(rho: DensityMatrix, modes: int) -> float:
    mass = tail_mass(rho, modes)
    if mass > TAIL_MASS_TOL:
        raise CutoffTooSmall(
            f"tail mass {mass:.3e} in the top {TAIL_LEVELS} levels exceeds {TAIL_MASS_TOL:.1e}"
        )
    return mass


def quadrature_operator(d: WHDirection, fs: FockSpace) -> np.ndarray:
    """sum_k mu_k Q_k + nu_k P_k on the Kronecker-product Fock basis."""
    if d.modes > 2:
        raise BadDirection("at most two modes are supported")
    if d.modes == 1:
        return d.mu[0] * fs.q + d.nu[0] * fs.p
    eye = np.eye(fs.cutoff)
    t1 = d.mu[0] * fs.q + d.nu[0] * fs.p
    t2 = d.mu[1] * fs.q + d.nu[1] * fs.p
    return np.kron(t1, eye) + np.kron(eye, t2)


def displacement(d: WHDirection, fs: FockSpace) -> np.ndarray:
    """e^{i (mu Q + nu P)} for a single mode, via the spectral exponential."""
    if d.modes != 1:
        raise BadDirection("displacement operators are built per mode")
    return unitary_exp(quadrature_operator(d, fs), 1.0)


def _fock_space_for(rho: DensityMatrix, d: WHDirection, fs: FockSpace | None) -> FockSpace:
    n = _per_mode_cutoff(rho.dim, d.modes)
    if fs is None:
        return fock_operators(n)
    if fs.cutoff != n:
        raise DimensionMismatch(f"Fock cutoff {fs.cutoff} does not match state dim {rho.dim}")
    return fs


def _spectral_data(rho: DensityMatrix, d: WHDirection, fs: FockSpace | None):
    fs = _fock_space_for(rho, d, fs)
    es = hermitian_eigendecompose(quadrature_operator(d, fs))
    weights = np.einsum("im,ij,jm->m", es.basis.conj(), rho.matrix, es.basis).real
    return es.eigenvalues, weights


def smeared_character_wh(
    rho: DensityMatrix, d: WHDirection, t_grid, fs: FockSpace | None = None
) -> np.ndarray:
    """chi(t) = Tr(rho e^{it(mu Q + nu P + s)}); chi(0) = 1, chi(-t) = conj(chi(t))."""
    _check_tail(rho, d.modes)
    lam, w = _spectral_data(rho, d, fs)
    t = np.asarray(t_grid, dtype=float)
    return np.exp(1j * d.s * t) * (np.exp(1j * np.outer(t, lam)) @ w.astype(complex))


@dataclass(frozen=True)
class GridTomogram:
    """Quadrature distribution sampled on a uniform X grid.

    ``values`` are clamped at zero; ``raw_min`` keeps the most negative raw
    value so the clamping is auditable.  ``integral`` is the trapezoid mass.
    """

    x: np.ndarray
    values: np.ndarray
    direction: WHDirection
    raw_min: float = 0.0
    imag_residual: float = 0.0
    tail: float = 0.0
    integral: float = field(default=1.0)

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])


def _uniform_grid(x_grid) -> np.ndarray:
    x = np.asarray(x_grid, dtype=float)
    if x.ndim != 1 or x.size < 8:
        raise GridTooNarrow(f"X grid must be a vector of at least 8 nodes, got {x.shape}")
    steps = np.diff(x)
    if steps.min() <= 0 or np.ptp(steps) > 1e-9 * abs(steps[0]):
        raise GridTooNarrow("X grid must be uniform and increasing")
    return x


def _adaptive_t_cut(lam: np.ndarray, w: np.ndarray, t_max: float, probe: int = 2048) -> float:
    """Clip the Fourier window where |chi| is smallest before truncation junk.

    The windowed sup of |chi| decreases while the computed characteristic
    function is faithful and grows once the finite spectrum ceases to resolve
    e^{it lambda}; the global minimum of that envelope marks the usable range.
    """
    t = np.linspace(0.0, t_max, probe)
    chi = np.abs(np.exp(1j * np.outer(t, lam)) @ w.astype(complex))
    win = max(2, probe // 16)
    sliding = np.lib.stride_tricks.sliding_window_view(chi, win)
    env = sliding.max(axis=1)
    cut = t[int(np.argmin(env)) + win - 1]
    return float(np.clip(cut, t_max / 8, t_max))


def grid_tomogram(
    rho: DensityMatrix,
    d: WHDirection,
    x_grid,
    fs: FockSpace | None = None,
    method: str = "fourier",
    t_nodes: int = DEFAULT_T_NODES,
    t_range: float | None = None,
    smearing: float | None = None,
    neg_floor: float = NEG_FLOOR,
    reality_tol: float = REALITY_TOL,
) -> GridTomogram:
    """Tomogram W(X) = (1/2pi) integral e^{-itX} chi(t) dt on the X grid.

    ``method="spectral"`` instead smears the spectral atoms with a Gaussian of
    width ``smearing`` (default 2*dx), exposing the discreteness the finite
    cutoff induces.
    """
    x = _uniform_grid(x_grid)
    _require_nonzero(d)
    tail = _check_tail(rho, d.modes)
    lam, w = _spectral_data(rho, d, fs)
    xs = x - d.s
    if method == "spectral":
        h = 2.0 * float(x[1] - x[0]) if smearing is None else float(smearing)
        kernels = np.exp(-((xs[:, None] - lam[None, :]) ** 2) / (2 * h * h))
        raw = kernels @ w / (h * np.sqrt(2 * np.pi))
        imag_residual = 0.0
    elif method == "fourier":
        t_hi = (DEFAULT_T_RANGE if t_range is None else t_range) / d.norm
        t_cut = _adaptive_t_cut(lam, w, t_hi) if t_range is None else t_hi
        t = np.linspace(-t_cut, t_cut, t_nodes)
        chi = np.exp(1j * np.outer(t, lam)) @ w.astype(complex)
        wt = np.full(t_nodes, t[1] - t[0])
        wt[0] *= 0.5
        wt[-1] *= 0.5
        values = (np.exp(-1j * np.outer(xs, t)) @ (chi * wt)) / (2 * np.pi)
        imag_residual = float(np.abs(values.imag).max())
        if imag_residual > reality_tol:
            raise NegativityBeyondTolerance(
                f"imaginary residue {imag_residual:.3e} exceeds {reality_tol:.1e}"
            )
        raw = values.real
    else:
        raise BadDirection(f"unknown tomogram method {method!r}")
    raw_min = float(raw.min())
    if raw_min < -neg_floor:
        raise NegativityBeyondTolerance(
            f"tomogram negativity {raw_min:.3e} beyond the floor {neg_floor:.1e}"
        )
    clamped = np.maximum(raw, 0.0)
    integral = float(np.trapezoid(clamped, x))
    if abs(integral - 1.0) > INTEGRAL_GUARD:
        raise GridTooNarrow(f"tomogram mass {integral:.6f} deviates from 1 by > {INTEGRAL_GUARD}")
    return GridTomogram(
        x=x,
        values=clamped,
        direction=d,
        raw_min=raw_min,
        imag_residual=imag_residual,
        tail=tail,
        integral=integral,
    )


def _hermite_e2(k: int, z: np.ndarray) -> np.ndarray:
    """Physicists' Hermite polynomial H_{2k} evaluated with the numpy basis."""
    coeff = np.zeros(2 * k + 1)
    coeff[2 * k] = 1.0
    return np.polynomial.hermite.hermval(z, coeff)


def analytic_oscillator_tomogram(mu, nu, x_grid) -> np.ndarray:
    """Closed-form tomogram of the all-ones excitation |1, ..., 1>.

    With s = |mu|^2 + |nu|^2 and a_k the elementary symmetric polynomials in
    the per-mode energies (mu_j^2 + nu_j^2)/2, the density is
    (1/sqrt(pi s)) * sum_k (a_k / s^k) H_{2k}(X/sqrt(s)) * exp(-X^2/s).
    """
    d = _require_nonzero(WHDirection(mu=mu, nu=nu))
    x = np.asarray(x_grid, dtype=float)
    s = d.norm**2
    energies = (d.mu**2 + d.nu**2) / 2.0
    # elementary symmetric polynomials via the product expansion
    esp = np.zeros(d.modes + 1)
    esp[0] = 1.0
    for e in energies:
        esp[1:] = esp[1:] + e * esp[:-1]
    z = x / np.sqrt(s)
    total = np.zeros_like(z)
    for k in range(d.modes + 1):
        total += esp[k] / s**k * _hermite_e2(k, z)
    return total * np.exp(-(z**2)) / np.sqrt(np.pi * s)


def hermite_functions(x, count: int) -> np.ndarray:
    """Orthonormal oscillator eigenfunctions psi_0..psi_{count-1} at points x."""
    x = np.asarray(x, dtype=float)
    out = np.empty((count,) + x.shape)
    out[0] = np.pi**-0.25 * np.exp(-(x**2) / 2)
    if count > 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for m in range(1, count - 1):
        out[m + 1] = np.sqrt(2.0 / (m + 1)) * x * out[m] - np.sqrt(m / (m + 1.0)) * out[m - 1]
    return np.moveaxis(out, 0, -1)


def wigner(
    rho: DensityMatrix,
    q_grid,
    p_grid,
    y_nodes: int = 1024,
    mass_guard: float = INTEGRAL_GUARD,
) -> np.ndarray:
    """w(q, p) = (1/2pi) integral <q - y/2| rho |q + y/2> e^{ipy} dy (hbar = 1)."""
    q = np.asarray(q_grid, dtype=float)
    p = np.asarray(p_grid, dtype=float)
    _check_tail(rho, modes=1)
    n = rho.dim
    support = np.sqrt(2.0 * n + 1.0) + 2.0
    half = 2.0 * (support + float(np.abs(q).max()))
    y = np.linspace(-half, half, y_nodes)
    left = hermite_functions(q[:, None] - y[None, :] / 2, n)
    right = hermite_functions(q[:, None] + y[None, :] / 2, n)
    inter = right.reshape(-1, n) @ rho.matrix.T
    corr = (left.reshape(-1, n) * inter).sum(axis=1).reshape(q.size, y_nodes)
    dy = y[1] - y[0]
    wy = np.full(y_nodes, dy)
    wy[0] *= 0.5
    wy[-1] *= 0.5
    grid = (corr * wy[None, :]) @ np.exp(1j * np.outer(y, p)) / (2 * np.pi)
    out = grid.real
    mass = float(np.trapezoid(np.trapezoid(out, p, axis=1), q))
    if abs(mass - 1.0) > mass_guard:
        raise GridTooNarrow(f"Wigner mass {mass:.6f} deviates from 1 by > {mass_guard}")
    return out


def wigner_radon_consistency(
    rho: DensityMatrix,
    thetas,
    x_grid,
    halfwidth: float = 5.0,
    grid_size: int = 256,
) -> float:
    """Sup distance between Radon(wigner(rho)) and the direct quadrature tomograms."""
    thetas = np.asarray(thetas, dtype=float)
    x = _uniform_grid(x_grid)
    axes = np.linspace(-halfwidth, halfwidth, grid_size)
    w = wigner(rho, axes, axes)
    img = radon_mod.ImageGrid.from_axes(axes, axes, w)
    sino = radon_mod.radon(img, thetas, x)
    worst = 0.0
    for i, theta in enumerate(thetas):
        d = WHDirection(mu=[np.cos(theta)], nu=[np.sin(theta)])
        tom = grid_tomogram(rho, d, x)
        worst = max(worst, float(np.abs(sino.values[i] - tom.values).max()))
    return worst


@dataclass(frozen=True)
class WHReconstruction:
    """Output of the phase-space synthesis plus pre-cleanup diagnostics."""

    matrix: np.ndarray
    raw_trace: complex
    min_eigenvalue: float
    psd_clipped: bool


def _displacement_corners(cs: np.ndarray, out_dim: int, internal_cutoff: int) -> np.ndarray:
    """Top-left out_dim x out_dim blocks of e^{i(mu Q + nu P)} on the (mu, nu) grid.

    Evaluating at a larger internal cutoff keeps the low-level matrix elements
    faithful even where the displacement pushes far above ``out_dim``.
    """
    fs = fock_operators(internal_cutoff)
    m = cs.size
    corners = np.empty((m, m, out_dim, out_dim), dtype=complex)
    for i, mu in enumerate(cs):
        for j, nu in enumerate(cs):
            u = unitary_exp(mu * fs.q + nu * fs.p, 1.0)
            corners[i, j] = u[:out_dim, :out_dim]
    return corners


def reconstruct_wh(
    source,
    box: float = 6.0,
    grid: int = 64,
    cutoff: int = 16,
    internal_cutoff: int | None = None,
    psd_clip: bool = False,
) -> WHReconstruction:
    """sigma = (1/2pi) integral chi(mu, nu) U(mu, nu)† dmu dnu over [-box, box]^2.

    ``source`` is either a DensityMatrix (the characteristic function is then
    synthesized from it) or an array of chi samples on the midpoint grid.
    The output is Hermitized and trace-renormalized; the raw trace and the
    minimum eigenvalue before any clipping are reported.
    """
    if box < 5.0 or grid < 32:
        raise QuadratureTooCoarse(f"box {box} and grid {grid} below the supported range")
    if cutoff < 2:
        raise BadCutoff(f"cutoff must be >= 2, got {cutoff}")
    h = 2.0 * box / grid
    cs = -box + h * (np.arange(grid) + 0.5)
    if internal_cutoff is None:
        internal_cutoff = max(4 * cutoff, cutoff + int(np.ceil(box * box)) + 8)

    if isinstance(source, DensityMatrix):
        occupied = np.flatnonzero(np.diag(source.matrix).real > 1e-12)
        top = int(occupied.max()) if occupied.size else 0
        if cutoff < 2 * top + 8:
            raise CutoffTooSmall(f"cutoff {cutoff} < 2*{top}+8 required by the occupied levels")
        n_in = source.dim
        big = max(internal_cutoff, n_in)
        corners = _displacement_corners(cs, max(cutoff, n_in), big)
        chi = np.einsum("ij,xyji->xy", source.matrix, corners[:, :, :n_in, :n_in])
        corners = corners[:, :, :cutoff, :cutoff]
    else:
        chi = np.asarray(source, dtype=complex)
        if chi.shape != (grid, grid):
            raise DimensionMismatch(f"chi samples must be shaped {(grid, grid)}, got {chi.shape}")
        corners = _displacement_corners(cs, cutoff, internal_cutoff)

    sigma = np.einsum("xy,xyji->ij", chi, corners.conj()) * (h * h / (2 * np.pi))
    raw_trace = complex(np.trace(sigma))
    sigma = (sigma + dagger(sigma)) / 2
    es = hermitian_eigendecompose(sigma, rtol=np.inf)
    min_eig = float(es.eigenvalues[0])
    if psd_clip:
        clipped = np.maximum(es.eigenvalues, 0.0)
        sigma = (es.basis * clipped) @ dagger(es.basis)
    tr = float(np.trace(sigma).real)
    if abs(tr) < 1e-12:
        raise QuadratureTooCoarse("reconstructed trace vanished; cannot renormalize")
    sigma = sigma / tr
    return WHReconstruction(
        matrix=sigma, raw_trace=raw_trace, min_eigenvalue=min_eig, psd_clipped=psd_clip
    )
