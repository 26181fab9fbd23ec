"""Classical Radon transform on 2D grids and filtered backprojection.

The forward transform integrates a bilinearly interpolated image along the
lines X = q cos(theta) + p sin(theta); the inverse applies a frequency-domain
ramp filter to each projection and backprojects over theta in [0, pi).
The sampling loops run in the compiled kernel when it is available.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import BoundaryMassWarning, EmptyGrid, FileFormatError, TooFewAngles

BOUNDARY_MASS_RTOL = 1e-6
MIN_QUANTITATIVE_ANGLES = 16


@dataclass(frozen=True)
class ImageGrid:
    """Real values on a uniform (q, p) grid; values[i, j] = f(q0 + i dq, p0 + j dp)."""

    q0: float
    p0: float
    dq: float
    dp: float
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.size == 0:
            raise EmptyGrid(f"expected a nonempty 2D value array, got shape {v.shape}")
        if self.dq <= 0 or self.dp <= 0 or not np.all(np.isfinite(v)):
            raise EmptyGrid("grid steps must be positive and values finite")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_axes(cls, q_axis, p_axis, values) -> "ImageGrid":
        q = np.asarray(q_axis, dtype=float)
        p = np.asarray(p_axis, dtype=float)
        return cls(q0=q[0], p0=p[0], dq=q[1] - q[0], dp=p[1] - p[0], values=values)

    @property
    def q_axis(self) -> np.ndarray:
        return self.q0 + self.dq * np.arange(self.values.shape[0])

    @property
    def p_axis(self) -> np.ndarray:
        return self.p0 + self.dp * np.arange(self.values.shape[1])

    def mass(self) -> float:
        return float(self.values.sum() * self.dq * self.dp)


@dataclass(frozen=True)
class Sinogram:
    """Projection values per (theta, X) with a uniform X grid."""

    thetas: np.ndarray
    x: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        th = np.asarray(self.thetas, dtype=float)
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if v.shape != (th.size, x.size):
            raise EmptyGrid(f"values shape {v.shape} does not match (thetas, x)")
        if not np.all(np.isfinite(v)):
            raise EmptyGrid("sinogram values must be finite")
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])


def _check_boundary_mass(img: ImageGrid) -> None:
    v = np.abs(img.values)
    total = v.sum()
    if total == 0:
        return
    edge = v[0, :].sum() + v[-1, :].sum() + v[:, 0].sum() + v[:, -1].sum()
    if edge > BOUNDARY_MASS_RTOL * total:
        warnings.warn(
            f"boundary carries {edge / total:.2e} of the image mass; "
            "projections will truncate it",
            BoundaryMassWarning,
            stacklevel=3,
        )


def radon(img: ImageGrid, thetas, x_grid) -> Sinogram:
    """Sinogram of line integrals, sampled at step min(dq, dp)/2 along each line."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    x = np.atleast_1d(np.asarray(x_grid, dtype=float))
    _check_boundary_mass(img)
    nq, npix = img.values.shape
    half_q = img.dq * (nq - 1) / 2
    half_p = img.dp * (npix - 1) / 2
    # cover every line's intersection with the grid's bounding circle
    t_half = float(
        np.hypot(half_q, half_p)
        + np.hypot(img.q0 + half_q, img.p0 + half_p)
        + max(img.dq, img.dp)
    )
    step = min(img.dq, img.dp) / 2
    values = _kernels.forward_project(
        np.ascontiguousarray(img.values),
        img.q0,
        img.p0,
        img.dq,
        img.dp,
        np.ascontiguousarray(np.cos(thetas)),
        np.ascontiguousarray(np.sin(thetas)),
        np.ascontiguousarray(x),
        step,
        t_half,
    )
    return Sinogram(thetas=thetas, x=x, values=values)


def ramp_filter_projections(sino: Sinogram) -> np.ndarray:
    """|k| filter applied per projection in the frequency domain, zero-padded."""
    nx = sino.x.size
    padded = 1 << int(np.ceil(np.log2(max(2 * nx, 16))))
    freqs = 2 * np.pi * np.fft.fftfreq(padded, d=sino.dx)
    spectra = np.fft.fft(sino.values, n=padded, axis=1) * np.abs(freqs)[None, :]
    return np.fft.ifft(spectra, axis=1).real[:, :nx]


def inverse_radon(sino: Sinogram, out_grid: ImageGrid | None = None, shape=None) -> ImageGrid:
    """Filtered backprojection onto ``out_grid`` (geometry only; values ignored)."""
    n_angles = sino.thetas.size
    if n_angles < MIN_QUANTITATIVE_ANGLES:
        warnings.warn(
            f"{n_angles} angles is below {MIN_QUANTITATIVE_ANGLES}; "
            "reconstruction is qualitative only",
            TooFewAngles,
            stacklevel=2,
        )
    if out_grid is None:
        n = int(shape[0]) if shape else sino.x.size
        m = int(shape[1]) if shape else sino.x.size
        q0 = float(sino.x[0])
        geometry = ImageGrid(
            q0=q0,
            p0=q0,
            dq=(sino.x[-1] - sino.x[0]) / (n - 1),
            dp=(sino.x[-1] - sino.x[0]) / (m - 1),
            values=np.zeros((n, m)),
        )
    else:
        geometry = out_grid
    filtered = ramp_filter_projections(sino)
    acc = _kernels.back_project(
        np.ascontiguousarray(filtered),
        float(sino.x[0]),
        sino.dx,
        np.ascontiguousarray(np.cos(sino.thetas)),
        np.ascontiguousarray(np.sin(sino.thetas)),
        np.ascontiguousarray(geometry.q_axis),
        np.ascontiguousarray(geometry.p_axis),
    )
    dtheta = np.pi / n_angles
    return ImageGrid(
        q0=geometry.q0,
        p0=geometry.p0,
        dq=geometry.dq,
        dp=geometry.dp,
        values=acc * dtheta / (2 * np.pi),
    )


# ---------------------------------------------------------------------------
# serialization


def image_to_csv(img: ImageGrid, path) -> None:
    path = Path(path)
    rows = "\n".join(",".join(f"{v:.17g}" for v in row) for row in img.values)
    path.write_text(rows + "\n")
    meta = {"q0": img.q0, "p0": img.p0, "dq": img.dq, "dp": img.dp,
            "nq": img.values.shape[0], "np": img.values.shape[1]}
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(meta) + "\n")


def image_from_csv(path) -> ImageGrid:
    path = Path(path)
    try:
        meta = json.loads(path.with_suffix(path.suffix + ".json").read_text())
        values = np.loadtxt(path, delimiter=",", ndmin=2)
        return ImageGrid(
            q0=float(meta["q0"]), p0=float(meta["p0"]),
            dq=float(meta["dq"]), dp=float(meta["dp"]), values=values,
        )
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"cannot read image grid from {path}: {exc}") from exc


def image_to_pgm(img: ImageGrid, path) -> None:
    """8-bit PGM for quick viewing, value range recorded in the sidecar."""
    path = Path(path)
    lo, hi = float(img.values.min()), float(img.values.max())
    scale = 255.0 / (hi - lo) if hi > lo else 0.0
    pixels = np.round((img.values - lo) * scale).astype(np.uint8)
    header = f"P5\n{pixels.shape[1]} {pixels.shape[0]}\n255\n".encode()
    path.write_bytes(header + pixels.tobytes())
    meta = {"q0": img.q0, "p0": img.p0, "dq": img.dq, "dp": img.dp,
            "nq": img.values.shape[0], "np": img.values.shape[1], "vmin": lo, "vmax": hi}
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(meta) + "\n")


def sinogram_to_csv(sino: Sinogram, path) -> None:
    """Header row of X values, one value row per theta; thetas in the sidecar."""
    path = Path(path)
    lines = [",".join(f"{v:.17g}" for v in sino.x)]
    lines += [",".join(f"{v:.17g}" for v in row) for row in sino.values]
    path.write_text("\n".join(lines) + "\n")
    meta = {"thetas": [float(t) for t in sino.thetas]}
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(meta) + "\n")


def sinogram_from_csv(path) -> Sinogram:
    path = Path(path)
    try:
        raw = np.loadtxt(path, delimiter=",", ndmin=2)
        meta = json.loads(path.with_suffix(path.suffix + ".json").read_text())
        thetas = np.asarray(meta["thetas"], dtype=float)
        return Sinogram(thetas=thetas, x=raw[0], values=raw[1:])
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"cannot read sinogram from {path}: {exc}") from exc
