"""NumPy implementations of the projection kernels.

Semantics must match qradon._kernels._cy exactly; the test suite compares the
two backends element by element when the extension is available.
"""

import numpy as np


def forward_project(values, q0, p0, dq, dp, cos_t, sin_t, x, step, t_half):
    """Line integrals of a bilinear image along X = q cos(theta) + p sin(theta).

    For each angle and offset the line is sampled at spacing ``step`` over
    t in [-t_half, t_half]; samples outside the grid contribute zero.
    """
    nq, npix = values.shape
    nt = int(np.floor(2.0 * t_half / step)) + 1
    t = -t_half + step * np.arange(nt)
    out = np.empty((cos_t.size, x.size))
    for k in range(cos_t.size):
        c, s = cos_t[k], sin_t[k]
        qs = (x[:, None] * c - t[None, :] * s - q0) / dq
        ps = (x[:, None] * s + t[None, :] * c - p0) / dp
        i0 = np.floor(qs).astype(np.intp)
        j0 = np.floor(ps).astype(np.intp)
        fq = qs - i0
        fp = ps - j0
        acc = np.zeros(qs.shape)
        for di, dj in ((0, 0), (0, 1), (1, 0), (1, 1)):
            ii = i0 + di
            jj = j0 + dj
            ok = (ii >= 0) & (ii < nq) & (jj >= 0) & (jj < npix)
            wgt = (fq if di else 1.0 - fq) * (fp if dj else 1.0 - fp)
            acc[ok] += wgt[ok] * values[ii[ok], jj[ok]]
        out[k] = acc.sum(axis=1) * step
    return out


def back_project(filtered, x0, dx, cos_t, sin_t, q_coords, p_coords):
    """Sum filtered projections over angles at X = q cos(theta) + p sin(theta).

    Linear interpolation in X; offsets outside the sinogram support give zero.
    """
    nx = filtered.shape[1]
    out = np.zeros((q_coords.size, p_coords.size))
    qg = q_coords[:, None]
    pg = p_coords[None, :]
    for k in range(cos_t.size):
        xs = (qg * cos_t[k] + pg * sin_t[k] - x0) / dx
        i0 = np.floor(xs).astype(np.intp)
        f = xs - i0
        ok0 = (i0 >= 0) & (i0 < nx)
        ok1 = (i0 + 1 >= 0) & (i0 + 1 < nx)
        row = filtered[k]
        out += np.where(ok0, row[np.clip(i0, 0, nx - 1)] * (1.0 - f), 0.0)
        out += np.where(ok1, row[np.clip(i0 + 1, 0, nx - 1)] * f, 0.0)
    return out
