# Compiled projection kernels; semantics mirror _py.py exactly.

import numpy as np

cimport numpy as cnp
from libc.math cimport floor

cnp.import_array()


def forward_project(
    double[:, ::1] values,
    double q0,
    double p0,
    double dq,
    double dp,
    double[::1] cos_t,
    double[::1] sin_t,
    double[::1] x,
    double step,
    double t_half,
):
    cdef Py_ssize_t nq = values.shape[0]
    cdef Py_ssize_t npix = values.shape[1]
    cdef Py_ssize_t na = cos_t.shape[0]
    cdef Py_ssize_t nx = x.shape[0]
    cdef Py_ssize_t nt = <Py_ssize_t>((2.0 * t_half) / step) + 1
    out_arr = np.empty((na, nx), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t k, m, n, i0, j0
    cdef double c, s, t, q, p, fq, fp, acc, v00, v01, v10, v11
    for k in range(na):
        c = cos_t[k]
        s = sin_t[k]
        for m in range(nx):
            acc = 0.0
            for n in range(nt):
                t = -t_half + step * n
                q = (x[m] * c - t * s - q0) / dq
                p = (x[m] * s + t * c - p0) / dp
                i0 = <Py_ssize_t>floor(q)
                j0 = <Py_ssize_t>floor(p)
                if i0 < -1 or i0 > nq - 1 or j0 < -1 or j0 > npix - 1:
                    continue
                fq = q - i0
                fp = p - j0
                v00 = values[i0, j0] if (i0 >= 0 and j0 >= 0) else 0.0
                v01 = values[i0, j0 + 1] if (i0 >= 0 and j0 + 1 < npix) else 0.0
                v10 = values[i0 + 1, j0] if (i0 + 1 < nq and j0 >= 0) else 0.0
                v11 = values[i0 + 1, j0 + 1] if (i0 + 1 < nq and j0 + 1 < npix) else 0.0
                acc += (
                    (1.0 - fq) * (1.0 - fp) * v00
                    + (1.0 - fq) * fp * v01
                    + fq * (1.0 - fp) * v10
                    + fq * fp * v11
                )
            out[k, m] = acc * step
    return out_arr


def back_project(
    double[:, ::1] filtered,
    double x0,
    double dx,
    double[::1] cos_t,
    double[::1] sin_t,
    double[::1] q_coords,
    double[::1] p_coords,
):
    cdef Py_ssize_t na = cos_t.shape[0]
    cdef Py_ssize_t nx = filtered.shape[1]
    cdef Py_ssize_t nq = q_coords.shape[0]
    cdef Py_ssize_t npix = p_coords.shape[0]
    out_arr = np.zeros((nq, npix), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t k, i, j, i0
    cdef double c, s, xs, f, acc
    for i in range(nq):
        for j in range(npix):
            acc = 0.0
            for k in range(na):
                xs = (q_coords[i] * cos_t[k] + p_coords[j] * sin_t[k] - x0) / dx
                i0 = <Py_ssize_t>floor(xs)
                f = xs - i0
                if 0 <= i0 < nx:
                    acc += filtered[k, i0] * (1.0 - f)
                if 0 <= i0 + 1 < nx:
                    acc += filtered[k, i0 + 1] * f
            out[i, j] = acc
    return out_arr
