# cython: language_level=3
"""Compiled inner loops. Signatures mirror ``blossomspin._pykernels``."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()


def bernstein_row(int d, double t):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(d + 1, dtype=np.float64)
    cdef double s = 1.0 - t
    cdef double saved, tmp
    cdef int j, i
    out[0] = 1.0
    for j in range(1, d + 1):
        saved = 0.0
        for i in range(j):
            tmp = out[i]
            out[i] = saved + s * tmp
            saved = t * tmp
        out[j] = saved
    return out


def de_casteljau(const double[:, ::1] points, const double[::1] params):
    cdef Py_ssize_t m = points.shape[0]
    cdef Py_ssize_t n = points.shape[1]
    cdef Py_ssize_t level, i, c
    cdef double t
    if params.shape[0] != m - 1:
        raise ValueError("need exactly one parameter per pyramid level")
    work_arr = np.array(points, dtype=np.float64, copy=True)
    cdef double[:, ::1] work = work_arr
    for level in range(m - 1):
        t = params[level]
        for i in range(m - 1 - level):
            for c in range(n):
                work[i, c] = (1.0 - t) * work[i, c] + t * work[i + 1, c]
    return np.array(work_arr[0], copy=True)


def subdivide(const double[:, ::1] points, double t):
    cdef Py_ssize_t m = points.shape[0]
    cdef Py_ssize_t n = points.shape[1]
    cdef Py_ssize_t level, i, c
    work_arr = np.array(points, dtype=np.float64, copy=True)
    left_arr = np.empty((m, n), dtype=np.float64)
    right_arr = np.empty((m, n), dtype=np.float64)
    cdef double[:, ::1] work = work_arr
    cdef double[:, ::1] left = left_arr
    cdef double[:, ::1] right = right_arr
    for c in range(n):
        left[0, c] = work[0, c]
        right[m - 1, c] = work[m - 1, c]
    for level in range(1, m):
        for i in range(m - level):
            for c in range(n):
                work[i, c] = (1.0 - t) * work[i, c] + t * work[i + 1, c]
        for c in range(n):
            left[level, c] = work[0, c]
            right[m - 1 - level, c] = work[m - 1 - level, c]
    return left_arr, right_arr


def fs_area_midpoint(int d, int n_theta, int n_phi, const double[::1] weights):
    """Midpoint sum of the pulled-back area density over a (theta, phi) grid."""
    cdef double h_theta = np.pi / n_theta
    cdef double h_phi = 2.0 * np.pi / n_phi
    cdef double total = 0.0
    cdef double theta, phi, s, c, ff, gg, row
    cdef double complex u, upow, uprev, fk, gk, fg
    cdef int a, b, k, m
    cdef double[::1] cpow = np.empty(d + 1, dtype=np.float64)
    for a in range(n_theta):
        theta = (a + 0.5) * h_theta
        s = sin(0.5 * theta)
        c = cos(0.5 * theta)
        cpow[0] = 1.0
        for k in range(1, d + 1):
            cpow[k] = cpow[k - 1] * c
        row = 0.0
        for b in range(n_phi):
            phi = (b + 0.5) * h_phi
            u = s * (cos(phi) + 1j * sin(phi))
            ff = 0.0
            gg = 0.0
            fg = 0.0
            # k indexes the coordinate; m = d - k is the power of u
            upow = 1.0
            uprev = 0.0
            for m in range(0, d + 1):
                k = d - m
                fk = weights[k] * upow * cpow[k]
                gk = weights[k] * m * uprev * cpow[k]
                ff += fk.real * fk.real + fk.imag * fk.imag
                gg += gk.real * gk.real + gk.imag * gk.imag
                fg += fk.conjugate() * gk
                uprev = upow
                upow = upow * u
            row += s * (gg * ff - (fg.real * fg.real + fg.imag * fg.imag)) / (c * ff * ff)
        total += row
    return total * h_theta * h_phi


def precess_rotation(const double[::1] L0, const double[::1] T, double dt, long steps, long every):
    cdef long count = steps // every + 1
    out_arr = np.empty((count, 3), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double omega = sqrt(T[0] * T[0] + T[1] * T[1] + T[2] * T[2])
    cdef double nx, ny, nz, proj, px, py, pz, e1x, e1y, e1z, e2x, e2y, e2z
    cdef double delta, phase, cp, sp
    cdef long step, row = 0
    if omega == 0.0:
        for step in range(count):
            out[step, 0] = L0[0]
            out[step, 1] = L0[1]
            out[step, 2] = L0[2]
        return out_arr
    nx = T[0] / omega
    ny = T[1] / omega
    nz = T[2] / omega
    proj = L0[0] * nx + L0[1] * ny + L0[2] * nz
    px = proj * nx
    py = proj * ny
    pz = proj * nz
    e1x = L0[0] - px
    e1y = L0[1] - py
    e1z = L0[2] - pz
    e2x = ny * e1z - nz * e1y
    e2y = nz * e1x - nx * e1z
    e2z = nx * e1y - ny * e1x
    delta = omega * dt
    for step in range(steps + 1):
        if step % every == 0:
            phase = step * delta
            cp = cos(phase)
            sp = sin(phase)
            out[row, 0] = px + cp * e1x + sp * e2x
            out[row, 1] = py + cp * e1y + sp * e2y
            out[row, 2] = pz + cp * e1z + sp * e2z
            row += 1
    return out_arr


cdef inline void _cross(double tx, double ty, double tz, double* v, double* out) noexcept nogil:
    out[0] = ty * v[2] - tz * v[1]
    out[1] = tz * v[0] - tx * v[2]
    out[2] = tx * v[1] - ty * v[0]


def precess_rk4(const double[::1] L0, const double[::1] T, double dt, long steps, long every):
    cdef long count = steps // every + 1
    out_arr = np.empty((count, 3), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double L[3]
    cdef double tmp[3]
    cdef double k1[3]
    cdef double k2[3]
    cdef double k3[3]
    cdef double k4[3]
    cdef double tx = T[0], ty = T[1], tz = T[2]
    cdef long step, row = 1
    cdef int c
    for c in range(3):
        L[c] = L0[c]
        out[0, c] = L0[c]
    for step in range(1, steps + 1):
        _cross(tx, ty, tz, L, k1)
        for c in range(3):
            tmp[c] = L[c] + 0.5 * dt * k1[c]
        _cross(tx, ty, tz, tmp, k2)
        for c in range(3):
            tmp[c] = L[c] + 0.5 * dt * k2[c]
        _cross(tx, ty, tz, tmp, k3)
        for c in range(3):
            tmp[c] = L[c] + dt * k3[c]
        _cross(tx, ty, tz, tmp, k4)
        for c in range(3):
            L[c] = L[c] + dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c])
        if step % every == 0:
            for c in range(3):
                out[row, c] = L[c]
            row += 1
    return out_arr
