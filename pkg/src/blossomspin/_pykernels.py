"""Pure-Python/numpy versions of the inner loops.

Same signatures and results as the compiled ``_ckernels`` module; used when the
extension is not built or when ``BLOSSOMSPIN_PURE_PYTHON`` is set.
"""

import numpy as np


def bernstein_row(d, t):
    out = np.zeros(d + 1)
    out[0] = 1.0
    s = 1.0 - t
    for j in range(1, d + 1):
        out[1 : j + 1] = s * out[1 : j + 1] + t * out[0:j]
        out[0] *= s
    return out


def de_casteljau(points, params):
    work = np.array(points, dtype=np.float64, copy=True)
    m = work.shape[0]
    if len(params) != m - 1:
        raise ValueError("need exactly one parameter per pyramid level")
    for level, t in enumerate(params):
        top = m - 1 - level
        work[:top] = (1.0 - t) * work[:top] + t * work[1 : top + 1]
    return work[0].copy()


def subdivide(points, t):
    work = np.array(points, dtype=np.float64, copy=True)
    m = work.shape[0]
    left = np.empty_like(work)
    right = np.empty_like(work)
    left[0] = work[0]
    right[m - 1] = work[m - 1]
    for level in range(1, m):
        top = m - level
        work[:top] = (1.0 - t) * work[:top] + t * work[1 : top + 1]
        left[level] = work[0]
        right[m - 1 - level] = work[m - 1 - level]
    return left, right


def fs_area_midpoint(d, n_theta, n_phi, weights):
    """Midpoint sum of the pulled-back area density over a (theta, phi) grid."""
    weights = np.asarray(weights, dtype=np.float64)
    h_theta = np.pi / n_theta
    h_phi = 2.0 * np.pi / n_phi
    theta = (np.arange(n_theta) + 0.5) * h_theta
    phi = (np.arange(n_phi) + 0.5) * h_phi
    s = np.sin(0.5 * theta)[:, None]
    c = np.cos(0.5 * theta)[:, None]
    u = s * np.exp(1j * phi)[None, :]
    ff = np.zeros(u.shape)
    gg = np.zeros(u.shape)
    fg = np.zeros(u.shape, dtype=complex)
    for m in range(d + 1):
        k = d - m
        fk = weights[k] * u**m * c**k
        gk = weights[k] * m * u ** (m - 1) * c**k if m > 0 else np.zeros_like(u)
        ff += np.abs(fk) ** 2
        gg += np.abs(gk) ** 2
        fg += np.conj(fk) * gk
    dens = s * (gg * ff - np.abs(fg) ** 2) / (c * ff * ff)
    return float(dens.sum() * h_theta * h_phi)


def precess_rotation(L0, T, dt, steps, every):
    L0 = np.asarray(L0, dtype=np.float64)
    T = np.asarray(T, dtype=np.float64)
    count = steps // every + 1
    omega = float(np.sqrt(T @ T))
    if omega == 0.0:
        return np.tile(L0, (count, 1))
    axis = T / omega
    par = (L0 @ axis) * axis
    e1 = L0 - par
    e2 = np.cross(axis, e1)
    phase = (np.arange(count) * every) * (omega * dt)
    return par + np.cos(phase)[:, None] * e1 + np.sin(phase)[:, None] * e2


def precess_rk4(L0, T, dt, steps, every):
    # plain floats: np.cross on 3-vectors costs more than the arithmetic
    x, y, z = (float(v) for v in L0)
    tx, ty, tz = (float(v) for v in T)
    out = np.empty((steps // every + 1, 3))
    out[0] = x, y, z
    row = 1
    h2, h6 = 0.5 * dt, dt / 6.0

    def cross(a, b, c):
        return ty * c - tz * b, tz * a - tx * c, tx * b - ty * a

    for step in range(1, steps + 1):
        a1, b1, c1 = cross(x, y, z)
        a2, b2, c2 = cross(x + h2 * a1, y + h2 * b1, z + h2 * c1)
        a3, b3, c3 = cross(x + h2 * a2, y + h2 * b2, z + h2 * c2)
        a4, b4, c4 = cross(x + dt * a3, y + dt * b3, z + dt * c3)
        x = x + h6 * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        y = y + h6 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
        z = z + h6 * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        if step % every == 0:
            out[row] = x, y, z
            row += 1
    return out
